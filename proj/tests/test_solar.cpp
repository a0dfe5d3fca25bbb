#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "solarsite/error.hpp"
#include "solarsite/solar.hpp"

using namespace solarsite;
using doctest::Approx;

TEST_CASE("declination and sun position")
{
    CHECK(declination_deg(172) == Approx(23.45).epsilon(0.01 / 23.45));
    CHECK(declination_deg(172) == Approx(oracle::cooper_declination(172)).epsilon(1e-12));
    for (int n = 1; n <= 365; ++n) {
        CHECK(std::abs(declination_deg(n)) <= 23.45);
    }
    CHECK(solar_position(0.0, 81, 12.0).zenith_deg <= 0.5);

    const auto sp = solar_position(40.0, 355, 10.0);
    const double elevation = 90.0 - sp.zenith_deg;
    CHECK(std::abs(elevation - 20.7) <= 0.3);
    CHECK(elevation == Approx(oracle::elevation_deg(40.0, oracle::cooper_declination(355), -30.0)).epsilon(1e-9));
    CHECK(sp.azimuth_deg > 90.0);
    CHECK(sp.azimuth_deg < 180.0);

    CHECK(day_of_year(0) == 1);
    CHECK(day_of_year(8759) == 365);
    CHECK(solar_hour(37) == 13.0);
    CHECK_THROWS_AS(solar_position(40.0, std::size_t{8760}), DomainError);
}

TEST_CASE("tracker geometry")
{
    auto t = tracker_rotation({0.0, 180.0});
    CHECK(t.rotation_deg == Approx(0.0));
    CHECK(t.cos_aoi == Approx(1.0));

    t = tracker_rotation({30.0, 180.0});
    CHECK(std::abs(t.rotation_deg) < 1e-9);
    CHECK(t.cos_aoi == Approx(std::cos(oracle::rad(30.0))).epsilon(1e-12));

    t = tracker_rotation({89.999, 90.0}, 90.0);
    CHECK(t.rotation_deg == Approx(89.999).epsilon(1e-9));
    CHECK(t.cos_aoi == Approx(1.0).epsilon(1e-12));

    t = tracker_rotation({80.0, 90.0}, 60.0);
    CHECK(t.rotation_deg == Approx(60.0));
    CHECK(t.cos_aoi == Approx(std::cos(oracle::rad(20.0))).epsilon(1e-12));

    t = tracker_rotation({80.0, 270.0}, 60.0);
    CHECK(t.rotation_deg == Approx(-60.0));

    t = tracker_rotation({95.0, 90.0});
    CHECK(t.cos_aoi == 0.0);
}

TEST_CASE("tracker never does worse than a horizontal plane")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> z(0.0, 89.99);
    std::uniform_real_distribution<double> a(0.0, 360.0);
    for (int i = 0; i < 20000; ++i) {
        const SolarPosition sp{z(rng), a(rng)};
        const auto t = tracker_rotation(sp, 90.0);
        CHECK(t.cos_aoi >= std::cos(oracle::rad(sp.zenith_deg)));
        CHECK(t.cos_aoi <= 1.0);
    }
}

TEST_CASE("plane-of-array irradiance")
{
    CHECK(poa_irradiance(0, 0, 0, 0.5, 30, 0.2) == 0.0);
    const double cz = std::cos(oracle::rad(40.0));
    CHECK(poa_irradiance(600, 700, 100, cz, 0.0, 0.5) == Approx(700 * cz + 100).epsilon(1e-12));

    // isotropic sky by hand: 800*0.866 + 100*(1+cos30)/2 + 700*0.2*(1-cos30)/2
    const double ct = std::cos(oracle::rad(30.0));
    const double expected = 800 * 0.866 + 100 * (1 + ct) / 2 + 700 * 0.2 * (1 - ct) / 2;
    CHECK(poa_irradiance(700, 800, 100, 0.866, 30.0, 0.2) == Approx(expected).epsilon(1e-12));
    CHECK(expected == Approx(795.48).epsilon(1e-4));

    // nondecreasing in each irradiance component
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1000.0);
    std::uniform_real_distribution<double> cosd(-0.2, 1.0);
    std::uniform_real_distribution<double> tilt(0.0, 90.0);
    for (int i = 0; i < 5000; ++i) {
        const double g = u(rng), b = u(rng), d = u(rng), c = cosd(rng), t = tilt(rng), dx = u(rng);
        const double base = poa_irradiance(g, b, d, c, t, 0.2);
        CHECK(poa_irradiance(g + dx, b, d, c, t, 0.2) >= base);
        CHECK(poa_irradiance(g, b + dx, d, c, t, 0.2) >= base);
        CHECK(poa_irradiance(g, b, d + dx, c, t, 0.2) >= base);
    }
}

TEST_CASE("cell temperature and hourly output")
{
    CHECK(cell_temperature(0, 17.5) == 17.5);
    CHECK(cell_temperature(800, 20) == Approx(45.0).epsilon(1e-12));
    CHECK(cell_temperature(400, 0) == Approx(12.5).epsilon(1e-12));

    CHECK(hourly_cf(1000, 25, -0.0037, 0.0) == 1.0);
    CHECK(hourly_cf(0, 40, -0.0037, 0.14) == 0.0);
    CHECK(hourly_cf(800, 45, -0.0037, 0.14) == Approx(0.8 * (1 - 0.074) * 0.86).epsilon(1e-12));
    CHECK(hourly_cf(800, 45, -0.0037, 0.14) == Approx(0.6371).epsilon(1e-4));
    CHECK(hourly_cf(1400, -20, -0.0037, 0.0) == 1.0);
}

TEST_CASE("utility simulation against the reference hour loop")
{
    SolarConfig cfg;
    const auto dark = [] {
        auto m = oracle::clear_sky(35.0);
        std::fill(m.ghi.begin(), m.ghi.end(), 0.0);
        std::fill(m.dni.begin(), m.dni.end(), 0.0);
        std::fill(m.dhi.begin(), m.dhi.end(), 0.0);
        return m;
    }();
    CHECK(simulate_utility_cf(dark, 35.0, cfg).annual_mean == 0.0);

    for (const double lat : {25.0, 35.0, 47.0}) {
        const auto m = oracle::clear_sky(lat);
        for (const double limit : {45.0, 60.0, 90.0}) {
            cfg.rotation_limit_deg = limit;
            const auto got = simulate_utility_cf(m, lat, cfg);
            const auto want = oracle::utility_hourly_cf(m, lat, cfg);
            for (std::size_t h = 0; h < hours_per_year; ++h) {
                REQUIRE(got.hourly[h] == Approx(want[h]).epsilon(1e-9).scale(1e-9));
            }
            CHECK(got.annual_mean == Approx(oracle::mean(want)).epsilon(1e-9));
        }
    }
    cfg.rotation_limit_deg = 60.0;
    const auto m35 = oracle::clear_sky(35.0);
    const double tracked = simulate_utility_cf(m35, 35.0, cfg).annual_mean;
    CHECK(tracked >= 0.15);
    CHECK(tracked <= 0.40);
    CHECK(tracked >= simulate_fixed_cf(m35, 35.0, {0.0, 180.0}, cfg).annual_mean);
}

TEST_CASE("year-long invariants")
{
    const SolarConfig cfg;
    for (const double lat : {24.5, 33.0, 41.0, 49.5}) {
        const auto m = oracle::clear_sky(lat, "c", 1.0, -5.0);
        const auto s = simulate_utility_cf(m, lat, cfg);
        for (std::size_t h = 0; h < hours_per_year; ++h) {
            const auto sp = solar_position(lat, h);
            if (sp.zenith_deg >= 90.0) {
                REQUIRE(s.hourly[h] == 0.0);
            } else {
                REQUIRE(tracker_rotation(sp, 90.0).cos_aoi >= std::cos(oracle::rad(sp.zenith_deg)) - 1e-12);
            }
            REQUIRE(s.hourly[h] >= 0.0);
            REQUIRE(s.hourly[h] <= 1.0);
        }
    }
}

TEST_CASE("rooftop orientation weighting")
{
    const SolarConfig cfg;
    const auto m = oracle::clear_sky(40.0);
    const Orientation south{30.0, 180.0};
    const Orientation north{30.0, 0.0};
    const Orientation east{20.0, 90.0};
    const double cf_s = simulate_fixed_cf(m, 40.0, south, cfg).annual_mean;
    const double cf_n = simulate_fixed_cf(m, 40.0, north, cfg).annual_mean;
    const double cf_e = simulate_fixed_cf(m, 40.0, east, cfg).annual_mean;
    CHECK(cf_s >= cf_n);

    OrientationDistribution one{{{south, 1.0, false}}};
    CHECK(simulate_roof_cf(m, 40.0, one, cfg) == Approx(cf_s).epsilon(1e-12));

    OrientationDistribution half{{{south, 0.5, false}, {east, 0.5, false}}};
    CHECK(simulate_roof_cf(m, 40.0, half, cfg) == Approx((cf_s + cf_e) / 2).epsilon(1e-12));

    // flat roofs are racked at latitude facing south
    OrientationDistribution flat{{{{0.0, 180.0}, 1.0, true}}};
    CHECK(simulate_roof_cf(m, 40.0, flat, cfg) ==
          Approx(simulate_fixed_cf(m, 40.0, {40.0, 180.0}, cfg).annual_mean).epsilon(1e-12));

    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> w(0.01, 1.0);
    for (int i = 0; i < 20; ++i) {
        const double a = w(rng), b = w(rng), c = w(rng);
        const double s = a + b + c;
        OrientationDistribution d{{{south, a / s, false}, {north, b / s, false}, {east, 1.0 - a / s - b / s, false}}};
        const double cf = simulate_roof_cf(m, 40.0, d, cfg);
        CHECK(cf >= std::min({cf_s, cf_n, cf_e}));
        CHECK(cf <= std::max({cf_s, cf_n, cf_e}));
    }

    OrientationDistribution bad{{{south, 0.6, false}, {east, 0.5, false}}};
    CHECK_THROWS_AS(simulate_roof_cf(m, 40.0, bad, cfg), DomainError);
    CHECK_THROWS_AS(validate(OrientationDistribution{}), DomainError);
}

TEST_CASE("orientation table reader")
{
    std::istringstream in("size_class,tilt_deg,azimuth_deg,weight\n"
                          "small,0,180,0.25\nsmall,30,180,0.75\nlarge,0,180,1\n");
    const auto t = read_orientations(in, "orientations.csv");
    REQUIRE(t.size() == 2);
    CHECK(t.at(RoofSizeClass::small).flat_share() == 0.25);
    CHECK(t.at(RoofSizeClass::large).flat_share() == 1.0);

    std::istringstream bad("size_class,tilt_deg,azimuth_deg,weight\nsmall,30,180,0.5\n");
    CHECK_THROWS(read_orientations(bad, "orientations.csv"));
}

TEST_CASE("county mean")
{
    const double one[] = {0.25};
    CHECK(county_mean_cf(one) == 0.25);
    const double two[] = {0.2, 0.3};
    CHECK(county_mean_cf(two) == Approx(0.25).epsilon(1e-15));
    CHECK_THROWS_AS(county_mean_cf({}), DomainError);

    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        std::vector<double> v(1 + i % 9);
        for (auto& x : v) {
            x = u(rng);
        }
        const double got = county_mean_cf(v);
        CHECK(got == Approx(oracle::mean(v)).epsilon(1e-12));
        CHECK(got >= *std::min_element(v.begin(), v.end()));
        CHECK(got <= *std::max_element(v.begin(), v.end()));
    }
}

TEST_CASE("configuration bounds")
{
    SolarConfig c;
    CHECK_NOTHROW(validate(c));
    c.system_loss = 1.0;
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = {};
    c.rotation_limit_deg = 0.0;
    CHECK_THROWS_AS(validate(c), ConfigError);
}
