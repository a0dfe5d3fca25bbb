#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "solarsite/capacity.hpp"
#include "solarsite/cost.hpp"
#include "solarsite/error.hpp"

using namespace solarsite;
using doctest::Approx;

namespace {

CostParams fixture_costs()
{
    CostParams c;
    c.capex_usd_per_kw = {1000.0, 1700.0, 2100.0};
    c.fom_usd_per_kw_yr = {20.0, 25.0, 30.0};
    c.bin_multipliers = {1.15, 1.08, 1.03, 1.00};
    c.national_avg_lcot_usd_per_mwh = 5.0;
    return c;
}

Parcel parcel(Category cat, double tx = 1.0)
{
    Parcel p;
    p.id = "S1";
    p.county_fips = "17019";
    p.region = Region::miso;
    p.category = cat;
    p.tx_multiplier = tx;
    p.latitude = 40.0;
    p.meteo_cell = "c";
    return p;
}

} // namespace

TEST_CASE("capital recovery factor")
{
    CHECK(crf(0.0, 30) == Approx(1.0 / 30.0).epsilon(1e-15));
    CHECK(std::abs(crf(0.05, 30) - 0.065051) <= 1e-6);
    CHECK(crf(0.05, 30) == Approx(oracle::amortization_payment(0.05, 30)).epsilon(1e-12));
    CHECK(crf(0.05, 1) == Approx(1.05).epsilon(1e-15));
    CHECK(crf(1e-9, 30) == Approx(1.0 / 30.0).epsilon(1e-6));
    CHECK_THROWS_AS(crf(-0.01, 30), DomainError);
    CHECK_THROWS_AS(crf(0.05, 0), DomainError);

    double prev = crf(0.0, 25);
    for (double r = 0.001; r < 0.3; r += 0.001) {
        const double v = crf(r, 25);
        CHECK(v > prev);
        CHECK(v >= std::max(r, 1.0 / 25.0));
        CHECK(v == Approx(oracle::amortization_payment(r, 25)).epsilon(1e-10));
        prev = v;
    }
}

TEST_CASE("adjusted capex")
{
    const auto c = fixture_costs();
    CHECK(adjusted_capex(1000, Category::prime_agriculture, 3, c) == 1000.0);
    CHECK(adjusted_capex(1000, Category::brownfield, 3, c) == Approx(1300.0).epsilon(1e-15));
    CHECK(adjusted_capex(1000, Category::superfund, 0, c) == Approx(1495.0).epsilon(1e-15));
    CHECK(adjusted_capex(2100, Category::roof_small, std::nullopt, c) == 2100.0);

    auto missing = c;
    missing.bin_multipliers[2].reset();
    CHECK_THROWS_AS(adjusted_capex(1000, Category::forest, 2, missing), ConfigError);
    CHECK_THROWS_AS(adjusted_capex(1000, Category::forest, std::nullopt, c), DomainError);
}

TEST_CASE("transmission adder")
{
    const auto c = fixture_costs();
    CHECK(transmission_adder(1.0, c, Category::forest) == 5.0);
    CHECK(transmission_adder(3.7, c, Category::roof_large) == 0.0);
    CHECK(transmission_adder(2.3, c, Category::landfill) == Approx(11.5).epsilon(1e-15));
    CHECK_THROWS_AS(transmission_adder(0.0, c, Category::forest), DomainError);
}

TEST_CASE("levelized cost")
{
    const double exact = (1300.0 * 0.065051 + 20.0) / (0.24 * 8.76);
    CHECK(lcoe(1300, 0.065051, 20, 0.24, 0) == Approx(exact).epsilon(1e-12));
    CHECK(std::abs(lcoe(1300, 0.065051, 20, 0.24, 0) - 49.74) < 0.005);
    CHECK(std::abs(lcoe(1000, 0.065051, 15, 0.28, 0) - 32.64) < 0.005);
    CHECK(lcoe(1000, 0.065051, 15, 0.28, 3.5) == Approx(lcoe(1000, 0.065051, 15, 0.28, 0) + 3.5));
    CHECK_THROWS_AS(lcoe(1000, 0.065051, 15, 0.0, 0), ZeroGenerationError);

    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> capex(300, 3000), fom(1, 50), cf(0.05, 0.4), adder(0, 20), kk(0.1, 5);
    for (int i = 0; i < 2000; ++i) {
        const double a = capex(rng), f = fom(rng), x = cf(rng), d = adder(rng), k = kk(rng);
        const double base = lcoe(a, 0.07, f, x, d);
        CHECK(lcoe(a, 0.07, f, x * 1.01, d) < base);
        CHECK(lcoe(a * 1.01, 0.07, f, x, d) > base);
        CHECK(lcoe(a, 0.07, f * 1.01, x, d) > base);
        CHECK(lcoe(a, 0.07, f, x, d + 0.01) > base);
        CHECK(lcoe(k * a, 0.07, k * f, x, d) - d == Approx(k * (base - d)).epsilon(1e-12));
    }
}

TEST_CASE("site pricing")
{
    const auto c = fixture_costs();
    const double r = crf(c.finance);
    const auto green = site_lcoe(parcel(Category::prime_agriculture), 12.0, 0.26, c);
    CHECK(green.adjusted_capex_usd_per_kw == Approx(1150.0));
    CHECK(green.lcoe_usd_per_mwh == Approx(lcoe(1150.0, r, 20.0, 0.26, 5.0)).epsilon(1e-14));
    CHECK(green.capacity_mw == 12.0);

    const auto brown = site_lcoe(parcel(Category::brownfield), 12.0, 0.26, c);
    CHECK(brown.lcoe_usd_per_mwh > green.lcoe_usd_per_mwh);
    CHECK(brown.adjusted_capex_usd_per_kw * r / (green.adjusted_capex_usd_per_kw * r) == Approx(1.30).epsilon(1e-15));

    const auto roof = site_lcoe(parcel(Category::roof_small, 2.5), 0.4, 0.15, c);
    CHECK(roof.adjusted_capex_usd_per_kw == 2100.0);
    CHECK(roof.lcoe_usd_per_mwh == Approx(lcoe(2100.0, r, 30.0, 0.15, 0.0)).epsilon(1e-14));
    CHECK(site_lcoe(parcel(Category::roof_medium), 0.4, 0.15, c).adjusted_capex_usd_per_kw == 1700.0);

    CHECK_THROWS_AS(site_lcoe(parcel(Category::forest), 0.5, 0.2, c), DomainError);
    CHECK_THROWS_AS(site_lcoe(parcel(Category::forest), 800.0, 0.2, c), DomainError);
    CHECK_THROWS_AS(site_lcoe(parcel(Category::forest), 10.0, 0.0, c), ZeroGenerationError);

    // contaminated never cheaper than greenfield for the same inputs
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> mw(1.0, 700.0), cf(0.1, 0.3), tx(1.0, 3.0);
    for (int i = 0; i < 500; ++i) {
        const double m = mw(rng), x = cf(rng), t = tx(rng);
        CHECK(site_lcoe(parcel(Category::rcra, t), m, x, c).lcoe_usd_per_mwh >=
              site_lcoe(parcel(Category::forest, t), m, x, c).lcoe_usd_per_mwh);
    }
}

TEST_CASE("bulk pricing equals per-site pricing")
{
    const auto c = fixture_costs();
    std::vector<Parcel> parcels;
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> mw(1.0, 700.0), cf(0.1, 0.3), tx(1.0, 3.0);
    for (std::size_t i = 0; i < 301; ++i) {
        auto p = parcel(all_categories[i % category_count], tx(rng));
        p.id = "S" + std::to_string(i);
        parcels.push_back(p);
    }
    std::vector<SiteRequest> req;
    for (const auto& p : parcels) {
        req.push_back({&p, p.id + "#1", mw(rng), cf(rng)});
    }
    const auto bulk = price_sites(req, c);
    REQUIRE(bulk.size() == req.size());
    for (std::size_t i = 0; i < req.size(); ++i) {
        auto one = site_lcoe(*req[i].parcel, req[i].capacity_mw, req[i].annual_cf, c);
        one.parcel_id = req[i].point_id;
        CHECK(bulk[i] == one);
    }
}

TEST_CASE("cost parameter validation")
{
    auto c = fixture_costs();
    CHECK_NOTHROW(validate(c));
    c.brownfield_premium = 0.9;
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = fixture_costs();
    c.finance.lifetime_years = 0;
    CHECK_THROWS_AS(validate(c), ConfigError);
    CHECK(technology_for(Category::roof_small) == Technology::residential_roof);
    CHECK(technology_for(Category::roof_large) == Technology::commercial_roof);
    CHECK(technology_for(Category::abandoned_mine) == Technology::utility);
}
