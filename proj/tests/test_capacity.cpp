#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "solarsite/capacity.hpp"
#include "solarsite/error.hpp"

using namespace solarsite;
using doctest::Approx;

TEST_CASE("land capacity")
{
    const DensityTable d;
    CHECK(land_capacity(0.0, Category::forest, d) == 0.0);
    CHECK(land_capacity(1e6, Category::prime_agriculture, d) == Approx(45.0).epsilon(1e-12));
    CHECK_THROWS_AS(land_capacity(1e6, Category::roof_small, d), DomainError);

    const auto chunks = split_capacity(land_capacity(20e6, Category::barren_marginal, d));
    REQUIRE(chunks.size() == 2);
    CHECK(chunks[0] == 700.0);
    CHECK(chunks[1] == Approx(200.0).epsilon(1e-12));

    DensityTable custom;
    custom.mw_per_km2[Category::forest] = 40.0;
    CHECK(land_capacity(1e6, Category::forest, custom) == Approx(40.0));
    CHECK(land_capacity(1e6, Category::landfill, custom) == Approx(45.0));

    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> area(0.0, 5e8);
    for (int i = 0; i < 1000; ++i) {
        const double a1 = area(rng), a2 = area(rng);
        CHECK(land_capacity(a1 + a2, Category::shrubland, d) ==
              Approx(land_capacity(a1, Category::shrubland, d) + land_capacity(a2, Category::shrubland, d))
                  .epsilon(1e-9));
    }
}

TEST_CASE("splitting preserves capacity exactly")
{
    CHECK(split_capacity(0.0).empty());
    CHECK(split_capacity(700.0) == std::vector<double>{700.0});
    CHECK(split_capacity(1400.0) == std::vector<double>{700.0, 700.0});
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> mw(0.0, 50000.0);
    for (int i = 0; i < 2000; ++i) {
        const double total = mw(rng);
        const auto chunks = split_capacity(total);
        double sum = 0.0;
        for (const double c : chunks) {
            CHECK(c > 0.0);
            CHECK(c <= max_project_mw);
            sum += c;
        }
        CHECK(sum == total);
    }
}

TEST_CASE("flat-roof packing")
{
    CHECK(flat_roof_packing(40.0, 0.0) == 1.0);
    CHECK(winter_design_elevation_deg(40.0) == Approx(20.66).epsilon(0.01 / 20.66));

    const double alpha = oracle::elevation_deg(40.0, -23.45, -30.0);
    const double c = std::cos(oracle::rad(30.0)), s = std::sin(oracle::rad(30.0));
    const double hand = c / (c + s / std::tan(oracle::rad(alpha)));
    CHECK(flat_roof_packing(40.0, 30.0) == Approx(hand).epsilon(1e-12));
    CHECK(std::abs(flat_roof_packing(40.0, 30.0) - 0.395) <= 0.005);
    CHECK(packing_from_elevation(30.0, 20.0) == Approx(0.3867).epsilon(5e-5 / 0.3867));

    double prev = 1.0;
    for (double tilt = 1.0; tilt < 90.0; tilt += 1.0) {
        const double p = flat_roof_packing(35.0, tilt);
        CHECK(p < prev);
        prev = p;
    }
    prev = 0.0;
    for (double elev = 5.0; elev < 90.0; elev += 1.0) {
        const double p = packing_from_elevation(25.0, elev);
        CHECK(p > prev);
        prev = p;
    }
    CHECK_THROWS_AS(flat_roof_packing(23.0, 20.0), DomainError);
    CHECK_THROWS_AS(flat_roof_packing(51.0, 20.0), DomainError);
    CHECK_THROWS_AS(flat_roof_packing(40.0, 90.0), DomainError);
}

TEST_CASE("roof panel area and capacity")
{
    CHECK(roof_panel_area(1000.0, RoofForm::pitched, 0.8, 40.0) == Approx(400.0).epsilon(1e-12));
    CHECK(roof_panel_area(0.0, RoofForm::pitched, 0.8, 40.0) == 0.0);
    CHECK(roof_panel_area(0.0, RoofForm::flat, 0.8, 40.0) == 0.0);
    CHECK(roof_panel_area(1000.0, RoofForm::flat, 1.0, 40.0) == Approx(1000.0 * flat_roof_packing(40.0, 40.0)));

    CHECK(roof_capacity(1.0, 0.15) == Approx(0.00015).epsilon(1e-12));
    CHECK(roof_capacity(0.0, 0.15) == 0.0);
    CHECK(roof_capacity(10000.0, 0.15) == Approx(1.5).epsilon(1e-12));

    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> area(0.0, 1e7);
    for (int i = 0; i < 1000; ++i) {
        const double a1 = area(rng), a2 = area(rng);
        CHECK(roof_capacity(a1 + a2, 0.15) ==
              Approx(roof_capacity(a1, 0.15) + roof_capacity(a2, 0.15)).epsilon(1e-9));
    }
}

TEST_CASE("suitability lookup with fallbacks")
{
    std::istringstream in("locale,census_division,size_class,fraction\n"
                          "*,*,small,0.3\n*,new_england,small,0.25\nurban,new_england,small,0.2\n");
    const auto t = read_suitability(in, "suitability.csv");
    CHECK(t.fraction("urban", "new_england", RoofSizeClass::small) == 0.2);
    CHECK(t.fraction("rural", "new_england", RoofSizeClass::small) == 0.25);
    CHECK(t.fraction("rural", "mountain", RoofSizeClass::small) == 0.3);
    CHECK_THROWS_AS(t.fraction("*", "*", RoofSizeClass::large), ConfigError);

    CHECK(roof_panel_area(1000.0, RoofSizeClass::small, RoofForm::pitched, "urban", "new_england", t, 42.0) ==
          Approx(100.0));

    CHECK(census_division_for_state("25") == "new_england");
    CHECK(census_division_for_state("13") == "south_atlantic");
    CHECK(census_division_for_state("17") == "east_north_central");
    CHECK(!census_division_for_state("99"));
}

TEST_CASE("density reader")
{
    std::istringstream in("category,mw_per_km2\ndefault,50\nforest,40\n");
    const auto d = read_density(in, "density.csv");
    CHECK(d.density(Category::forest) == 40.0);
    CHECK(d.density(Category::landfill) == 50.0);
    std::istringstream bad("category,mw_per_km2\nroof_small,40\n");
    CHECK_THROWS(read_density(bad, "density.csv"));
}

TEST_CASE("capacity bins")
{
    CHECK(capacity_bins[*capacity_bin(12.0).bin].label == "5-20 MW");
    CHECK(capacity_bins[*capacity_bin(20.0).bin].label == "20-50 MW");
    CHECK(capacity_bins[*capacity_bin(50.0).bin].label == "50-100 MW");
    CHECK(capacity_bins[*capacity_bin(100.0).bin].label == "100-700 MW");
    CHECK(capacity_bins[*capacity_bin(700.0).bin].label == "100-700 MW");
    CHECK(capacity_bin(0.5, 1.0).below_min_scale());
    CHECK(*capacity_bin(1.0).bin == 0);
    CHECK(*capacity_bin(4.9).bin == 0);
    CHECK_THROWS_AS(capacity_bin(700.5), DomainError);
    for (const auto& b : capacity_bins) {
        CHECK(parse_capacity_bin(b.label).has_value());
    }
    CHECK(!parse_capacity_bin("0-5 MW"));

    // [1, 700] is covered with no gaps or overlaps
    for (double mw = 1.0; mw <= 700.0; mw += 0.125) {
        const auto d = capacity_bin(mw);
        REQUIRE(d.bin);
        int hits = 0;
        for (std::size_t i = 0; i < capacity_bins.size(); ++i) {
            const auto& b = capacity_bins[i];
            const double lower = i == 0 ? 1.0 : b.lower_mw;
            const bool in = mw >= lower && (mw < b.upper_mw || (i + 1 == capacity_bins.size() && mw == b.upper_mw));
            hits += in;
            if (in) {
                CHECK(*d.bin == i);
            }
        }
        CHECK(hits == 1);
    }
}
