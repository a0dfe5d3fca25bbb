#include <filesystem>

#include "doctest.h"
#include "solarsite/config.hpp"
#include "solarsite/error.hpp"

using namespace solarsite;
namespace fs = std::filesystem;

namespace {

const fs::path fixture{SOLARSITE_FIXTURE};

const char* costs_json = R"({
  "capex_usd_per_kw.utility": 1000, "capex_usd_per_kw.commercial_roof": 1700,
  "capex_usd_per_kw.residential_roof": 2100,
  "fom_usd_per_mw_yr.utility": 20000, "fom_usd_per_kw_yr.commercial_roof": 25,
  "fom_usd_per_kw_yr.residential_roof": 30,
  "bin_multiplier.5-20 MW": 1.15, "bin_multiplier.100-700 MW": 1.0,
  "national_avg_lcot_usd_per_mwh": 4, "discount_rate": 0.06, "lifetime_years": 25
})";

} // namespace

TEST_CASE("targets file")
{
    const auto t = parse_targets(R"({"total_target_mw": 30, "regions": {"PJM": 10, "SPP": 20}})", "t.json");
    CHECK(t.total_mw == 30);
    CHECK(t.region_mw(Region::pjm) == 10);
    CHECK(t.region_mw(Region::spp) == 20);
    CHECK(t.region_mw(Region::miso) == 0);

    CHECK_THROWS_AS(parse_targets(R"({"total_target_mw": 30.5})", "t"), ValidationError);
    CHECK_THROWS_AS(parse_targets(R"({"total_target_mw": 30, "regions": {"ERCOT": 30}})", "t"), ValidationError);
    CHECK_THROWS_AS(parse_targets(R"({"regions": {}})", "t"), ConfigError);
    CHECK_THROWS_AS(parse_targets(R"({"total_target_mw": 30, "extra": 1})", "t"), ConfigError);
    CHECK_THROWS_AS(parse_targets("[1, 2]", "t"), ConfigError);
    CHECK_THROWS_AS(parse_targets("{not json", "t"), ConfigError);

    const auto fx = load_targets(fixture / "targets.json");
    CHECK(fx.total_mw == 453000);
    CHECK_NOTHROW(validate_targets(fx));
    CHECK_THROWS_AS(load_targets(fixture / "absent.json"), ConfigError);
}

TEST_CASE("cost file")
{
    const auto c = parse_costs(costs_json, "costs.json");
    CHECK(c.capex(Technology::utility) == 1000.0);
    CHECK(c.fom(Technology::utility) == 20.0);
    CHECK(c.fom(Technology::commercial_roof) == 25.0);
    CHECK(c.bin_multipliers[0] == 1.15);
    CHECK(!c.bin_multipliers[1]);
    CHECK(c.finance.discount_rate == 0.06);
    CHECK(c.finance.lifetime_years == 25);
    CHECK(c.brownfield_premium == 1.30);

    CHECK_THROWS_AS(parse_costs(R"({"capex_usd_per_kw.utility": 1000})", "c"), ConfigError);
    CHECK_THROWS_AS(parse_costs(R"({"bin_multiplier.0-5 MW": 1.2})", "c"), ConfigError);
    CHECK_THROWS_AS(parse_costs(R"({"lifetime_years": 2.5})", "c"), ConfigError);
    CHECK_THROWS_AS(parse_costs(R"({"capex_usd_per_kw.utility": "cheap"})", "c"), ConfigError);

    const auto fx = load_costs(fixture / "costs.json");
    CHECK(fx.capex(Technology::residential_roof) == 2100.0);
    CHECK(fx.bin_multipliers[3] == 1.0);
}

TEST_CASE("scenario file")
{
    const auto f = parse_scenario(R"({"scheme": "contaminated_first", "fallback": "rooftop", "mode": "ei_wide",
                                      "sub_order": ["landfill"], "targets": "t.json"})",
                                  "s.json", "/base");
    CHECK(f.spec.name == "contaminated_first_then_rooftop_ei_wide");
    CHECK(f.spec.scheme == Scheme::contaminated_first);
    CHECK(f.spec.fallback == Fallback::rooftop);
    CHECK(f.spec.mode == Mode::ei_wide);
    CHECK(!f.spec.strict);
    REQUIRE(f.spec.sub_order.size() == 1);
    CHECK(f.spec.sub_order[0] == Category::landfill);
    CHECK(f.targets_path == fs::path("/base/t.json"));

    const auto g = parse_scenario(R"({"name": "x", "scheme": "min_lcoe", "strict": true})", "s", ".");
    CHECK(g.spec.name == "x");
    CHECK(g.spec.mode == Mode::regional);
    CHECK(g.spec.strict);
    CHECK(!g.targets_path);

    CHECK_THROWS_AS(parse_scenario(R"({"mode": "regional"})", "s", "."), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"scheme": "cheapest"})", "s", "."), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"scheme": "min_lcoe", "mode": "national"})", "s", "."), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"scheme": "min_lcoe", "sub_order": ["lawn"]})", "s", "."), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"scheme": "min_lcoe", "strict": 1})", "s", "."), ConfigError);
}

TEST_CASE("run config")
{
    const auto cfg = load_run_config(fixture / "run.json");
    CHECK(cfg.scenarios.size() == 10);
    CHECK(cfg.parcels == fixture / "parcels.csv");
    CHECK(cfg.roof_locales);
    CHECK(cfg.solar.rotation_limit_deg == 60.0);
    CHECK(cfg.screening.max_slope_deg == 10.0);
    CHECK(cfg.module_efficiency == 0.15);

    CHECK_THROWS_AS(load_run_config(fixture / "missing.json"), ConfigError);
    CHECK_THROWS_AS(parse_run_config(R"({"parcels": "parcels.csv"})", "r", fixture), ConfigError);
    CHECK_THROWS_AS(parse_run_config(R"({"parcels": "nope.csv", "meteo": "meteo.csv", "density": "density.csv",
        "suitability": "suitability.csv", "orientations": "orientations.csv", "costs": "costs.json",
        "targets": "targets.json", "scenarios": []})",
                                     "r", fixture),
                    ConfigError);
    CHECK_THROWS_AS(parse_run_config(R"({"parcels": "parcels.csv", "meteo": "meteo.csv", "density": "density.csv",
        "suitability": "suitability.csv", "orientations": "orientations.csv", "costs": "costs.json",
        "targets": "targets.json", "scenarios": [], "module_efficiency": 1.5})",
                                     "r", fixture),
                    ConfigError);
}
