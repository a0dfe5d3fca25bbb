#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "solarsite/cost.hpp"
#include "solarsite/domain.hpp"
#include "solarsite/scenario.hpp"
#include "solarsite/solar.hpp"

namespace solarsite {

// Structured config files are JSON objects. Unknown keys are rejected so typos
// surface as configuration errors.

// {"total_target_mw": 453000, "regions": {"ISO-NE": 12000, ...}}
// Entries must be integers. Regions not listed get 0 MW.
TargetSet parse_targets(const std::string& json_text, const std::string& source);
TargetSet load_targets(const std::filesystem::path& path);

// Flat keys: capex_usd_per_kw.<tech>, fom_usd_per_kw_yr.<tech> (or
// fom_usd_per_mw_yr.<tech>, converted to per-kW), brownfield_premium,
// bin_multiplier.<bin label>, national_avg_lcot_usd_per_mwh, discount_rate,
// lifetime_years.
CostParams parse_costs(const std::string& json_text, const std::string& source);
CostParams load_costs(const std::filesystem::path& path);

struct ScenarioFile {
    ScenarioSpec spec; // targets left empty when the file names none
    std::optional<std::filesystem::path> targets_path;
};

// {"name", "scheme", "fallback", "mode", "strict", "targets", "sub_order"}
ScenarioFile parse_scenario(const std::string& json_text, const std::string& source,
                            const std::filesystem::path& base_dir);
ScenarioFile load_scenario(const std::filesystem::path& path);

struct RunConfig {
    std::filesystem::path parcels;
    std::filesystem::path meteo;
    std::filesystem::path density;
    std::filesystem::path suitability;
    std::filesystem::path orientations;
    std::filesystem::path costs;
    std::filesystem::path targets;
    std::vector<std::filesystem::path> scenarios;
    std::optional<std::filesystem::path> roof_locales; // parcel_id,locale
    SolarConfig solar;
    ScreenCriteria screening;
    double module_efficiency = 0.15;
    // The pipeline draws no random numbers; the field is kept for config compatibility.
    bool random_free = true;
};

// Relative paths resolve against the config file's directory. Throws
// ConfigError when a referenced file is missing.
RunConfig parse_run_config(const std::string& json_text, const std::string& source,
                           const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

} // namespace solarsite
