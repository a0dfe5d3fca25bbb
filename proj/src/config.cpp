#include "solarsite/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "solarsite/capacity.hpp"
#include "solarsite/error.hpp"

namespace solarsite {

namespace {

using nlohmann::json;

json parse_object(const std::string& text, const std::string& source)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(source + ": invalid JSON: " + e.what());
    }
    if (!j.is_object()) {
        throw ConfigError(source + ": expected a JSON object");
    }
    return j;
}

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& source)
{
    for (const auto& [key, value] : j.items()) {
        if (!known.contains(key)) {
            throw ConfigError(source + ": unknown key '" + key + "'");
        }
    }
}

double number_at(const json& j, const std::string& key, const std::string& source)
{
    const auto& v = j.at(key);
    if (!v.is_number()) {
        throw ConfigError(source + ": '" + key + "' must be a number");
    }
    return v.get<double>();
}

bool bool_at(const json& j, const std::string& key, const std::string& source)
{
    const auto& v = j.at(key);
    if (!v.is_boolean()) {
        throw ConfigError(source + ": '" + key + "' must be true or false");
    }
    return v.get<bool>();
}

std::string string_at(const json& j, const std::string& key, const std::string& source)
{
    const auto& v = j.at(key);
    if (!v.is_string()) {
        throw ConfigError(source + ": '" + key + "' must be a string");
    }
    return v.get<std::string>();
}

std::int64_t integer_mw(const json& v, const std::string& what, const std::string& source)
{
    if (!v.is_number_integer()) {
        throw ValidationError(source + ": " + what + " must be an integer number of MW");
    }
    return v.get<std::int64_t>();
}

std::filesystem::path resolve(const std::filesystem::path& base_dir, const std::string& p)
{
    const std::filesystem::path path(p);
    return path.is_absolute() ? path : base_dir / path;
}

std::filesystem::path existing(const std::filesystem::path& path, const std::string& what)
{
    if (!std::filesystem::is_regular_file(path)) {
        throw ConfigError(what + " file '" + path.string() + "' does not exist");
    }
    return path;
}

} // namespace

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

TargetSet parse_targets(const std::string& json_text, const std::string& source)
{
    const auto j = parse_object(json_text, source);
    reject_unknown(j, {"total_target_mw", "regions"}, source);
    if (!j.contains("total_target_mw")) {
        throw ConfigError(source + ": missing total_target_mw");
    }
    TargetSet t;
    t.total_mw = integer_mw(j.at("total_target_mw"), "total_target_mw", source);
    if (j.contains("regions")) {
        const auto& regions = j.at("regions");
        if (!regions.is_object()) {
            throw ConfigError(source + ": 'regions' must map region names to MW");
        }
        for (const auto& [name, value] : regions.items()) {
            const auto r = parse_region(name);
            if (!r) {
                throw ValidationError(source + ": unknown region '" + name + "'");
            }
            t.regional_mw[static_cast<std::size_t>(*r)] = integer_mw(value, "target for " + name, source);
        }
    }
    return t;
}

TargetSet load_targets(const std::filesystem::path& path)
{
    return parse_targets(read_text_file(path), path.string());
}

CostParams parse_costs(const std::string& json_text, const std::string& source)
{
    const auto j = parse_object(json_text, source);
    CostParams c;
    std::array<bool, 3> have_capex{};
    std::array<bool, 3> have_fom{};
    constexpr std::array<Technology, 3> techs{Technology::utility, Technology::commercial_roof,
                                              Technology::residential_roof};
    for (const auto& [key, value] : j.items()) {
        if (!value.is_number()) {
            throw ConfigError(source + ": '" + key + "' must be a number");
        }
        const double v = value.get<double>();
        bool matched = false;
        for (const auto t : techs) {
            const auto i = static_cast<std::size_t>(t);
            const std::string name(to_string(t));
            if (key == "capex_usd_per_kw." + name) {
                c.capex_usd_per_kw[i] = v;
                have_capex[i] = matched = true;
            } else if (key == "fom_usd_per_kw_yr." + name) {
                c.fom_usd_per_kw_yr[i] = v;
                have_fom[i] = matched = true;
            } else if (key == "fom_usd_per_mw_yr." + name) {
                c.fom_usd_per_kw_yr[i] = v / 1000.0;
                have_fom[i] = matched = true;
            }
        }
        if (matched) {
            continue;
        }
        if (key.rfind("bin_multiplier.", 0) == 0) {
            const auto bin = parse_capacity_bin(key.substr(15));
            if (!bin) {
                throw ConfigError(source + ": unknown capacity bin in '" + key + "'");
            }
            c.bin_multipliers[*bin] = v;
        } else if (key == "brownfield_premium") {
            c.brownfield_premium = v;
        } else if (key == "national_avg_lcot_usd_per_mwh") {
            c.national_avg_lcot_usd_per_mwh = v;
        } else if (key == "discount_rate") {
            c.finance.discount_rate = v;
        } else if (key == "lifetime_years") {
            if (!value.is_number_integer()) {
                throw ConfigError(source + ": lifetime_years must be an integer");
            }
            c.finance.lifetime_years = value.get<int>();
        } else {
            throw ConfigError(source + ": unknown key '" + key + "'");
        }
    }
    for (const auto t : techs) {
        const auto i = static_cast<std::size_t>(t);
        if (!have_capex[i] || !have_fom[i]) {
            throw ConfigError(source + ": missing CAPEX or FOM for " + std::string(to_string(t)));
        }
    }
    validate(c);
    return c;
}

CostParams load_costs(const std::filesystem::path& path) { return parse_costs(read_text_file(path), path.string()); }

ScenarioFile parse_scenario(const std::string& json_text, const std::string& source,
                            const std::filesystem::path& base_dir)
{
    const auto j = parse_object(json_text, source);
    reject_unknown(j, {"name", "scheme", "fallback", "mode", "strict", "targets", "sub_order"}, source);
    ScenarioFile f;
    auto& s = f.spec;
    if (!j.contains("scheme")) {
        throw ConfigError(source + ": missing scheme");
    }
    const auto scheme = parse_scheme(string_at(j, "scheme", source));
    if (!scheme) {
        throw ConfigError(source + ": unknown scheme '" + j.at("scheme").get<std::string>() + "'");
    }
    s.scheme = *scheme;
    if (j.contains("fallback")) {
        const auto fb = parse_fallback(string_at(j, "fallback", source));
        if (!fb) {
            throw ConfigError(source + ": fallback must be greenfield or rooftop");
        }
        s.fallback = *fb;
    }
    if (j.contains("mode")) {
        const auto mode = parse_mode(string_at(j, "mode", source));
        if (!mode) {
            throw ConfigError(source + ": mode must be ei_wide or regional");
        }
        s.mode = *mode;
    }
    if (j.contains("strict")) {
        s.strict = bool_at(j, "strict", source);
    }
    if (j.contains("sub_order")) {
        const auto& list = j.at("sub_order");
        if (!list.is_array()) {
            throw ConfigError(source + ": sub_order must be a list of categories");
        }
        for (const auto& item : list) {
            const auto c = item.is_string() ? parse_category(item.get<std::string>()) : std::nullopt;
            if (!c) {
                throw ConfigError(source + ": unknown category in sub_order");
            }
            s.sub_order.push_back(*c);
        }
    }
    if (j.contains("targets")) {
        f.targets_path = resolve(base_dir, string_at(j, "targets", source));
    }
    if (j.contains("name")) {
        s.name = string_at(j, "name", source);
    } else {
        s.name = std::string(to_string(s.scheme));
        if (s.scheme == Scheme::contaminated_first) {
            s.name += "_then_" + std::string(to_string(s.fallback));
        }
        s.name += "_" + std::string(to_string(s.mode));
    }
    return f;
}

ScenarioFile load_scenario(const std::filesystem::path& path)
{
    return parse_scenario(read_text_file(path), path.string(), path.parent_path());
}

RunConfig parse_run_config(const std::string& json_text, const std::string& source,
                           const std::filesystem::path& base_dir)
{
    const auto j = parse_object(json_text, source);
    reject_unknown(j,
                   {"parcels", "meteo", "density", "suitability", "orientations", "costs", "targets", "scenarios",
                    "roof_locales", "noct_c", "temp_coeff_per_c", "system_loss", "albedo", "rotation_limit_deg",
                    "max_slope_deg", "exclude_protected", "exclude_buffer_conflicts", "min_project_capacity_mw",
                    "module_efficiency", "random_free"},
                   source);
    RunConfig cfg;
    auto required = [&](const std::string& key) {
        if (!j.contains(key)) {
            throw ConfigError(source + ": missing '" + key + "'");
        }
        return existing(resolve(base_dir, string_at(j, key, source)), key);
    };
    cfg.parcels = required("parcels");
    cfg.meteo = required("meteo");
    cfg.density = required("density");
    cfg.suitability = required("suitability");
    cfg.orientations = required("orientations");
    cfg.costs = required("costs");
    cfg.targets = required("targets");
    if (j.contains("roof_locales")) {
        cfg.roof_locales = existing(resolve(base_dir, string_at(j, "roof_locales", source)), "roof_locales");
    }
    if (j.contains("scenarios")) {
        const auto& list = j.at("scenarios");
        if (!list.is_array()) {
            throw ConfigError(source + ": 'scenarios' must be a list of scenario files");
        }
        for (const auto& item : list) {
            if (!item.is_string()) {
                throw ConfigError(source + ": scenario entries must be file paths");
            }
            cfg.scenarios.push_back(existing(resolve(base_dir, item.get<std::string>()), "scenario"));
        }
    }
    auto optional_number = [&](const std::string& key, double& out) {
        if (j.contains(key)) {
            out = number_at(j, key, source);
        }
    };
    optional_number("noct_c", cfg.solar.noct_c);
    optional_number("temp_coeff_per_c", cfg.solar.temp_coeff_per_c);
    optional_number("system_loss", cfg.solar.system_loss);
    optional_number("albedo", cfg.solar.albedo);
    optional_number("rotation_limit_deg", cfg.solar.rotation_limit_deg);
    optional_number("max_slope_deg", cfg.screening.max_slope_deg);
    optional_number("min_project_capacity_mw", cfg.screening.min_project_capacity_mw);
    optional_number("module_efficiency", cfg.module_efficiency);
    if (j.contains("exclude_protected")) {
        cfg.screening.exclude_protected = bool_at(j, "exclude_protected", source);
    }
    if (j.contains("exclude_buffer_conflicts")) {
        cfg.screening.exclude_buffer_conflicts = bool_at(j, "exclude_buffer_conflicts", source);
    }
    if (j.contains("random_free")) {
        cfg.random_free = bool_at(j, "random_free", source);
    }
    validate(cfg.solar);
    validate(cfg.screening);
    if (!(cfg.module_efficiency > 0.0 && cfg.module_efficiency < 1.0)) {
        throw ConfigError(source + ": module_efficiency must lie in (0, 1)");
    }
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path)
{
    if (!std::filesystem::is_regular_file(path)) {
        throw ConfigError("config file '" + path.string() + "' does not exist");
    }
    return parse_run_config(read_text_file(path), path.string(), path.parent_path());
}

} // namespace solarsite
