#include "solarsite/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>

#include "solarsite/csv.hpp"
#include "solarsite/error.hpp"
#include "solarsite/format.hpp"

namespace solarsite {

namespace {

constexpr double deg = std::numbers::pi / 180.0;
constexpr double m2_per_km2 = 1e6;

struct StateDivision {
    std::string_view fips;
    std::string_view division;
};

constexpr std::array<StateDivision, 51> state_divisions{{
    {"01", "east_south_central"}, {"02", "pacific"},            {"04", "mountain"},
    {"05", "west_south_central"}, {"06", "pacific"},            {"08", "mountain"},
    {"09", "new_england"},        {"10", "south_atlantic"},     {"11", "south_atlantic"},
    {"12", "south_atlantic"},     {"13", "south_atlantic"},     {"15", "pacific"},
    {"16", "mountain"},           {"17", "east_north_central"}, {"18", "east_north_central"},
    {"19", "west_north_central"}, {"20", "west_north_central"}, {"21", "east_south_central"},
    {"22", "west_south_central"}, {"23", "new_england"},        {"24", "south_atlantic"},
    {"25", "new_england"},        {"26", "east_north_central"}, {"27", "west_north_central"},
    {"28", "east_south_central"}, {"29", "west_north_central"}, {"30", "mountain"},
    {"31", "west_north_central"}, {"32", "mountain"},           {"33", "new_england"},
    {"34", "middle_atlantic"},    {"35", "mountain"},           {"36", "middle_atlantic"},
    {"37", "south_atlantic"},     {"38", "west_north_central"}, {"39", "east_north_central"},
    {"40", "west_south_central"}, {"41", "pacific"},            {"42", "middle_atlantic"},
    {"44", "new_england"},        {"45", "south_atlantic"},     {"46", "west_north_central"},
    {"47", "east_south_central"}, {"48", "west_south_central"}, {"49", "mountain"},
    {"50", "new_england"},        {"51", "south_atlantic"},     {"53", "pacific"},
    {"54", "south_atlantic"},     {"55", "east_north_central"}, {"56", "mountain"},
}};

} // namespace

double DensityTable::density(Category c) const
{
    const auto it = mw_per_km2.find(c);
    return it == mw_per_km2.end() ? default_mw_per_km2 : it->second;
}

void validate(const DensityTable& d)
{
    if (!(d.default_mw_per_km2 > 0.0)) {
        throw ConfigError("default power density must be > 0");
    }
    for (const auto& [c, v] : d.mw_per_km2) {
        if (!(v > 0.0)) {
            throw ConfigError("power density for " + std::string(to_string(c)) + " must be > 0");
        }
    }
    if (!(d.module_efficiency > 0.0 && d.module_efficiency < 1.0)) {
        throw ConfigError("module efficiency must lie in (0, 1)");
    }
}

DensityTable read_density(std::istream& in, const std::string& source)
{
    CsvReader reader(in, source);
    reader.expect_header({"category", "mw_per_km2"});
    DensityTable table;
    std::vector<std::string> f;
    while (reader.next(f)) {
        const auto value = parse_double(f[1]);
        if (!value) {
            reader.fail("mw_per_km2 is not a number");
        }
        if (f[0] == "default") {
            table.default_mw_per_km2 = *value;
            continue;
        }
        const auto c = parse_category(f[0]);
        if (!c || is_rooftop(*c)) {
            reader.fail("'" + f[0] + "' is not a ground land category");
        }
        table.mw_per_km2[*c] = *value;
    }
    validate(table);
    return table;
}

DensityTable load_density(const std::filesystem::path& path)
{
    auto in = open_input(path);
    return read_density(in, path.string());
}

std::optional<std::string_view> census_division_for_state(std::string_view state_fips) noexcept
{
    for (const auto& s : state_divisions) {
        if (s.fips == state_fips) {
            return s.division;
        }
    }
    return std::nullopt;
}

void SuitabilityTable::set(std::string locale, std::string division, RoofSizeClass cls, double fraction)
{
    if (!(fraction >= 0.0 && fraction <= 1.0)) {
        throw ConfigError("suitability fraction must lie in [0, 1]");
    }
    entries_[{std::move(locale), std::move(division), cls}] = fraction;
}

std::optional<double> SuitabilityTable::find(std::string_view locale, std::string_view division,
                                             RoofSizeClass cls) const
{
    const std::tuple<std::string_view, std::string_view, RoofSizeClass> keys[] = {
        {locale, division, cls}, {"*", division, cls}, {"*", "*", cls}};
    for (const auto& k : keys) {
        if (const auto it = entries_.find(k); it != entries_.end()) {
            return it->second;
        }
    }
    return std::nullopt;
}

double SuitabilityTable::fraction(std::string_view locale, std::string_view division, RoofSizeClass cls) const
{
    const auto f = find(locale, division, cls);
    if (!f) {
        throw ConfigError("no rooftop suitability entry for (" + std::string(locale) + ", " + std::string(division) +
                          ", " + std::string(to_string(cls)) + ")");
    }
    return *f;
}

SuitabilityTable read_suitability(std::istream& in, const std::string& source)
{
    CsvReader reader(in, source);
    reader.expect_header({"locale", "census_division", "size_class", "fraction"});
    SuitabilityTable table;
    std::vector<std::string> f;
    while (reader.next(f)) {
        const auto cls = parse_roof_size_class(f[2]);
        const auto value = parse_double(f[3]);
        if (!cls) {
            reader.fail("unknown size_class '" + f[2] + "'");
        }
        if (!value || *value < 0.0 || *value > 1.0) {
            reader.fail("fraction must be a number in [0, 1]");
        }
        table.set(f[0], f[1], *cls, *value);
    }
    return table;
}

SuitabilityTable load_suitability(const std::filesystem::path& path)
{
    auto in = open_input(path);
    return read_suitability(in, path.string());
}

double land_capacity(double usable_area_m2, Category category, const DensityTable& d)
{
    if (is_rooftop(category)) {
        throw DomainError("land_capacity called for rooftop category " + std::string(to_string(category)));
    }
    if (!(usable_area_m2 >= 0.0)) {
        throw DomainError("usable area must be >= 0");
    }
    return usable_area_m2 / m2_per_km2 * d.density(category);
}

std::vector<double> split_capacity(double mw, double chunk_mw)
{
    if (!(mw >= 0.0) || !(chunk_mw > 0.0)) {
        throw DomainError("split_capacity needs mw >= 0 and chunk > 0");
    }
    if (mw == 0.0) {
        return {};
    }
    if (mw <= chunk_mw) {
        return {mw};
    }
    const auto full = static_cast<std::size_t>(std::floor(mw / chunk_mw));
    std::vector<double> chunks(full, chunk_mw);
    // mw/2 < full*chunk <= mw, so the subtraction is exact (Sterbenz)
    const double rest = mw - static_cast<double>(full) * chunk_mw;
    if (rest > 0.0) {
        chunks.push_back(rest);
    }
    return chunks;
}

double winter_design_elevation_deg(double latitude_deg)
{
    constexpr double solstice_declination = -23.45;
    constexpr double hour_angle_10am = -30.0;
    const double lat = latitude_deg * deg;
    const double dec = solstice_declination * deg;
    const double sin_alpha =
        std::sin(lat) * std::sin(dec) + std::cos(lat) * std::cos(dec) * std::cos(hour_angle_10am * deg);
    return std::asin(std::clamp(sin_alpha, -1.0, 1.0)) / deg;
}

double packing_from_elevation(double tilt_deg, double elevation_deg)
{
    if (!(elevation_deg > 0.0 && elevation_deg < 90.0)) {
        throw DomainError("no 10:00 sun: design elevation must lie in (0, 90) degrees");
    }
    if (!(tilt_deg >= 0.0 && tilt_deg < 90.0)) {
        throw DomainError("panel tilt must lie in [0, 90)");
    }
    const double c = std::cos(tilt_deg * deg);
    const double s = std::sin(tilt_deg * deg);
    return c / (c + s / std::tan(elevation_deg * deg));
}

double flat_roof_packing(double latitude_deg, double panel_tilt_deg)
{
    if (!(latitude_deg >= 24.0 && latitude_deg <= 50.0)) {
        throw DomainError("flat-roof packing latitude " + format_number(latitude_deg) + " outside [24, 50] N");
    }
    return packing_from_elevation(panel_tilt_deg, winter_design_elevation_deg(latitude_deg));
}

double roof_panel_area(double roof_area_m2, RoofForm form, double suitable_fraction, double latitude_deg)
{
    if (!(roof_area_m2 >= 0.0)) {
        throw DomainError("roof area must be >= 0");
    }
    if (!(suitable_fraction >= 0.0 && suitable_fraction <= 1.0)) {
        throw DomainError("suitable fraction must lie in [0, 1]");
    }
    const double suitable = roof_area_m2 * suitable_fraction;
    if (form == RoofForm::pitched) {
        return suitable * 0.5;
    }
    return suitable * flat_roof_packing(latitude_deg, latitude_deg);
}

double roof_panel_area(double roof_area_m2, RoofSizeClass cls, RoofForm form, std::string_view locale,
                       std::string_view division, const SuitabilityTable& table, double latitude_deg)
{
    return roof_panel_area(roof_area_m2, form, table.fraction(locale, division, cls), latitude_deg);
}

double roof_capacity(double panel_area_m2, double efficiency)
{
    if (!(panel_area_m2 >= 0.0) || !(efficiency >= 0.0)) {
        throw DomainError("roof_capacity inputs must be >= 0");
    }
    return panel_area_m2 * 1000.0 * efficiency / 1e6;
}

std::optional<std::size_t> parse_capacity_bin(std::string_view label) noexcept
{
    for (std::size_t i = 0; i < capacity_bins.size(); ++i) {
        if (capacity_bins[i].label == label) {
            return i;
        }
    }
    return std::nullopt;
}

BinDecision capacity_bin(double mw, double min_project_mw)
{
    if (!(mw >= 0.0)) {
        throw DomainError("capacity must be >= 0 MW");
    }
    if (mw > max_project_mw) {
        throw DomainError("capacity " + format_number(mw) + " MW exceeds the 700 MW project ceiling; split first");
    }
    if (mw < min_project_mw || mw == 0.0) {
        return {};
    }
    for (std::size_t i = 1; i < capacity_bins.size(); ++i) {
        if (mw < capacity_bins[i].lower_mw) {
            return {i - 1};
        }
    }
    return {capacity_bins.size() - 1};
}

} // namespace solarsite
