#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "solarsite/domain.hpp"

namespace solarsite {

struct DensityTable {
    // Areal power density per ground category; categories not listed use the default.
    std::map<Category, double> mw_per_km2;
    double default_mw_per_km2 = 45.0;
    double module_efficiency = 0.15;

    double density(Category c) const;
};

void validate(const DensityTable& d);

// density.csv: category,mw_per_km2
DensityTable read_density(std::istream& in, const std::string& source);
DensityTable load_density(const std::filesystem::path& path);

// Census division of a two-digit state FIPS code, e.g. "26" -> "east_north_central".
std::optional<std::string_view> census_division_for_state(std::string_view state_fips) noexcept;

// Suitable-roof fraction by (locale, census division, size class). Lookups fall
// back to a "*" locale, then to "*" for both locale and division.
class SuitabilityTable {
public:
    void set(std::string locale, std::string division, RoofSizeClass cls, double fraction);
    std::optional<double> find(std::string_view locale, std::string_view division, RoofSizeClass cls) const;
    // Throws ConfigError when no entry matches.
    double fraction(std::string_view locale, std::string_view division, RoofSizeClass cls) const;
    bool empty() const noexcept { return entries_.empty(); }

private:
    std::map<std::tuple<std::string, std::string, RoofSizeClass>, double, std::less<>> entries_;
};

// suitability.csv: locale,census_division,size_class,fraction
SuitabilityTable read_suitability(std::istream& in, const std::string& source);
SuitabilityTable load_suitability(const std::filesystem::path& path);

inline constexpr double max_project_mw = 700.0;

// MW = area (km2) x density. Throws DomainError for rooftop categories.
double land_capacity(double usable_area_m2, Category category, const DensityTable& d);

// Splits capacity into max_project_mw chunks plus one remainder chunk. The
// chunks sum to mw exactly.
std::vector<double> split_capacity(double mw, double chunk_mw = max_project_mw);

// Solar elevation at 10:00 solar time on the winter solstice (declination -23.45).
double winter_design_elevation_deg(double latitude_deg);

// Row packing fraction cos(tilt) / (cos(tilt) + sin(tilt) / tan(elevation)).
double packing_from_elevation(double tilt_deg, double elevation_deg);

// Packing fraction for flat-roof rows spaced to avoid self-shading at 10:00 all
// year. Latitude must lie in [24, 50] degrees north, tilt in [0, 90).
double flat_roof_packing(double latitude_deg, double panel_tilt_deg);

enum class RoofForm { flat, pitched };

// Panel-placeable area. Pitched roofs use the more south-facing half; flat roofs
// use rows tilted at latitude with winter-10am spacing.
double roof_panel_area(double roof_area_m2, RoofForm form, double suitable_fraction, double latitude_deg);
double roof_panel_area(double roof_area_m2, RoofSizeClass cls, RoofForm form, std::string_view locale,
                       std::string_view division, const SuitabilityTable& table, double latitude_deg);

// Nameplate MW at 1000 W/m2.
double roof_capacity(double panel_area_m2, double efficiency);

struct CapacityBin {
    std::string_view label;
    double lower_mw;
    double upper_mw;
};

inline constexpr std::array<CapacityBin, 4> capacity_bins{{
    {"5-20 MW", 5.0, 20.0},
    {"20-50 MW", 20.0, 50.0},
    {"50-100 MW", 50.0, 100.0},
    {"100-700 MW", 100.0, 700.0},
}};

std::optional<std::size_t> parse_capacity_bin(std::string_view label) noexcept;

struct BinDecision {
    std::optional<std::size_t> bin; // index into capacity_bins
    bool below_min_scale() const noexcept { return !bin; }
};

// Half-open bins [lower, upper), except the last which includes 700 MW.
// [min, 5) MW maps to the first bin; below min is excluded.
BinDecision capacity_bin(double mw, double min_project_mw = 1.0);

} // namespace solarsite
