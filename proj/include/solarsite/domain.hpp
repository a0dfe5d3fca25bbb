#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace solarsite {

// Regions of the Eastern Interconnection. Declaration order is the fixed
// reporting order used everywhere.
enum class Region : std::uint8_t { iso_ne, miso, nyiso, pjm, spp, southeast };

inline constexpr std::array<Region, 6> all_regions{Region::iso_ne, Region::miso, Region::nyiso,
                                                   Region::pjm,    Region::spp,  Region::southeast};

enum class Category : std::uint8_t {
    prime_agriculture,
    forest,
    shrubland,
    range_grassland,
    barren_marginal,
    brownfield,
    superfund,
    landfill,
    abandoned_mine,
    rcra,
    roof_small,
    roof_medium,
    roof_large,
};

inline constexpr std::size_t category_count = 13;

inline constexpr std::array<Category, category_count> all_categories{
    Category::prime_agriculture, Category::forest,     Category::shrubland,      Category::range_grassland,
    Category::barren_marginal,   Category::brownfield, Category::superfund,      Category::landfill,
    Category::abandoned_mine,    Category::rcra,       Category::roof_small,     Category::roof_medium,
    Category::roof_large,
};

enum class LandGroup : std::uint8_t { greenfield, contaminated, rooftop };

enum class RoofSizeClass : std::uint8_t { small, medium, large };

std::string_view to_string(Region r) noexcept;
std::string_view to_string(Category c) noexcept;
std::string_view to_string(LandGroup g) noexcept;
std::string_view to_string(RoofSizeClass s) noexcept;

std::optional<Region> parse_region(std::string_view token) noexcept;
std::optional<Category> parse_category(std::string_view token) noexcept;
std::optional<RoofSizeClass> parse_roof_size_class(std::string_view token) noexcept;

constexpr LandGroup group_of(Category c) noexcept
{
    if (c <= Category::barren_marginal) {
        return LandGroup::greenfield;
    }
    if (c <= Category::rcra) {
        return LandGroup::contaminated;
    }
    return LandGroup::rooftop;
}

constexpr bool is_rooftop(Category c) noexcept { return group_of(c) == LandGroup::rooftop; }
constexpr bool is_contaminated(Category c) noexcept { return group_of(c) == LandGroup::contaminated; }
constexpr bool is_ground(Category c) noexcept { return !is_rooftop(c); }

// Size class of a rooftop category; nullopt for ground categories.
std::optional<RoofSizeClass> roof_class_of(Category c) noexcept;
Category roof_category(RoofSizeClass s) noexcept;

struct Parcel {
    std::string id;
    std::string county_fips;
    Region region = Region::iso_ne;
    Category category = Category::prime_agriculture;
    double usable_area_m2 = 0.0;
    double mean_slope_deg = 0.0;
    bool is_protected = false;
    bool buffer_conflict = false;
    double tx_multiplier = 1.0;
    double latitude = 0.0;
    double longitude = 0.0;
    std::string meteo_cell;
};

// Immutable after load; parcels keep input row order.
class ParcelSet {
public:
    ParcelSet() = default;
    // Validates invariants and id uniqueness.
    explicit ParcelSet(std::vector<Parcel> parcels);

    std::span<const Parcel> parcels() const noexcept { return parcels_; }
    std::size_t size() const noexcept { return parcels_.size(); }
    const Parcel* find(std::string_view id) const;

private:
    std::vector<Parcel> parcels_;
    std::map<std::string, std::size_t, std::less<>> index_;
};

void validate_parcel(const Parcel& p);

ParcelSet read_parcels(std::istream& in, const std::string& source);
ParcelSet load_parcels(const std::filesystem::path& path);

// Screening

struct ScreenCriteria {
    double max_slope_deg = 10.0;
    bool exclude_protected = true;
    bool exclude_buffer_conflicts = true;
    double min_project_capacity_mw = 1.0;
};

void validate(const ScreenCriteria& c);

enum class ScreenReason : std::uint8_t { none, slope, protected_area, buffer_conflict };

std::string_view to_string(ScreenReason r) noexcept;

struct ScreenDecision {
    ScreenReason reason = ScreenReason::none;
    bool eligible() const noexcept { return reason == ScreenReason::none; }
};

// Criteria are checked in the fixed order slope, protected, buffer; the
// reason names the first one that fires. Rooftops are never slope-screened.
ScreenDecision screen_parcel(const Parcel& p, const ScreenCriteria& c) noexcept;

// Building footprint classes in square feet: small < 5,000 <= medium <= 25,000 < large.
RoofSizeClass classify_building(double footprint_area_ft2);

// Targets

struct TargetSet {
    std::int64_t total_mw = 0;
    std::array<std::int64_t, 6> regional_mw{};

    std::int64_t region_mw(Region r) const noexcept { return regional_mw[static_cast<std::size_t>(r)]; }
    friend bool operator==(const TargetSet&, const TargetSet&) = default;
};

// Throws TargetMismatchError unless the regional entries sum exactly to the total,
// ValidationError on negative entries.
const TargetSet& validate_targets(const TargetSet& t);

// Meteorology

inline constexpr std::size_t hours_per_year = 8760;

// One grid cell's hourly weather year in structure-of-arrays layout.
struct MeteoSeries {
    std::string cell;
    double latitude = 0.0;
    double longitude = 0.0;
    int year = 2012;
    std::vector<double> ghi;
    std::vector<double> dni;
    std::vector<double> dhi;
    std::vector<double> t_amb;
};

inline constexpr double max_ghi_wm2 = 1500.0;

void validate(const MeteoSeries& m);

// Cells keyed by cell name, sorted.
using MeteoCollection = std::map<std::string, MeteoSeries, std::less<>>;

MeteoCollection read_meteo(std::istream& in, const std::string& source);
MeteoCollection load_meteo(const std::filesystem::path& path);

} // namespace solarsite
