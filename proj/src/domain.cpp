#include "solarsite/domain.hpp"

#include <algorithm>
#include <cmath>
#include <istream>

#include "solarsite/csv.hpp"
#include "solarsite/error.hpp"
#include "solarsite/format.hpp"

namespace solarsite {

namespace {

constexpr std::array<std::string_view, 6> region_names{"ISO-NE", "MISO", "NYISO", "PJM", "SPP", "Southeast"};

constexpr std::array<std::string_view, category_count> category_names{
    "prime_agriculture", "forest",         "shrubland", "range_grassland", "barren_marginal",
    "brownfield",        "superfund",      "landfill",  "abandoned_mine",  "rcra",
    "roof_small",        "roof_medium",    "roof_large",
};

constexpr std::array<std::string_view, 3> roof_class_names{"small", "medium", "large"};

template <typename Enum, std::size_t N>
std::optional<Enum> lookup(const std::array<std::string_view, N>& names, std::string_view token) noexcept
{
    for (std::size_t i = 0; i < N; ++i) {
        if (names[i] == token) {
            return static_cast<Enum>(i);
        }
    }
    return std::nullopt;
}

bool parse_flag(std::string_view text, bool& out)
{
    if (text == "0") {
        out = false;
        return true;
    }
    if (text == "1") {
        out = true;
        return true;
    }
    return false;
}

} // namespace

std::string_view to_string(Region r) noexcept { return region_names[static_cast<std::size_t>(r)]; }
std::string_view to_string(Category c) noexcept { return category_names[static_cast<std::size_t>(c)]; }
std::string_view to_string(RoofSizeClass s) noexcept { return roof_class_names[static_cast<std::size_t>(s)]; }

std::string_view to_string(LandGroup g) noexcept
{
    switch (g) {
    case LandGroup::greenfield: return "greenfield";
    case LandGroup::contaminated: return "contaminated";
    case LandGroup::rooftop: return "rooftop";
    }
    return "?";
}

std::optional<Region> parse_region(std::string_view token) noexcept { return lookup<Region>(region_names, token); }

std::optional<Category> parse_category(std::string_view token) noexcept
{
    return lookup<Category>(category_names, token);
}

std::optional<RoofSizeClass> parse_roof_size_class(std::string_view token) noexcept
{
    return lookup<RoofSizeClass>(roof_class_names, token);
}

std::optional<RoofSizeClass> roof_class_of(Category c) noexcept
{
    switch (c) {
    case Category::roof_small: return RoofSizeClass::small;
    case Category::roof_medium: return RoofSizeClass::medium;
    case Category::roof_large: return RoofSizeClass::large;
    default: return std::nullopt;
    }
}

Category roof_category(RoofSizeClass s) noexcept
{
    switch (s) {
    case RoofSizeClass::small: return Category::roof_small;
    case RoofSizeClass::medium: return Category::roof_medium;
    case RoofSizeClass::large: return Category::roof_large;
    }
    return Category::roof_small;
}

void validate_parcel(const Parcel& p)
{
    auto bad = [&](const std::string& what) { throw ValidationError("parcel '" + p.id + "': " + what); };
    if (p.id.empty()) {
        throw ValidationError("parcel with empty id");
    }
    if (p.county_fips.size() != 5 || !std::all_of(p.county_fips.begin(), p.county_fips.end(), [](char ch) {
            return ch >= '0' && ch <= '9';
        })) {
        bad("county_fips must be a 5-digit code, got '" + p.county_fips + "'");
    }
    if (!(p.usable_area_m2 >= 0.0)) {
        bad("usable_area_m2 must be >= 0");
    }
    if (!(p.mean_slope_deg >= 0.0)) {
        bad("mean_slope_deg must be >= 0");
    }
    if (!(p.tx_multiplier > 0.0)) {
        bad("tx_multiplier must be > 0");
    }
    if (!(p.latitude >= -90.0 && p.latitude <= 90.0) || !(p.longitude >= -180.0 && p.longitude <= 180.0)) {
        bad("coordinates out of range");
    }
    if (p.meteo_cell.empty()) {
        bad("missing meteo_cell");
    }
}

ParcelSet::ParcelSet(std::vector<Parcel> parcels) : parcels_(std::move(parcels))
{
    for (std::size_t i = 0; i < parcels_.size(); ++i) {
        validate_parcel(parcels_[i]);
        if (!index_.emplace(parcels_[i].id, i).second) {
            throw DuplicateIdError(parcels_[i].id);
        }
    }
}

const Parcel* ParcelSet::find(std::string_view id) const
{
    const auto it = index_.find(id);
    return it == index_.end() ? nullptr : &parcels_[it->second];
}

ParcelSet read_parcels(std::istream& in, const std::string& source)
{
    CsvReader reader(in, source);
    reader.expect_header({"id", "county_fips", "region", "category", "usable_area_m2", "mean_slope_deg", "protected",
                          "buffer_conflict", "tx_multiplier", "latitude", "longitude", "meteo_cell"});

    std::vector<Parcel> parcels;
    std::map<std::string, std::size_t, std::less<>> seen;
    std::vector<std::string> f;
    while (reader.next(f)) {
        auto number = [&](std::size_t col, std::string_view name) {
            const auto v = parse_double(f[col]);
            if (!v) {
                reader.fail(std::string(name) + " is not a number: '" + f[col] + "'");
            }
            return *v;
        };
        Parcel p;
        p.id = f[0];
        p.county_fips = f[1];
        const auto region = parse_region(f[2]);
        if (!region) {
            reader.fail("unknown region '" + f[2] + "' (not an Eastern Interconnection region)");
        }
        p.region = *region;
        const auto category = parse_category(f[3]);
        if (!category) {
            reader.fail("unknown land category '" + f[3] + "'");
        }
        p.category = *category;
        p.usable_area_m2 = number(4, "usable_area_m2");
        p.mean_slope_deg = number(5, "mean_slope_deg");
        if (!parse_flag(f[6], p.is_protected) || !parse_flag(f[7], p.buffer_conflict)) {
            reader.fail("boolean flags must be 0 or 1");
        }
        p.tx_multiplier = number(8, "tx_multiplier");
        p.latitude = number(9, "latitude");
        p.longitude = number(10, "longitude");
        p.meteo_cell = f[11];

        if (const auto [it, inserted] = seen.emplace(p.id, reader.row()); !inserted) {
            throw DuplicateIdError(p.id);
        }
        try {
            validate_parcel(p);
        } catch (const ValidationError& e) {
            reader.fail(e.what());
        }
        parcels.push_back(std::move(p));
    }
    return ParcelSet(std::move(parcels));
}

ParcelSet load_parcels(const std::filesystem::path& path)
{
    auto in = open_input(path);
    return read_parcels(in, path.string());
}

void validate(const ScreenCriteria& c)
{
    if (!(c.max_slope_deg > 0.0)) {
        throw ConfigError("screening max_slope must be > 0");
    }
    if (!(c.min_project_capacity_mw >= 0.0)) {
        throw ConfigError("screening min_project_capacity must be >= 0");
    }
}

std::string_view to_string(ScreenReason r) noexcept
{
    switch (r) {
    case ScreenReason::none: return "eligible";
    case ScreenReason::slope: return "slope";
    case ScreenReason::protected_area: return "protected";
    case ScreenReason::buffer_conflict: return "buffer";
    }
    return "?";
}

ScreenDecision screen_parcel(const Parcel& p, const ScreenCriteria& c) noexcept
{
    if (!is_rooftop(p.category) && p.mean_slope_deg > c.max_slope_deg) {
        return {ScreenReason::slope};
    }
    if (c.exclude_protected && p.is_protected) {
        return {ScreenReason::protected_area};
    }
    if (c.exclude_buffer_conflicts && p.buffer_conflict) {
        return {ScreenReason::buffer_conflict};
    }
    return {};
}

RoofSizeClass classify_building(double footprint_area_ft2)
{
    if (!(footprint_area_ft2 >= 0.0)) {
        throw DomainError("building footprint area must be >= 0 ft2");
    }
    if (footprint_area_ft2 < 5000.0) {
        return RoofSizeClass::small;
    }
    if (footprint_area_ft2 <= 25000.0) {
        return RoofSizeClass::medium;
    }
    return RoofSizeClass::large;
}

const TargetSet& validate_targets(const TargetSet& t)
{
    if (t.total_mw < 0) {
        throw ValidationError("total target must be >= 0 MW");
    }
    std::int64_t sum = 0;
    for (const auto r : all_regions) {
        const auto v = t.region_mw(r);
        if (v < 0) {
            throw ValidationError("target for " + std::string(to_string(r)) + " must be >= 0 MW");
        }
        sum += v;
    }
    if (sum != t.total_mw) {
        throw TargetMismatchError(t.total_mw, sum);
    }
    return t;
}

void validate(const MeteoSeries& m)
{
    const auto n = hours_per_year;
    if (m.ghi.size() != n || m.dni.size() != n || m.dhi.size() != n || m.t_amb.size() != n) {
        throw ValidationError("meteo cell '" + m.cell + "' must hold exactly 8760 hourly records");
    }
    for (std::size_t h = 0; h < n; ++h) {
        const bool finite = std::isfinite(m.ghi[h]) && std::isfinite(m.dni[h]) && std::isfinite(m.dhi[h]) &&
                            std::isfinite(m.t_amb[h]);
        if (!finite) {
            throw ValidationError("meteo cell '" + m.cell + "' hour " + std::to_string(h) + ": non-finite value");
        }
        if (m.ghi[h] < 0.0 || m.dni[h] < 0.0 || m.dhi[h] < 0.0) {
            throw ValidationError("meteo cell '" + m.cell + "' hour " + std::to_string(h) + ": negative irradiance");
        }
        if (m.ghi[h] > max_ghi_wm2) {
            throw ValidationError("meteo cell '" + m.cell + "' hour " + std::to_string(h) + ": ghi " +
                                  format_number(m.ghi[h]) + " W/m2 exceeds 1500 W/m2");
        }
    }
}

MeteoCollection read_meteo(std::istream& in, const std::string& source)
{
    // Leap years carry 8784 hours; Dec 31 (hours 8760..8783) is dropped.
    constexpr long long leap_hours = 8784;

    CsvReader reader(in, source);
    reader.expect_header({"meteo_cell", "hour_index", "ghi_wm2", "dni_wm2", "dhi_wm2", "tamb_c"});

    struct Building {
        MeteoSeries series;
        std::vector<bool> seen;
        std::size_t count = 0;
    };
    std::map<std::string, Building, std::less<>> cells;
    std::vector<std::string> f;
    while (reader.next(f)) {
        const auto hour = parse_integer(f[1]);
        if (!hour || *hour < 0 || *hour >= leap_hours) {
            reader.fail("hour_index must be an integer in 0..8759, got '" + f[1] + "'");
        }
        double values[4];
        for (std::size_t k = 0; k < 4; ++k) {
            const auto v = parse_double(f[2 + k]);
            if (!v) {
                reader.fail("non-numeric or non-finite value '" + f[2 + k] + "'");
            }
            values[k] = *v;
        }
        if (f[0].empty()) {
            reader.fail("empty meteo_cell");
        }
        if (*hour >= static_cast<long long>(hours_per_year)) {
            continue;
        }
        auto [it, inserted] = cells.try_emplace(f[0]);
        auto& b = it->second;
        if (inserted) {
            b.series.cell = f[0];
            b.series.ghi.assign(hours_per_year, 0.0);
            b.series.dni.assign(hours_per_year, 0.0);
            b.series.dhi.assign(hours_per_year, 0.0);
            b.series.t_amb.assign(hours_per_year, 0.0);
            b.seen.assign(hours_per_year, false);
        }
        const auto h = static_cast<std::size_t>(*hour);
        if (b.seen[h]) {
            reader.fail("duplicate hour " + std::to_string(h) + " for cell '" + f[0] + "'");
        }
        if (values[0] < 0.0 || values[1] < 0.0 || values[2] < 0.0) {
            reader.fail("negative irradiance");
        }
        if (values[0] > max_ghi_wm2) {
            reader.fail("ghi " + format_number(values[0]) + " W/m2 exceeds 1500 W/m2");
        }
        b.seen[h] = true;
        ++b.count;
        b.series.ghi[h] = values[0];
        b.series.dni[h] = values[1];
        b.series.dhi[h] = values[2];
        b.series.t_amb[h] = values[3];
    }

    MeteoCollection out;
    for (auto& [key, b] : cells) {
        if (b.count != hours_per_year) {
            throw ValidationError(source + ": meteo cell '" + key + "' has " + std::to_string(b.count) +
                                  " hourly records, expected 8760");
        }
        validate(b.series);
        out.emplace(key, std::move(b.series));
    }
    return out;
}

MeteoCollection load_meteo(const std::filesystem::path& path)
{
    auto in = open_input(path);
    return read_meteo(in, path.string());
}

} // namespace solarsite
