#include "solarsite/solar.hpp"

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

double sind(double a) { return std::sin(a * deg); }
double cosd(double a) { return std::cos(a * deg); }

// Per-hour surface factors for the kernel; zero at night.
struct SurfaceFactors {
    std::vector<double> beam;
    std::vector<double> diffuse;
    std::vector<double> ground;

    explicit SurfaceFactors(std::size_t n) : beam(n, 0.0), diffuse(n, 0.0), ground(n, 0.0) {}

    void set(std::size_t h, double cos_aoi, double tilt_deg, double albedo)
    {
        const double ct = cosd(tilt_deg);
        beam[h] = std::max(cos_aoi, 0.0);
        diffuse[h] = (1.0 + ct) / 2.0;
        ground[h] = albedo * (1.0 - ct) / 2.0;
    }
};

kernels::HourlyCfParams kernel_params(const SolarConfig& cfg)
{
    return {(cfg.noct_c - 20.0) / 800.0, cfg.temp_coeff_per_c, 1.0 - cfg.system_loss};
}

CFSeries run_chain(const MeteoSeries& m, const SurfaceFactors& s, const SolarConfig& cfg, kernels::Isa isa)
{
    CFSeries out;
    out.hourly.assign(hours_per_year, 0.0);
    const kernels::HourlyCfInputs in{m.ghi, m.dni, m.dhi, m.t_amb, s.beam, s.diffuse, s.ground};
    kernels::hourly_cf(isa, in, kernel_params(cfg), out.hourly);
    double sum = 0.0;
    for (const double cf : out.hourly) {
        sum += cf;
    }
    out.annual_mean = sum / static_cast<double>(hours_per_year);
    return out;
}

void check_latitude(double latitude_deg)
{
    if (!(latitude_deg >= -90.0 && latitude_deg <= 90.0)) {
        throw DomainError("latitude " + format_number(latitude_deg) + " outside [-90, 90]");
    }
}

Orientation effective_orientation(const OrientationEntry& e, double latitude_deg)
{
    if (e.flat) {
        return {std::abs(latitude_deg), latitude_deg >= 0.0 ? 180.0 : 0.0};
    }
    return e.orientation;
}

} // namespace

void validate(const SolarConfig& c)
{
    if (!(c.noct_c > 20.0)) {
        throw ConfigError("noct_c must exceed 20 C");
    }
    if (!(c.system_loss >= 0.0 && c.system_loss < 1.0)) {
        throw ConfigError("system_loss must lie in [0, 1)");
    }
    if (!(c.albedo >= 0.0 && c.albedo <= 1.0)) {
        throw ConfigError("albedo must lie in [0, 1]");
    }
    if (!(c.rotation_limit_deg > 0.0 && c.rotation_limit_deg <= 90.0)) {
        throw ConfigError("rotation_limit_deg must lie in (0, 90]");
    }
    if (!std::isfinite(c.temp_coeff_per_c)) {
        throw ConfigError("temp_coeff_per_c must be finite");
    }
}

double OrientationDistribution::flat_share() const noexcept
{
    double share = 0.0;
    for (const auto& e : entries) {
        if (e.flat) {
            share += e.weight;
        }
    }
    return share;
}

void validate(const OrientationDistribution& d)
{
    if (d.entries.empty()) {
        throw DomainError("orientation distribution is empty");
    }
    double sum = 0.0;
    for (const auto& e : d.entries) {
        if (!(e.weight >= 0.0)) {
            throw DomainError("orientation weights must be >= 0");
        }
        const auto& o = e.orientation;
        if (!(o.tilt_deg >= 0.0 && o.tilt_deg <= 90.0) || !(o.azimuth_deg >= 0.0 && o.azimuth_deg < 360.0)) {
            throw DomainError("orientation out of bounds (tilt in [0, 90], azimuth in [0, 360))");
        }
        sum += e.weight;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw DomainError("orientation weights sum to " + format_number(sum) + ", expected 1");
    }
}

OrientationTable read_orientations(std::istream& in, const std::string& source)
{
    CsvReader reader(in, source);
    reader.expect_header({"size_class", "tilt_deg", "azimuth_deg", "weight"});
    OrientationTable table;
    std::vector<std::string> f;
    while (reader.next(f)) {
        const auto cls = parse_roof_size_class(f[0]);
        if (!cls) {
            reader.fail("unknown size_class '" + f[0] + "' (small, medium, large)");
        }
        const auto tilt = parse_double(f[1]);
        const auto az = parse_double(f[2]);
        const auto w = parse_double(f[3]);
        if (!tilt || !az || !w) {
            reader.fail("non-numeric orientation field");
        }
        table[*cls].entries.push_back({{*tilt, *az}, *w, *tilt == 0.0});
    }
    for (auto& [cls, dist] : table) {
        try {
            validate(dist);
        } catch (const DomainError& e) {
            throw ConfigError(source + ": " + std::string(to_string(cls)) + ": " + e.what());
        }
    }
    return table;
}

OrientationTable load_orientations(const std::filesystem::path& path)
{
    auto in = open_input(path);
    return read_orientations(in, path.string());
}

double declination_deg(int day_of_year)
{
    return 23.45 * sind(360.0 * (284.0 + day_of_year) / 365.0);
}

int day_of_year(std::size_t hour_index) { return static_cast<int>(hour_index / 24) + 1; }

double solar_hour(std::size_t hour_index) { return static_cast<double>(hour_index % 24); }

SolarPosition solar_position(double latitude_deg, int day_of_year, double solar_hour)
{
    check_latitude(latitude_deg);
    const double decl = declination_deg(day_of_year);
    const double hour_angle = 15.0 * (solar_hour - 12.0);

    const double sin_lat = sind(latitude_deg);
    const double cos_lat = cosd(latitude_deg);
    const double sin_dec = sind(decl);
    const double cos_dec = cosd(decl);
    const double cos_ha = cosd(hour_angle);

    // Sun unit vector in (east, north, up).
    const double up = std::clamp(sin_lat * sin_dec + cos_lat * cos_dec * cos_ha, -1.0, 1.0);
    const double east = -cos_dec * sind(hour_angle);
    const double north = cos_lat * sin_dec - sin_lat * cos_dec * cos_ha;

    SolarPosition sp;
    sp.zenith_deg = std::acos(up) / deg;
    double az = std::atan2(east, north) / deg;
    if (az < 0.0) {
        az += 360.0;
    }
    sp.azimuth_deg = az >= 360.0 ? 0.0 : az;
    return sp;
}

SolarPosition solar_position(double latitude_deg, std::size_t hour_index)
{
    if (hour_index >= hours_per_year) {
        throw DomainError("hour index " + std::to_string(hour_index) + " outside 0..8759");
    }
    return solar_position(latitude_deg, day_of_year(hour_index), solar_hour(hour_index));
}

TrackerState tracker_rotation(const SolarPosition& sp, double rotation_limit_deg)
{
    if (sp.zenith_deg >= 90.0) {
        return {};
    }
    const double sun_east = sind(sp.zenith_deg) * sind(sp.azimuth_deg);
    const double sun_up = cosd(sp.zenith_deg);
    const double ideal = std::atan2(sun_east, sun_up) / deg;
    const double limit = std::min(rotation_limit_deg, 90.0);
    if (std::abs(ideal) <= limit) {
        // sun in the rotation plane: cos_aoi is the length of the projected sun vector
        return {ideal, std::min(std::hypot(sun_east, sun_up), 1.0)};
    }
    const double rotation = std::clamp(ideal, -limit, limit);
    const double cos_aoi = sun_east * sind(rotation) + sun_up * cosd(rotation);
    return {rotation, std::clamp(cos_aoi, 0.0, 1.0)};
}

double cos_aoi_fixed(const SolarPosition& sp, const Orientation& surface)
{
    const double sz = sind(sp.zenith_deg);
    const double st = sind(surface.tilt_deg);
    return sz * sind(sp.azimuth_deg) * st * sind(surface.azimuth_deg) +
           sz * cosd(sp.azimuth_deg) * st * cosd(surface.azimuth_deg) + cosd(sp.zenith_deg) * cosd(surface.tilt_deg);
}

double poa_irradiance(double ghi, double dni, double dhi, double cos_aoi, double tilt_deg, double albedo)
{
    const double ct = cosd(tilt_deg);
    const double poa = dni * std::max(cos_aoi, 0.0) + dhi * (1.0 + ct) / 2.0 + ghi * albedo * (1.0 - ct) / 2.0;
    return std::max(poa, 0.0);
}

double cell_temperature(double poa_wm2, double t_amb_c, double noct_c)
{
    return t_amb_c + poa_wm2 * (noct_c - 20.0) / 800.0;
}

double hourly_cf(double poa_wm2, double t_cell_c, double temp_coeff_per_c, double system_loss)
{
    const double cf = (poa_wm2 / 1000.0) * (1.0 + temp_coeff_per_c * (t_cell_c - 25.0)) * (1.0 - system_loss);
    return std::clamp(cf, 0.0, 1.0);
}

CFSeries simulate_utility_cf(const MeteoSeries& m, double latitude_deg, const SolarConfig& cfg, kernels::Isa isa)
{
    validate(m);
    validate(cfg);
    check_latitude(latitude_deg);
    SurfaceFactors s(hours_per_year);
    for (std::size_t h = 0; h < hours_per_year; ++h) {
        const auto sp = solar_position(latitude_deg, h);
        if (sp.zenith_deg >= 90.0) {
            continue;
        }
        const auto t = tracker_rotation(sp, cfg.rotation_limit_deg);
        s.set(h, t.cos_aoi, std::abs(t.rotation_deg), cfg.albedo);
    }
    return run_chain(m, s, cfg, isa);
}

CFSeries simulate_utility_cf(const MeteoSeries& m, double latitude_deg, const SolarConfig& cfg)
{
    return simulate_utility_cf(m, latitude_deg, cfg, kernels::active_isa());
}

CFSeries simulate_fixed_cf(const MeteoSeries& m, double latitude_deg, const Orientation& surface,
                           const SolarConfig& cfg)
{
    validate(m);
    validate(cfg);
    check_latitude(latitude_deg);
    SurfaceFactors s(hours_per_year);
    for (std::size_t h = 0; h < hours_per_year; ++h) {
        const auto sp = solar_position(latitude_deg, h);
        if (sp.zenith_deg >= 90.0) {
            continue;
        }
        s.set(h, cos_aoi_fixed(sp, surface), surface.tilt_deg, cfg.albedo);
    }
    return run_chain(m, s, cfg, kernels::active_isa());
}

double simulate_roof_cf(const MeteoSeries& m, double latitude_deg, const OrientationDistribution& dist,
                        const SolarConfig& cfg)
{
    validate(dist);
    double weighted = 0.0;
    double weight_sum = 0.0;
    double lo = 1.0;
    double hi = 0.0;
    for (const auto& e : dist.entries) {
        const double cf = simulate_fixed_cf(m, latitude_deg, effective_orientation(e, latitude_deg), cfg).annual_mean;
        weighted += e.weight * cf;
        weight_sum += e.weight;
        lo = std::min(lo, cf);
        hi = std::max(hi, cf);
    }
    if (weight_sum <= 0.0) {
        throw DomainError("orientation distribution has zero total weight");
    }
    // a convex combination; the clamp only absorbs rounding
    return std::clamp(weighted / weight_sum, lo, hi);
}

double county_mean_cf(std::span<const double> cell_cfs)
{
    if (cell_cfs.empty()) {
        throw DomainError("county mean of an empty capacity-factor list");
    }
    double sum = 0.0;
    for (const double v : cell_cfs) {
        sum += v;
    }
    return std::clamp(sum / static_cast<double>(cell_cfs.size()), *std::min_element(cell_cfs.begin(), cell_cfs.end()),
                      *std::max_element(cell_cfs.begin(), cell_cfs.end()));
}

} // namespace solarsite
