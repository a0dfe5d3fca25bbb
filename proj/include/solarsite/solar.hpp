#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "solarsite/domain.hpp"
#include "solarsite/kernels.hpp"

namespace solarsite {

// PVWatts-like performance chain: isotropic-sky transposition, NOCT cell
// temperature, linear temperature derate and a flat system loss.
struct SolarConfig {
    double noct_c = 45.0;
    double temp_coeff_per_c = -0.0037;
    double system_loss = 0.14;
    double albedo = 0.2;
    // Tracker rotation limit in degrees; 90 means unlimited.
    double rotation_limit_deg = 60.0;
};

void validate(const SolarConfig& c);

struct SolarPosition {
    double zenith_deg = 0.0;  // [0, 180]
    double azimuth_deg = 0.0; // [0, 360), clockwise from north
};

struct Orientation {
    double tilt_deg = 0.0;    // [0, 90]
    double azimuth_deg = 180; // [0, 360)
};

struct OrientationEntry {
    Orientation orientation;
    double weight = 0.0;
    // Flat roof: panels are racked at a tilt equal to latitude facing the equator,
    // whatever orientation the entry lists.
    bool flat = false;
};

struct OrientationDistribution {
    std::vector<OrientationEntry> entries;

    // Total weight of the flat-roof members.
    double flat_share() const noexcept;
};

// Throws DomainError when empty, when weights are negative or do not sum to 1
// within 1e-9, or when an orientation is out of bounds.
void validate(const OrientationDistribution& d);

using OrientationTable = std::map<RoofSizeClass, OrientationDistribution>;

// orientations.csv: size_class,tilt_deg,azimuth_deg,weight. Rows with tilt 0 are flat roofs.
OrientationTable read_orientations(std::istream& in, const std::string& source);
OrientationTable load_orientations(const std::filesystem::path& path);

struct CFSeries {
    std::vector<double> hourly;
    double annual_mean = 0.0;
};

// Cooper's declination in degrees for day of year n (1-based).
double declination_deg(int day_of_year);

// Hours are local solar time: hour index h is day h/24 + 1 at solar hour h % 24.
int day_of_year(std::size_t hour_index);
double solar_hour(std::size_t hour_index);

SolarPosition solar_position(double latitude_deg, int day_of_year, double solar_hour);
SolarPosition solar_position(double latitude_deg, std::size_t hour_index);

struct TrackerState {
    double rotation_deg = 0.0; // positive tilts the panel toward the east
    double cos_aoi = 0.0;
};

// Horizontal north-south single-axis tracker with backtracking disabled.
// Returns cos_aoi 0 (and rotation 0, stowed) when the sun is at or below the horizon.
TrackerState tracker_rotation(const SolarPosition& sp, double rotation_limit_deg = 90.0);

// Cosine of the angle of incidence on a fixed surface (may be negative).
double cos_aoi_fixed(const SolarPosition& sp, const Orientation& surface);

// Isotropic-sky plane-of-array irradiance in W/m2.
double poa_irradiance(double ghi, double dni, double dhi, double cos_aoi, double tilt_deg, double albedo);

double cell_temperature(double poa_wm2, double t_amb_c, double noct_c = 45.0);

double hourly_cf(double poa_wm2, double t_cell_c, double temp_coeff_per_c, double system_loss);

// Single-axis tracking utility PV over the 8760-hour year.
CFSeries simulate_utility_cf(const MeteoSeries& m, double latitude_deg, const SolarConfig& cfg);
CFSeries simulate_utility_cf(const MeteoSeries& m, double latitude_deg, const SolarConfig& cfg, kernels::Isa isa);

CFSeries simulate_fixed_cf(const MeteoSeries& m, double latitude_deg, const Orientation& surface,
                           const SolarConfig& cfg);

// Weighted mean of per-orientation annual capacity factors.
double simulate_roof_cf(const MeteoSeries& m, double latitude_deg, const OrientationDistribution& dist,
                        const SolarConfig& cfg);

// Arithmetic mean of cell capacity factors; throws DomainError on empty input.
double county_mean_cf(std::span<const double> cell_cfs);

} // namespace solarsite
