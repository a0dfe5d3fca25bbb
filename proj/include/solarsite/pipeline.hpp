#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "solarsite/capacity.hpp"
#include "solarsite/config.hpp"
#include "solarsite/cost.hpp"
#include "solarsite/domain.hpp"
#include "solarsite/error.hpp"
#include "solarsite/scenario.hpp"
#include "solarsite/solar.hpp"
#include "solarsite/supply_curve.hpp"

namespace solarsite {

// An error raised inside a named pipeline stage. Keeps the kind of the original.
class StageError : public Error {
public:
    StageError(std::string stage, const Error& cause);
    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

struct ManifestEntry {
    std::string file;
    std::uint64_t bytes = 0;
    std::string sha256;
};

std::string sha256_hex(std::string_view data);

// Files written into one output directory. Each file is recorded with its
// digest; commit() writes manifest.json last. Files of an uncommitted set are
// removed on destruction, so a failed run leaves neither outputs nor manifest.
class OutputSet {
public:
    explicit OutputSet(std::filesystem::path dir);
    ~OutputSet();
    OutputSet(const OutputSet&) = delete;
    OutputSet& operator=(const OutputSet&) = delete;

    void write(const std::string& file, const std::string& content);
    std::vector<ManifestEntry> commit();
    void discard() noexcept;

    const std::filesystem::path& dir() const noexcept { return dir_; }
    std::span<const ManifestEntry> entries() const noexcept { return entries_; }

private:
    std::filesystem::path dir_;
    std::vector<ManifestEntry> entries_;
    bool committed_ = false;
};

struct PipelineInputs {
    ParcelSet parcels;
    MeteoCollection meteo;
    DensityTable density;
    SuitabilityTable suitability;
    OrientationTable orientations;
    CostParams costs;
    TargetSet targets;
    std::map<std::string, std::string, std::less<>> roof_locales; // parcel id -> locale
};

PipelineInputs load_inputs(const RunConfig& cfg);

// Scenario files with targets resolved: a scenario's own targets file wins,
// otherwise the run's targets apply.
std::vector<ScenarioSpec> load_scenarios(std::span<const std::filesystem::path> files, const TargetSet& fallback);

struct CellCf {
    std::string cell;
    double latitude = 0.0; // mean latitude of the parcels that use the cell
    double utility_cf = 0.0;
    std::array<std::optional<double>, 3> roof_cf{}; // by RoofSizeClass
};

struct ScreenRecord {
    std::string parcel_id;
    Region region = Region::iso_ne;
    Category category = Category::prime_agriculture;
    std::string outcome; // "eligible", a screen reason, "below_min_scale" or "no_capacity"
    double capacity_mw = 0.0;
    double annual_cf = 0.0;
};

struct SupplyBuild {
    std::vector<ScreenRecord> screening; // parcel input order
    std::vector<CellCf> cells;           // sorted by cell
    std::vector<SupplyPoint> points;     // parcel input order, chunks in order
    CurveSet curves;
};

// Screening outcomes and per-cell capacity factors for the eligible parcels.
std::pair<std::vector<ScreenRecord>, std::vector<CellCf>> simulate_cells(const PipelineInputs& in,
                                                                         const RunConfig& cfg);

// Screen, simulate capacity factors, size and price every site.
// Ground parcels above 700 MW become chunks "<id>#1", "<id>#2", ...; chunks
// below the minimum project scale are dropped.
SupplyBuild build_supply(const PipelineInputs& in, const RunConfig& cfg);

void write_cf_csv(std::ostream& out, std::span<const CellCf> cells);
void write_screening_csv(std::ostream& out, std::span<const ScreenRecord> rows);

// fig1_category_curves.csv, fig2_region_curves.csv, fig3_lcoe_ranges.csv and
// fig4_scenario_costs.csv. Returns the file names in write order.
std::vector<std::string> emit_plot_data(const CurveSet& curves, std::span<const AllocationResult> results,
                                        const TargetSet& targets, OutputSet& out);

// Allocation, comparison and figure files for a set of scenarios.
std::vector<AllocationResult> run_scenarios(const CurveSet& curves, std::span<const ScenarioSpec> scenarios,
                                            const TargetSet& targets, OutputSet& out);

// Full pipeline into outdir. Errors are StageErrors; on error no outputs remain.
std::vector<ManifestEntry> run_pipeline(const RunConfig& cfg, const std::filesystem::path& outdir);

} // namespace solarsite
