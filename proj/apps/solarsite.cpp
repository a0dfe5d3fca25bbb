#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "solarsite/pipeline.hpp"

namespace fs = std::filesystem;
using namespace solarsite;

namespace {

template <class Writer>
std::string render(Writer&& w)
{
    std::ostringstream ss;
    w(ss);
    return ss.str();
}

CurveSet load_curves(const fs::path& dir)
{
    const auto points = load_supply_points(dir / "supply_points.csv");
    return group_curves(points);
}

std::vector<ScenarioSpec> scenarios_for(const std::vector<fs::path>& files, const fs::path& targets_file, bool strict)
{
    const auto targets = load_targets(targets_file);
    validate_targets(targets);
    auto specs = load_scenarios(files, targets);
    for (auto& s : specs) {
        s.targets = targets;
        s.strict = s.strict || strict;
    }
    return specs;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"County-scale solar siting: capacity factors, supply curves and allocation scenarios"};
    app.require_subcommand(1);

    fs::path config;
    fs::path out;
    fs::path curves_dir;
    fs::path targets_file;
    std::vector<fs::path> scenario_files;
    bool strict = false;

    auto* run = app.add_subcommand("run", "Run the full pipeline from a run configuration");
    run->add_option("--config", config, "Run configuration file")->required();
    run->add_option("--out", out, "Output directory")->required();

    auto* sim = app.add_subcommand("simulate-cf", "Screen parcels and simulate per-cell capacity factors");
    sim->add_option("--config", config, "Run configuration file")->required();
    sim->add_option("--out", out, "Output directory")->required();

    auto* build = app.add_subcommand("build-curves", "Build priced supply points and supply curves");
    build->add_option("--config", config, "Run configuration file")->required();
    build->add_option("--out", out, "Output directory")->required();

    auto* alloc = app.add_subcommand("allocate", "Allocate targets over supply curves written by build-curves");
    alloc->add_option("--curves", curves_dir, "Directory holding supply_points.csv")->required();
    alloc->add_option("--scenario", scenario_files, "Scenario file (repeatable)")->required();
    alloc->add_option("--targets", targets_file, "Targets file")->required();
    alloc->add_option("--out", out, "Output directory")->required();
    alloc->add_flag("--strict", strict, "Fail when the first priority tier cannot meet a target");

    auto* report = app.add_subcommand("report", "Allocate and write comparison and figure data");
    report->add_option("--curves", curves_dir, "Directory holding supply_points.csv")->required();
    report->add_option("--scenario", scenario_files, "Scenario file (repeatable)")->required();
    report->add_option("--targets", targets_file, "Targets file")->required();
    report->add_option("--out", out, "Output directory")->required();
    report->add_flag("--strict", strict, "Fail when the first priority tier cannot meet a target");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_code(ErrorKind::config);
    }

    try {
        if (*run) {
            const auto cfg = load_run_config(config);
            const auto entries = run_pipeline(cfg, out);
            std::cout << "wrote " << entries.size() << " files and manifest.json to " << out.string() << "\n";
        } else if (*sim || *build) {
            const auto cfg = load_run_config(config);
            OutputSet set(out);
            const auto in = load_inputs(cfg);
            if (*sim) {
                const auto [screening, cells] = simulate_cells(in, cfg);
                set.write("screening.csv", render([&](std::ostream& os) { write_screening_csv(os, screening); }));
                set.write("cf.csv", render([&](std::ostream& os) { write_cf_csv(os, cells); }));
            } else {
                const auto b = build_supply(in, cfg);
                set.write("screening.csv", render([&](std::ostream& os) { write_screening_csv(os, b.screening); }));
                set.write("cf.csv", render([&](std::ostream& os) { write_cf_csv(os, b.cells); }));
                set.write("supply_points.csv",
                          render([&](std::ostream& os) { write_supply_points_csv(os, b.points); }));
                set.write("curves.csv", render([&](std::ostream& os) { write_curves_csv(os, b.curves); }));
            }
            set.commit();
        } else {
            const auto curves = load_curves(curves_dir);
            const auto specs = scenarios_for(scenario_files, targets_file, strict);
            OutputSet set(out);
            if (*alloc) {
                std::vector<AllocationResult> results;
                for (const auto& s : specs) {
                    results.push_back(allocate(curves, s));
                }
                const auto rows = compare_scenarios(results);
                set.write("allocations.csv", render([&](std::ostream& os) { write_allocations_csv(os, results); }));
                set.write("metrics.csv", render([&](std::ostream& os) { write_comparison_csv(os, rows); }));
                for (const auto& r : results) {
                    if (r.shortfall_mw > 0.0) {
                        std::cerr << "solarsite: warning: scenario '" << r.scenario << "' is short by "
                                  << r.shortfall_mw << " MW\n";
                    }
                }
            } else {
                run_scenarios(curves, specs, specs.front().targets, set);
            }
            set.commit();
        }
    } catch (const Error& e) {
        std::cerr << "solarsite: error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "solarsite: error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
