#include "solarsite/pipeline.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>

#include "json.hpp"
#include "solarsite/csv.hpp"
#include "solarsite/format.hpp"

namespace solarsite {

namespace {

template <class F>
decltype(auto) in_stage(const char* name, F&& f)
{
    try {
        return f();
    } catch (const StageError&) {
        throw;
    } catch (const Error& e) {
        throw StageError(name, e);
    }
}

template <class Writer>
std::string render(Writer&& w)
{
    std::ostringstream ss;
    w(ss);
    return ss.str();
}

std::map<std::string, std::string, std::less<>> read_roof_locales(const std::filesystem::path& path)
{
    auto in = open_input(path);
    CsvReader reader(in, path.string());
    reader.expect_header({"parcel_id", "locale"});
    std::map<std::string, std::string, std::less<>> out;
    std::vector<std::string> f;
    while (reader.next(f)) {
        if (!out.emplace(f[0], f[1]).second) {
            reader.fail("duplicate parcel id '" + f[0] + "'");
        }
    }
    return out;
}

std::vector<ScreenRecord> screen_stage(const PipelineInputs& in, const RunConfig& cfg)
{
    std::vector<ScreenRecord> out;
    out.reserve(in.parcels.size());
    for (const auto& p : in.parcels.parcels()) {
        const auto d = screen_parcel(p, cfg.screening);
        out.push_back({p.id, p.region, p.category, d.eligible() ? "eligible" : std::string(to_string(d.reason)), 0.0,
                       0.0});
    }
    return out;
}

std::vector<CellCf> cf_stage(const PipelineInputs& in, const RunConfig& cfg, std::span<const ScreenRecord> screening)
{
    std::map<std::string, std::pair<double, std::size_t>> lat_sum;
    std::array<bool, 3> roof_class_used{};
    const auto parcels = in.parcels.parcels();
    for (std::size_t i = 0; i < parcels.size(); ++i) {
        if (screening[i].outcome != "eligible") {
            continue;
        }
        const auto& p = parcels[i];
        if (!in.meteo.contains(p.meteo_cell)) {
            throw ValidationError("parcel '" + p.id + "' references unknown meteo cell '" + p.meteo_cell + "'");
        }
        auto& [sum, n] = lat_sum[p.meteo_cell];
        sum += p.latitude;
        ++n;
        if (const auto cls = roof_class_of(p.category)) {
            if (!in.orientations.contains(*cls)) {
                throw ConfigError("no orientation distribution for roof size class '" +
                                  std::string(to_string(*cls)) + "'");
            }
            roof_class_used[static_cast<std::size_t>(*cls)] = true;
        }
    }
    std::vector<CellCf> cells;
    for (const auto& [cell, acc] : lat_sum) {
        const auto& m = in.meteo.find(cell)->second;
        CellCf c;
        c.cell = cell;
        c.latitude = acc.first / static_cast<double>(acc.second);
        c.utility_cf = simulate_utility_cf(m, c.latitude, cfg.solar).annual_mean;
        for (const auto& [cls, dist] : in.orientations) {
            if (roof_class_used[static_cast<std::size_t>(cls)]) {
                c.roof_cf[static_cast<std::size_t>(cls)] = simulate_roof_cf(m, c.latitude, dist, cfg.solar);
            }
        }
        cells.push_back(std::move(c));
    }
    return cells;
}

// Annual CF per eligible parcel: mean over the distinct cells its county uses.
std::vector<double> county_cf(const PipelineInputs& in, std::span<const ScreenRecord> screening,
                              std::span<const CellCf> cells)
{
    std::map<std::string, std::set<std::string>> county_cells;
    const auto parcels = in.parcels.parcels();
    for (std::size_t i = 0; i < parcels.size(); ++i) {
        if (screening[i].outcome == "eligible") {
            county_cells[parcels[i].county_fips].insert(parcels[i].meteo_cell);
        }
    }
    std::map<std::string_view, const CellCf*> by_cell;
    for (const auto& c : cells) {
        by_cell[c.cell] = &c;
    }
    std::vector<double> out(parcels.size(), 0.0);
    std::vector<double> values;
    for (std::size_t i = 0; i < parcels.size(); ++i) {
        if (screening[i].outcome != "eligible") {
            continue;
        }
        const auto& p = parcels[i];
        const auto cls = roof_class_of(p.category);
        values.clear();
        for (const auto& cell : county_cells[p.county_fips]) {
            const auto* c = by_cell.at(cell);
            values.push_back(cls ? *c->roof_cf[static_cast<std::size_t>(*cls)] : c->utility_cf);
        }
        out[i] = county_mean_cf(values);
    }
    return out;
}

double roof_parcel_capacity(const Parcel& p, const PipelineInputs& in, const RunConfig& cfg)
{
    const auto cls = *roof_class_of(p.category);
    const auto division = census_division_for_state(std::string_view(p.county_fips).substr(0, 2));
    if (!division) {
        throw ValidationError("parcel '" + p.id + "' has county FIPS '" + p.county_fips + "' outside any state");
    }
    const auto loc = in.roof_locales.find(p.id);
    const std::string_view locale = loc == in.roof_locales.end() ? std::string_view("*") : loc->second;
    const double flat = in.orientations.at(cls).flat_share();
    double panel = 0.0;
    if (flat > 0.0) {
        panel += flat * roof_panel_area(p.usable_area_m2, cls, RoofForm::flat, locale, *division, in.suitability,
                                        p.latitude);
    }
    if (flat < 1.0) {
        panel += (1.0 - flat) * roof_panel_area(p.usable_area_m2, cls, RoofForm::pitched, locale, *division,
                                                in.suitability, p.latitude);
    }
    return roof_capacity(panel, cfg.module_efficiency);
}

std::vector<SiteRequest> capacity_stage(const PipelineInputs& in, const RunConfig& cfg,
                                        std::span<ScreenRecord> screening, std::span<const double> cf)
{
    std::vector<SiteRequest> requests;
    const auto parcels = in.parcels.parcels();
    const double min_mw = cfg.screening.min_project_capacity_mw;
    for (std::size_t i = 0; i < parcels.size(); ++i) {
        auto& rec = screening[i];
        if (rec.outcome != "eligible") {
            continue;
        }
        const auto& p = parcels[i];
        rec.annual_cf = cf[i];
        if (is_rooftop(p.category)) {
            const double mw = roof_parcel_capacity(p, in, cfg);
            if (!(mw > 0.0)) {
                rec.outcome = "no_capacity";
                continue;
            }
            rec.capacity_mw = mw;
            requests.push_back({&p, p.id, mw, cf[i]});
            continue;
        }
        const double mw = land_capacity(p.usable_area_m2, p.category, in.density);
        if (mw < min_mw) {
            rec.outcome = "below_min_scale";
            continue;
        }
        const auto chunks = split_capacity(mw);
        for (std::size_t k = 0; k < chunks.size(); ++k) {
            if (chunks[k] < min_mw) {
                continue;
            }
            std::string id = chunks.size() == 1 ? p.id : p.id + "#" + std::to_string(k + 1);
            rec.capacity_mw += chunks[k];
            requests.push_back({&p, std::move(id), chunks[k], cf[i]});
        }
    }
    return requests;
}

void write_series(CsvWriter& w, std::string_view lead, std::string_view series, const SupplyCurve& curve)
{
    const auto pts = curve.points();
    const auto cum = curve.cumulative_mw();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!lead.empty()) {
            w.field(lead);
        }
        w.field(series)
            .field(static_cast<long long>(i + 1))
            .field(pts[i].parcel_id)
            .field(pts[i].capacity_mw)
            .field(cum[i])
            .field(pts[i].lcoe_usd_per_mwh);
        w.end_row();
    }
}

SupplyCurve merged(const CurveSet& curves, std::span<const Region> regions, std::span<const Category> categories)
{
    std::vector<const SupplyCurve*> parts;
    for (const auto r : regions) {
        for (const auto c : categories) {
            if (const auto it = curves.find({r, c}); it != curves.end()) {
                parts.push_back(&it->second);
            }
        }
    }
    return merge_curves(std::span<const SupplyCurve* const>(parts));
}

std::string fig1(const CurveSet& curves)
{
    return render([&](std::ostream& os) {
        CsvWriter w(os);
        w.header({"series", "rank", "parcel_id", "capacity_mw", "cum_capacity_mw", "lcoe_usd_per_mwh"});
        for (const auto c : all_categories) {
            const Category one[] = {c};
            write_series(w, "", "category:" + std::string(to_string(c)), merged(curves, all_regions, one));
        }
        for (const auto g : {LandGroup::greenfield, LandGroup::contaminated, LandGroup::rooftop}) {
            std::vector<Category> members;
            for (const auto c : all_categories) {
                if (group_of(c) == g) {
                    members.push_back(c);
                }
            }
            write_series(w, "", "group:" + std::string(to_string(g)), merged(curves, all_regions, members));
        }
    });
}

std::string fig2(const CurveSet& curves)
{
    return render([&](std::ostream& os) {
        CsvWriter w(os);
        w.header({"region", "series", "rank", "parcel_id", "capacity_mw", "cum_capacity_mw", "lcoe_usd_per_mwh"});
        for (const auto r : all_regions) {
            const Region one[] = {r};
            const auto name = to_string(r);
            for (const auto c : all_categories) {
                if (const auto it = curves.find({r, c}); it != curves.end()) {
                    write_series(w, name, to_string(c), it->second);
                }
            }
            write_series(w, name, "all", merged(curves, one, all_categories));
        }
    });
}

std::string fig3(const CurveSet& curves, const TargetSet& targets)
{
    return render([&](std::ostream& os) {
        CsvWriter w(os);
        w.header({"region", "category", "potential_mw", "target_mw", "potential_share_of_target",
                  "min_lcoe_usd_per_mwh", "max_lcoe_usd_per_mwh"});
        for (const auto& [key, curve] : curves) {
            const auto target = static_cast<double>(targets.region_mw(key.first));
            const double potential = curve.total_mw();
            const double min_lcoe = curve.points().front().lcoe_usd_per_mwh;
            const double q = std::min(target, potential);
            const double max_lcoe = q > 0.0 ? cost_at_capacity(curve, q).marginal_usd_per_mwh : min_lcoe;
            w.field(to_string(key.first)).field(to_string(key.second)).field(potential).field(target);
            if (target > 0.0) {
                w.field(potential / target);
            } else {
                w.field("");
            }
            w.field(min_lcoe).field(max_lcoe);
            w.end_row();
        }
    });
}

std::string fig4(std::span<const AllocationResult> results)
{
    return render([&](std::ostream& os) {
        CsvWriter w(os);
        w.header({"scenario", "mode", "scope", "target_mw", "allocated_mw", "shortfall_mw", "average_lcoe_usd_per_mwh",
                  "investment_usd"});
        for (const auto& r : results) {
            const auto m = metrics(r);
            auto row = [&](std::string_view scope, std::int64_t target, const Summary& s,
                           std::optional<double> shortfall) {
                w.field(r.scenario).field(to_string(r.mode)).field(scope).field(static_cast<long long>(target));
                w.field(s.allocated_mw);
                if (shortfall) {
                    w.field(*shortfall);
                } else {
                    w.field("");
                }
                if (s.average_lcoe_usd_per_mwh) {
                    w.field(*s.average_lcoe_usd_per_mwh);
                } else {
                    w.field("");
                }
                w.field(s.investment_usd);
                w.end_row();
            };
            for (const auto reg : all_regions) {
                const auto i = static_cast<std::size_t>(reg);
                std::optional<double> shortfall;
                if (r.mode == Mode::regional) {
                    shortfall = r.shortfall_by_region_mw[i];
                }
                row(to_string(reg), r.targets.region_mw(reg), m.by_region[i], shortfall);
            }
            row("EI", r.targets.total_mw, m.total, r.shortfall_mw);
        }
    });
}

} // namespace

StageError::StageError(std::string stage, const Error& cause)
    : Error(cause.kind(), "stage '" + stage + "': " + cause.what()), stage_(std::move(stage))
{
}

std::string sha256_hex(std::string_view data)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw IoError("SHA-256 digest failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xF]);
    }
    return out;
}

OutputSet::OutputSet(std::filesystem::path dir) : dir_(std::move(dir))
{
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec || !std::filesystem::is_directory(dir_)) {
        throw ConfigError("cannot create output directory '" + dir_.string() + "'");
    }
    std::filesystem::remove(dir_ / "manifest.json", ec);
}

OutputSet::~OutputSet()
{
    if (!committed_) {
        discard();
    }
}

void OutputSet::write(const std::string& file, const std::string& content)
{
    const auto path = dir_ / file;
    entries_.push_back({file, content.size(), sha256_hex(content)});
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) {
        throw IoError("cannot write '" + path.string() + "'");
    }
}

std::vector<ManifestEntry> OutputSet::commit()
{
    nlohmann::ordered_json files = nlohmann::ordered_json::array();
    for (const auto& e : entries_) {
        files.push_back({{"file", e.file}, {"bytes", e.bytes}, {"sha256", e.sha256}});
    }
    const nlohmann::ordered_json manifest = {{"files", files}};
    const auto text = manifest.dump(2) + "\n";
    std::ofstream out(dir_ / "manifest.json", std::ios::binary | std::ios::trunc);
    out << text;
    out.close();
    if (!out) {
        throw IoError("cannot write manifest in '" + dir_.string() + "'");
    }
    committed_ = true;
    return entries_;
}

void OutputSet::discard() noexcept
{
    std::error_code ec;
    for (const auto& e : entries_) {
        std::filesystem::remove(dir_ / e.file, ec);
    }
    entries_.clear();
}

PipelineInputs load_inputs(const RunConfig& cfg)
{
    PipelineInputs in;
    in.parcels = load_parcels(cfg.parcels);
    in.meteo = load_meteo(cfg.meteo);
    in.density = load_density(cfg.density);
    in.density.module_efficiency = cfg.module_efficiency;
    in.suitability = load_suitability(cfg.suitability);
    in.orientations = load_orientations(cfg.orientations);
    in.costs = load_costs(cfg.costs);
    in.targets = load_targets(cfg.targets);
    validate_targets(in.targets);
    if (cfg.roof_locales) {
        in.roof_locales = read_roof_locales(*cfg.roof_locales);
    }
    return in;
}

std::vector<ScenarioSpec> load_scenarios(std::span<const std::filesystem::path> files, const TargetSet& fallback)
{
    std::vector<ScenarioSpec> out;
    std::set<std::string> names;
    for (const auto& path : files) {
        auto f = load_scenario(path);
        f.spec.targets = f.targets_path ? load_targets(*f.targets_path) : fallback;
        validate_targets(f.spec.targets);
        if (!names.insert(f.spec.name).second) {
            throw ConfigError("duplicate scenario name '" + f.spec.name + "'");
        }
        out.push_back(std::move(f.spec));
    }
    return out;
}

std::pair<std::vector<ScreenRecord>, std::vector<CellCf>> simulate_cells(const PipelineInputs& in,
                                                                         const RunConfig& cfg)
{
    auto screening = in_stage("screen", [&] { return screen_stage(in, cfg); });
    auto cells = in_stage("simulate-cf", [&] { return cf_stage(in, cfg, screening); });
    return {std::move(screening), std::move(cells)};
}

SupplyBuild build_supply(const PipelineInputs& in, const RunConfig& cfg)
{
    SupplyBuild b;
    std::tie(b.screening, b.cells) = simulate_cells(in, cfg);
    const auto cf = in_stage("simulate-cf", [&] { return county_cf(in, b.screening, b.cells); });
    const auto requests = in_stage("capacity", [&] { return capacity_stage(in, cfg, b.screening, cf); });
    b.points = in_stage("cost", [&] {
        return price_sites(requests, in.costs, cfg.screening.min_project_capacity_mw);
    });
    b.curves = in_stage("curves", [&] { return group_curves(b.points); });
    return b;
}

void write_cf_csv(std::ostream& out, std::span<const CellCf> cells)
{
    CsvWriter w(out);
    w.header({"meteo_cell", "latitude", "utility_cf", "roof_small_cf", "roof_medium_cf", "roof_large_cf"});
    for (const auto& c : cells) {
        w.field(c.cell).field(c.latitude).field(c.utility_cf);
        for (const auto& r : c.roof_cf) {
            if (r) {
                w.field(*r);
            } else {
                w.field("");
            }
        }
        w.end_row();
    }
}

void write_screening_csv(std::ostream& out, std::span<const ScreenRecord> rows)
{
    CsvWriter w(out);
    w.header({"parcel_id", "region", "category", "outcome", "capacity_mw", "annual_cf"});
    for (const auto& r : rows) {
        w.field(r.parcel_id)
            .field(to_string(r.region))
            .field(to_string(r.category))
            .field(r.outcome)
            .field(r.capacity_mw)
            .field(r.annual_cf);
        w.end_row();
    }
}

std::vector<std::string> emit_plot_data(const CurveSet& curves, std::span<const AllocationResult> results,
                                        const TargetSet& targets, OutputSet& out)
{
    out.write("fig1_category_curves.csv", fig1(curves));
    out.write("fig2_region_curves.csv", fig2(curves));
    out.write("fig3_lcoe_ranges.csv", fig3(curves, targets));
    out.write("fig4_scenario_costs.csv", fig4(results));
    return {"fig1_category_curves.csv", "fig2_region_curves.csv", "fig3_lcoe_ranges.csv", "fig4_scenario_costs.csv"};
}

std::vector<AllocationResult> run_scenarios(const CurveSet& curves, std::span<const ScenarioSpec> scenarios,
                                            const TargetSet& targets, OutputSet& out)
{
    std::vector<AllocationResult> results;
    in_stage("allocate", [&] {
        for (const auto& s : scenarios) {
            results.push_back(allocate(curves, s));
        }
        out.write("allocations.csv", render([&](std::ostream& os) { write_allocations_csv(os, results); }));
    });
    in_stage("metrics", [&] {
        const auto rows = compare_scenarios(results);
        out.write("metrics.csv", render([&](std::ostream& os) { write_comparison_csv(os, rows); }));
    });
    in_stage("report", [&] { emit_plot_data(curves, results, targets, out); });
    return results;
}

std::vector<ManifestEntry> run_pipeline(const RunConfig& cfg, const std::filesystem::path& outdir)
{
    auto out = in_stage("output", [&] { return std::make_unique<OutputSet>(outdir); });
    const auto in = in_stage("load", [&] { return load_inputs(cfg); });
    const auto scenarios = in_stage("load", [&] { return load_scenarios(cfg.scenarios, in.targets); });
    const auto b = build_supply(in, cfg);
    in_stage("write", [&] {
        out->write("screening.csv", render([&](std::ostream& os) { write_screening_csv(os, b.screening); }));
        out->write("cf.csv", render([&](std::ostream& os) { write_cf_csv(os, b.cells); }));
        out->write("supply_points.csv", render([&](std::ostream& os) { write_supply_points_csv(os, b.points); }));
        out->write("curves.csv", render([&](std::ostream& os) { write_curves_csv(os, b.curves); }));
    });
    run_scenarios(b.curves, scenarios, in.targets, *out);
    return in_stage("write", [&] { return out->commit(); });
}

} // namespace solarsite
