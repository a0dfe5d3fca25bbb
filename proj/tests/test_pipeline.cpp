#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "solarsite/csv.hpp"
#include "solarsite/error.hpp"
#include "solarsite/pipeline.hpp"

using namespace solarsite;
namespace fs = std::filesystem;

namespace {

const fs::path fixture{SOLARSITE_FIXTURE};

fs::path scratch(const std::string& name)
{
    const auto p = fs::temp_directory_path() / ("solarsite_test_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

} // namespace

TEST_CASE("sha256 digest")
{
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("output set writes the manifest last and cleans up when not committed")
{
    const auto dir = scratch("outset");
    {
        OutputSet out(dir);
        out.write("a.txt", "alpha\n");
        CHECK(fs::exists(dir / "a.txt"));
        CHECK(!fs::exists(dir / "manifest.json"));
    }
    CHECK(!fs::exists(dir / "a.txt"));
    {
        OutputSet out(dir);
        out.write("a.txt", "alpha\n");
        const auto entries = out.commit();
        REQUIRE(entries.size() == 1);
        CHECK(entries[0].bytes == 6);
    }
    CHECK(fs::exists(dir / "a.txt"));
    const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
    CHECK(manifest["files"][0]["sha256"] == sha256_hex("alpha\n"));
    {
        OutputSet stale(dir);
        CHECK(!fs::exists(dir / "manifest.json"));
    }
    fs::remove_all(dir);
}

TEST_CASE("full fixture run is byte-deterministic")
{
    const auto cfg = load_run_config(fixture / "run.json");
    const auto d1 = scratch("run1");
    const auto d2 = scratch("run2");
    const auto m1 = run_pipeline(cfg, d1);
    const auto m2 = run_pipeline(cfg, d2);
    REQUIRE(m1.size() == m2.size());
    for (std::size_t i = 0; i < m1.size(); ++i) {
        CHECK(m1[i].file == m2[i].file);
        CHECK(m1[i].sha256 == m2[i].sha256);
        const auto content = slurp(d1 / m1[i].file);
        CHECK(content.size() == m1[i].bytes);
        CHECK(sha256_hex(content) == m1[i].sha256);
    }
    CHECK(slurp(d1 / "manifest.json") == slurp(d2 / "manifest.json"));

    // one row per scenario scope: 6 regions plus the whole interconnection
    const auto fig4 = slurp(d1 / "fig4_scenario_costs.csv");
    CHECK(lines(fig4) == 1 + cfg.scenarios.size() * 7);

    std::istringstream fig3(slurp(d1 / "fig3_lcoe_ranges.csv"));
    std::string line;
    std::getline(fig3, line);
    const auto header = split_fields(line);
    const auto col = [&](std::string_view name) {
        return static_cast<std::size_t>(std::find(header.begin(), header.end(), name) - header.begin());
    };
    std::size_t rows = 0;
    while (std::getline(fig3, line)) {
        const auto f = split_fields(line);
        CHECK(std::stod(f.at(col("min_lcoe_usd_per_mwh"))) <= std::stod(f.at(col("max_lcoe_usd_per_mwh"))));
        ++rows;
    }
    CHECK(rows > 0);

    const auto screening = slurp(d1 / "screening.csv");
    CHECK(screening.find("pj-forest-steep,PJM,forest,slope,") != std::string::npos);
    CHECK(screening.find("sp-shrubland-protected,SPP,shrubland,protected,") != std::string::npos);

    fs::remove_all(d1);
    fs::remove_all(d2);
}

TEST_CASE("figure files for an empty curve set carry headers only")
{
    const auto dir = scratch("empty");
    OutputSet out(dir);
    TargetSet t;
    const auto files = emit_plot_data({}, {}, t, out);
    CHECK(files.size() == 4);
    for (const auto& f : files) {
        CHECK(lines(slurp(dir / f)) == 1);
    }
    out.discard();
    fs::remove_all(dir);
}

TEST_CASE("failed runs leave no outputs")
{
    const auto dir = scratch("strict");
    const auto cfg = load_run_config(fixture / "run_strict.json");
    try {
        run_pipeline(cfg, dir);
        FAIL("strict run should be infeasible");
    } catch (const StageError& e) {
        CHECK(e.kind() == ErrorKind::infeasible);
        CHECK(e.stage() == "allocate");
    }
    CHECK(fs::is_empty(dir));

    auto broken = load_run_config(fixture / "run.json");
    broken.targets = fixture / "no_such_targets.json";
    try {
        run_pipeline(broken, dir);
        FAIL("missing targets should fail");
    } catch (const StageError& e) {
        CHECK(e.kind() == ErrorKind::config);
    }
    CHECK(fs::is_empty(dir));
    fs::remove_all(dir);
}

TEST_CASE("scenario targets resolution")
{
    const fs::path files[] = {fixture / "scenarios" / "min_lcoe_regional.json",
                              fixture / "scenarios" / "min_lcoe_regional.json"};
    TargetSet t = load_targets(fixture / "targets.json");
    CHECK_THROWS_AS(load_scenarios(files, t), ConfigError);
    const auto one = load_scenarios(std::span(files, 1), t);
    REQUIRE(one.size() == 1);
    CHECK(one[0].targets == t);
}
