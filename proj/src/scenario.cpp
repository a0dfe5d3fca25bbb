#include "solarsite/scenario.hpp"

#include <algorithm>
#include <ostream>

#include "solarsite/csv.hpp"
#include "solarsite/error.hpp"

namespace solarsite {

namespace {

constexpr double kw_per_mw = 1000.0;
constexpr double hours_per_year_d = 8760.0;

Tier categories_in(LandGroup g)
{
    Tier t;
    for (const auto c : all_categories) {
        if (group_of(c) == g) {
            t.push_back(c);
        }
    }
    return t;
}

Tier categories_not_in(LandGroup g)
{
    Tier t;
    for (const auto c : all_categories) {
        if (group_of(c) != g) {
            t.push_back(c);
        }
    }
    return t;
}

// A fill step: a set of categories merged into one curve, tagged with its tier.
struct Step {
    Tier categories;
    std::size_t tier;
};

std::vector<Step> fill_steps(const ScenarioSpec& spec)
{
    const auto tiers = scheme_order(spec.scheme, spec.fallback);
    std::vector<Step> steps;
    for (std::size_t k = 0; k < tiers.size(); ++k) {
        Tier rest = tiers[k];
        for (const auto c : spec.sub_order) {
            const auto it = std::find(rest.begin(), rest.end(), c);
            if (it != rest.end()) {
                steps.push_back({{c}, k});
                rest.erase(it);
            }
        }
        if (!rest.empty()) {
            steps.push_back({std::move(rest), k});
        }
    }
    return steps;
}

// Fills `target_mw` from the given regions. Returns the unmet remainder.
double fill_scope(const CurveSet& curves, std::span<const Region> regions, double target_mw,
                  const std::vector<Step>& steps, bool strict, const std::string& scope, AllocationResult& out)
{
    double remaining = target_mw;
    for (const auto& step : steps) {
        if (remaining <= 0.0) {
            break;
        }
        if (strict && step.tier > 0) {
            throw InfeasibleError(scope, remaining);
        }
        std::vector<const SupplyCurve*> parts;
        for (const auto r : regions) {
            for (const auto c : step.categories) {
                if (const auto it = curves.find({r, c}); it != curves.end()) {
                    parts.push_back(&it->second);
                }
            }
        }
        const auto merged = merge_curves(std::span<const SupplyCurve* const>(parts));
        for (const auto& p : merged.points()) {
            if (remaining <= 0.0) {
                break;
            }
            double take = p.capacity_mw;
            if (take >= remaining) {
                take = remaining;
                remaining = 0.0;
            } else {
                remaining -= take;
            }
            out.allocations.push_back({p, take, step.tier});
        }
    }
    if (remaining > 0.0 && strict) {
        throw InfeasibleError(scope, remaining);
    }
    return remaining;
}

void accumulate(Summary& s, const Allocation& a)
{
    s.allocated_mw += a.allocated_mw;
    s.investment_usd += a.allocated_mw * kw_per_mw * a.point.adjusted_capex_usd_per_kw;
    s.annual_cost_usd += a.allocated_mw * a.point.annual_cf * hours_per_year_d * a.point.lcoe_usd_per_mwh;
}

} // namespace

std::string_view to_string(Scheme s) noexcept
{
    switch (s) {
    case Scheme::min_lcoe: return "min_lcoe";
    case Scheme::contaminated_first: return "contaminated_first";
    case Scheme::greenfield_first: return "greenfield_first";
    case Scheme::rooftop_first: return "rooftop_first";
    }
    return "?";
}

std::string_view to_string(Fallback f) noexcept { return f == Fallback::greenfield ? "greenfield" : "rooftop"; }
std::string_view to_string(Mode m) noexcept { return m == Mode::ei_wide ? "ei_wide" : "regional"; }

std::optional<Scheme> parse_scheme(std::string_view s) noexcept
{
    for (const auto v : {Scheme::min_lcoe, Scheme::contaminated_first, Scheme::greenfield_first, Scheme::rooftop_first}) {
        if (to_string(v) == s) {
            return v;
        }
    }
    return std::nullopt;
}

std::optional<Fallback> parse_fallback(std::string_view s) noexcept
{
    if (s == "greenfield") {
        return Fallback::greenfield;
    }
    if (s == "rooftop") {
        return Fallback::rooftop;
    }
    return std::nullopt;
}

std::optional<Mode> parse_mode(std::string_view s) noexcept
{
    if (s == "ei_wide") {
        return Mode::ei_wide;
    }
    if (s == "regional") {
        return Mode::regional;
    }
    return std::nullopt;
}

std::vector<Tier> scheme_order(Scheme scheme, Fallback fallback)
{
    switch (scheme) {
    case Scheme::min_lcoe: return {Tier(all_categories.begin(), all_categories.end())};
    case Scheme::contaminated_first: {
        const auto second = fallback == Fallback::greenfield ? LandGroup::greenfield : LandGroup::rooftop;
        const auto third = fallback == Fallback::greenfield ? LandGroup::rooftop : LandGroup::greenfield;
        return {categories_in(LandGroup::contaminated), categories_in(second), categories_in(third)};
    }
    case Scheme::greenfield_first:
        return {categories_in(LandGroup::greenfield), categories_not_in(LandGroup::greenfield)};
    case Scheme::rooftop_first: return {categories_in(LandGroup::rooftop), categories_not_in(LandGroup::rooftop)};
    }
    return {};
}

AllocationResult allocate(const CurveSet& curves, const ScenarioSpec& spec)
{
    validate_targets(spec.targets);
    AllocationResult out;
    out.scenario = spec.name;
    out.mode = spec.mode;
    out.targets = spec.targets;
    const auto steps = fill_steps(spec);

    if (spec.mode == Mode::ei_wide) {
        out.shortfall_mw = fill_scope(curves, all_regions, static_cast<double>(spec.targets.total_mw), steps,
                                      spec.strict, "EI", out);
        return out;
    }
    for (const auto r : all_regions) {
        const Region one[] = {r};
        const double rest = fill_scope(curves, one, static_cast<double>(spec.targets.region_mw(r)), steps,
                                       spec.strict, std::string(to_string(r)), out);
        out.shortfall_by_region_mw[static_cast<std::size_t>(r)] = rest;
        out.shortfall_mw += rest;
    }
    return out;
}

ScenarioMetrics metrics(std::span<const Allocation> allocations)
{
    ScenarioMetrics m;
    std::array<double, 6> weighted_by_region{};
    double weighted = 0.0;
    for (const auto& a : allocations) {
        accumulate(m.total, a);
        const auto r = static_cast<std::size_t>(a.point.region);
        accumulate(m.by_region[r], a);
        weighted += a.allocated_mw * a.point.lcoe_usd_per_mwh;
        weighted_by_region[r] += a.allocated_mw * a.point.lcoe_usd_per_mwh;
        m.allocated_by_category_mw[static_cast<std::size_t>(a.point.category)] += a.allocated_mw;
    }
    if (m.total.allocated_mw > 0.0) {
        m.total.average_lcoe_usd_per_mwh = weighted / m.total.allocated_mw;
    }
    for (std::size_t r = 0; r < m.by_region.size(); ++r) {
        if (m.by_region[r].allocated_mw > 0.0) {
            m.by_region[r].average_lcoe_usd_per_mwh = weighted_by_region[r] / m.by_region[r].allocated_mw;
        }
    }
    return m;
}

ScenarioMetrics metrics(const AllocationResult& r) { return metrics(std::span<const Allocation>(r.allocations)); }

std::vector<ComparisonRow> compare_scenarios(std::span<const AllocationResult> results)
{
    std::vector<ComparisonRow> rows;
    for (const auto& r : results) {
        if (!(r.targets == results.front().targets)) {
            throw ValidationError("scenario '" + r.scenario + "' was run against different targets");
        }
        const auto m = metrics(r);
        ComparisonRow row;
        row.scenario = r.scenario;
        row.mode = r.mode;
        row.total = m.total;
        row.shortfall_mw = r.shortfall_mw;
        row.allocated_by_category_mw = m.allocated_by_category_mw;
        rows.push_back(std::move(row));
    }
    ComparisonRow* lo = nullptr;
    ComparisonRow* hi = nullptr;
    for (auto& row : rows) {
        const auto& avg = row.total.average_lcoe_usd_per_mwh;
        if (!avg) {
            continue;
        }
        if (lo == nullptr || *avg < *lo->total.average_lcoe_usd_per_mwh) {
            lo = &row;
        }
        if (hi == nullptr || *avg > *hi->total.average_lcoe_usd_per_mwh) {
            hi = &row;
        }
    }
    if (lo != nullptr) {
        lo->least_cost = true;
        hi->highest_cost = true;
    }
    return rows;
}

void write_allocations_csv(std::ostream& out, std::span<const AllocationResult> results)
{
    CsvWriter w(out);
    w.header({"scenario", "region", "category", "parcel_id", "allocated_mw", "lcoe_usd_per_mwh"});
    for (const auto& r : results) {
        for (const auto& a : r.allocations) {
            w.field(r.scenario)
                .field(to_string(a.point.region))
                .field(to_string(a.point.category))
                .field(a.point.parcel_id)
                .field(a.allocated_mw)
                .field(a.point.lcoe_usd_per_mwh);
            w.end_row();
        }
    }
}

void write_comparison_csv(std::ostream& out, std::span<const ComparisonRow> rows)
{
    CsvWriter w(out);
    w.field("scenario").field("mode").field("allocated_mw").field("shortfall_mw").field("average_lcoe_usd_per_mwh");
    w.field("investment_usd").field("annual_cost_usd").field("least_cost").field("highest_cost");
    for (const auto c : all_categories) {
        w.field("mw_" + std::string(to_string(c)));
    }
    w.end_row();
    for (const auto& row : rows) {
        w.field(row.scenario).field(to_string(row.mode)).field(row.total.allocated_mw).field(row.shortfall_mw);
        if (row.total.average_lcoe_usd_per_mwh) {
            w.field(*row.total.average_lcoe_usd_per_mwh);
        } else {
            w.field("");
        }
        w.field(row.total.investment_usd).field(row.total.annual_cost_usd);
        w.field(row.least_cost ? "1" : "0").field(row.highest_cost ? "1" : "0");
        for (const double mw : row.allocated_by_category_mw) {
            w.field(mw);
        }
        w.end_row();
    }
}

} // namespace solarsite
