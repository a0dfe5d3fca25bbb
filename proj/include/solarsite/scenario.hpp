#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "solarsite/domain.hpp"
#include "solarsite/supply_curve.hpp"

namespace solarsite {

enum class Scheme : std::uint8_t { min_lcoe, contaminated_first, greenfield_first, rooftop_first };
// Second tier of contaminated_first.
enum class Fallback : std::uint8_t { greenfield, rooftop };
enum class Mode : std::uint8_t { ei_wide, regional };

std::string_view to_string(Scheme s) noexcept;
std::string_view to_string(Fallback f) noexcept;
std::string_view to_string(Mode m) noexcept;
std::optional<Scheme> parse_scheme(std::string_view s) noexcept;
std::optional<Fallback> parse_fallback(std::string_view s) noexcept;
std::optional<Mode> parse_mode(std::string_view s) noexcept;

using Tier = std::vector<Category>;

// Ordered category tiers; together they partition all 13 categories.
std::vector<Tier> scheme_order(Scheme scheme, Fallback fallback = Fallback::greenfield);

struct ScenarioSpec {
    std::string name;
    Scheme scheme = Scheme::min_lcoe;
    Fallback fallback = Fallback::greenfield;
    Mode mode = Mode::regional;
    TargetSet targets;
    // Strict scenarios may only use the first tier and fail when it runs out.
    bool strict = false;
    // Optional within-tier precedence: listed categories are filled one at a
    // time in this order before the rest of their tier.
    std::vector<Category> sub_order;
};

struct Allocation {
    SupplyPoint point;
    double allocated_mw = 0.0;
    std::size_t tier = 0;
};

struct AllocationResult {
    std::string scenario;
    Mode mode = Mode::regional;
    TargetSet targets;
    std::vector<Allocation> allocations; // positive allocations in fill order
    // Shortfall per region in regional mode; only the total is meaningful in ei_wide mode.
    std::array<double, 6> shortfall_by_region_mw{};
    double shortfall_mw = 0.0;
};

// Greedy fill by ascending LCOE, tier by tier. Throws InfeasibleError for a
// strict scenario whose first tier cannot meet a target.
AllocationResult allocate(const CurveSet& curves, const ScenarioSpec& spec);

struct Summary {
    double allocated_mw = 0.0;
    std::optional<double> average_lcoe_usd_per_mwh; // unset when nothing is allocated
    double investment_usd = 0.0;
    double annual_cost_usd = 0.0; // allocated energy priced at its LCOE
};

struct ScenarioMetrics {
    Summary total;
    std::array<Summary, 6> by_region{};
    std::array<double, category_count> allocated_by_category_mw{};
};

ScenarioMetrics metrics(std::span<const Allocation> allocations);
ScenarioMetrics metrics(const AllocationResult& r);

struct ComparisonRow {
    std::string scenario;
    Mode mode = Mode::regional;
    Summary total;
    double shortfall_mw = 0.0;
    std::array<double, category_count> allocated_by_category_mw{};
    bool least_cost = false;
    bool highest_cost = false;
};

// One row per result, marking the lowest and highest average LCOE. Throws
// ValidationError when results were run against different targets.
std::vector<ComparisonRow> compare_scenarios(std::span<const AllocationResult> results);

// scenario,region,category,parcel_id,allocated_mw,lcoe_usd_per_mwh
void write_allocations_csv(std::ostream& out, std::span<const AllocationResult> results);

// The compare_scenarios table, one row per scenario with per-category capacity columns.
void write_comparison_csv(std::ostream& out, std::span<const ComparisonRow> rows);

} // namespace solarsite
