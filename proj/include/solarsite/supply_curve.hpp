#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "solarsite/cost.hpp"

namespace solarsite {

// Supply points sorted by (lcoe, parcel id) with a running capacity total.
// Points are divisible: a query may take part of a point.
class SupplyCurve {
public:
    SupplyCurve() = default;

    std::span<const SupplyPoint> points() const noexcept { return points_; }
    // cumulative_mw()[i] is the capacity of points 0..i inclusive.
    std::span<const double> cumulative_mw() const noexcept { return cumulative_; }
    double total_mw() const noexcept { return cumulative_.empty() ? 0.0 : cumulative_.back(); }
    bool empty() const noexcept { return points_.empty(); }
    std::size_t size() const noexcept { return points_.size(); }

    friend SupplyCurve build_curve(std::vector<SupplyPoint> points);

private:
    std::vector<SupplyPoint> points_;
    std::vector<double> cumulative_;
};

// Stable sort by (lcoe, parcel id) and prefix sums in that order. Throws
// ValidationError for non-positive capacities.
SupplyCurve build_curve(std::vector<SupplyPoint> points);

// Union of all points, rebuilt. Throws ValidationError on a parcel id present in
// more than one input.
SupplyCurve merge_curves(std::span<const SupplyCurve> curves);
SupplyCurve merge_curves(std::span<const SupplyCurve* const> curves);

// Total capacity of points with lcoe <= price.
double capacity_below_price(const SupplyCurve& curve, double price_usd_per_mwh);

struct CostAtCapacity {
    double marginal_usd_per_mwh = 0.0;
    double average_usd_per_mwh = 0.0;
};

// Marginal and capacity-weighted average LCOE of the first q MW.
// Throws DomainError for q <= 0, InsufficientPotentialError for q > total.
CostAtCapacity cost_at_capacity(const SupplyCurve& curve, double q_mw);

using CurveKey = std::pair<Region, Category>;
using CurveSet = std::map<CurveKey, SupplyCurve>;

// One curve per (region, category) that has points.
CurveSet group_curves(std::span<const SupplyPoint> points);

// region,category,parcel_id,capacity_mw,lcoe_usd_per_mwh,cum_capacity_mw
void write_curves_csv(std::ostream& out, const CurveSet& curves);

// supply_points.csv: every SupplyPoint field, for re-use by later CLI verbs.
void write_supply_points_csv(std::ostream& out, std::span<const SupplyPoint> points);
std::vector<SupplyPoint> read_supply_points(std::istream& in, const std::string& source);
std::vector<SupplyPoint> load_supply_points(const std::filesystem::path& path);

} // namespace solarsite
