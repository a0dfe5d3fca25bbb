#include "solarsite/supply_curve.hpp"

#include <algorithm>
#include <istream>
#include <set>

#include "solarsite/csv.hpp"
#include "solarsite/error.hpp"
#include "solarsite/format.hpp"

namespace solarsite {

SupplyCurve build_curve(std::vector<SupplyPoint> points)
{
    for (const auto& p : points) {
        if (!(p.capacity_mw > 0.0)) {
            throw ValidationError("supply point '" + p.parcel_id + "' has non-positive capacity");
        }
    }
    std::stable_sort(points.begin(), points.end(), [](const SupplyPoint& a, const SupplyPoint& b) {
        if (a.lcoe_usd_per_mwh != b.lcoe_usd_per_mwh) {
            return a.lcoe_usd_per_mwh < b.lcoe_usd_per_mwh;
        }
        return a.parcel_id < b.parcel_id;
    });
    SupplyCurve curve;
    curve.cumulative_.reserve(points.size());
    double running = 0.0;
    for (const auto& p : points) {
        running += p.capacity_mw;
        curve.cumulative_.push_back(running);
    }
    curve.points_ = std::move(points);
    return curve;
}

SupplyCurve merge_curves(std::span<const SupplyCurve* const> curves)
{
    std::size_t n = 0;
    for (const auto* c : curves) {
        n += c->size();
    }
    std::vector<SupplyPoint> all;
    all.reserve(n);
    std::set<std::string_view> ids;
    for (const auto* c : curves) {
        for (const auto& p : c->points()) {
            if (!ids.insert(p.parcel_id).second) {
                throw ValidationError("parcel id '" + p.parcel_id + "' appears in more than one curve");
            }
            all.push_back(p);
        }
    }
    return build_curve(std::move(all));
}

SupplyCurve merge_curves(std::span<const SupplyCurve> curves)
{
    std::vector<const SupplyCurve*> ptrs;
    ptrs.reserve(curves.size());
    for (const auto& c : curves) {
        ptrs.push_back(&c);
    }
    return merge_curves(std::span<const SupplyCurve* const>(ptrs));
}

double capacity_below_price(const SupplyCurve& curve, double price_usd_per_mwh)
{
    const auto pts = curve.points();
    const auto it = std::upper_bound(pts.begin(), pts.end(), price_usd_per_mwh,
                                     [](double price, const SupplyPoint& p) { return price < p.lcoe_usd_per_mwh; });
    const auto count = static_cast<std::size_t>(it - pts.begin());
    return count == 0 ? 0.0 : curve.cumulative_mw()[count - 1];
}

CostAtCapacity cost_at_capacity(const SupplyCurve& curve, double q_mw)
{
    if (!(q_mw > 0.0)) {
        throw DomainError("cost_at_capacity needs q > 0 MW");
    }
    if (q_mw > curve.total_mw()) {
        throw InsufficientPotentialError(q_mw, curve.total_mw());
    }
    const auto cum = curve.cumulative_mw();
    const auto idx = static_cast<std::size_t>(std::lower_bound(cum.begin(), cum.end(), q_mw) - cum.begin());
    const auto pts = curve.points();
    const double marginal = pts[idx].lcoe_usd_per_mwh;
    // average = marginal - (sum over fully taken points of cap * (marginal - lcoe)) / q;
    // every term is >= 0, so average <= marginal survives rounding.
    double deficit = 0.0;
    for (std::size_t j = 0; j < idx; ++j) {
        deficit += pts[j].capacity_mw * (marginal - pts[j].lcoe_usd_per_mwh);
    }
    return {marginal, marginal - deficit / q_mw};
}

CurveSet group_curves(std::span<const SupplyPoint> points)
{
    std::map<CurveKey, std::vector<SupplyPoint>> buckets;
    for (const auto& p : points) {
        buckets[{p.region, p.category}].push_back(p);
    }
    CurveSet out;
    for (auto& [key, pts] : buckets) {
        out.emplace(key, build_curve(std::move(pts)));
    }
    return out;
}

void write_curves_csv(std::ostream& out, const CurveSet& curves)
{
    CsvWriter w(out);
    w.header({"region", "category", "parcel_id", "capacity_mw", "lcoe_usd_per_mwh", "cum_capacity_mw"});
    for (const auto& [key, curve] : curves) {
        const auto pts = curve.points();
        const auto cum = curve.cumulative_mw();
        for (std::size_t i = 0; i < pts.size(); ++i) {
            w.field(to_string(key.first))
                .field(to_string(key.second))
                .field(pts[i].parcel_id)
                .field(pts[i].capacity_mw)
                .field(pts[i].lcoe_usd_per_mwh)
                .field(cum[i]);
            w.end_row();
        }
    }
}

void write_supply_points_csv(std::ostream& out, std::span<const SupplyPoint> points)
{
    CsvWriter w(out);
    w.header({"parcel_id", "region", "category", "capacity_mw", "annual_cf", "lcoe_usd_per_mwh",
              "adjusted_capex_usd_per_kw"});
    for (const auto& p : points) {
        w.field(p.parcel_id)
            .field(to_string(p.region))
            .field(to_string(p.category))
            .field(p.capacity_mw)
            .field(p.annual_cf)
            .field(p.lcoe_usd_per_mwh)
            .field(p.adjusted_capex_usd_per_kw);
        w.end_row();
    }
}

std::vector<SupplyPoint> read_supply_points(std::istream& in, const std::string& source)
{
    CsvReader reader(in, source);
    reader.expect_header({"parcel_id", "region", "category", "capacity_mw", "annual_cf", "lcoe_usd_per_mwh",
                          "adjusted_capex_usd_per_kw"});
    std::vector<SupplyPoint> points;
    std::vector<std::string> f;
    while (reader.next(f)) {
        SupplyPoint p;
        p.parcel_id = f[0];
        const auto region = parse_region(f[1]);
        const auto category = parse_category(f[2]);
        if (!region || !category) {
            reader.fail("unknown region or category");
        }
        p.region = *region;
        p.category = *category;
        double* targets[] = {&p.capacity_mw, &p.annual_cf, &p.lcoe_usd_per_mwh, &p.adjusted_capex_usd_per_kw};
        for (std::size_t k = 0; k < 4; ++k) {
            const auto v = parse_double(f[3 + k]);
            if (!v) {
                reader.fail("non-numeric field '" + f[3 + k] + "'");
            }
            *targets[k] = *v;
        }
        if (!(p.capacity_mw > 0.0)) {
            reader.fail("capacity_mw must be > 0");
        }
        points.push_back(std::move(p));
    }
    return points;
}

std::vector<SupplyPoint> load_supply_points(const std::filesystem::path& path)
{
    auto in = open_input(path);
    return read_supply_points(in, path.string());
}

} // namespace solarsite
