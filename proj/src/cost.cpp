#include "solarsite/cost.hpp"

#include <cmath>

#include "solarsite/capacity.hpp"
#include "solarsite/error.hpp"
#include "solarsite/format.hpp"
#include "solarsite/kernels.hpp"

namespace solarsite {

namespace {

constexpr double mwh_per_kw_year = 8.76;

struct Priced {
    double capex;
    double fom;
    double adder;
};

Priced price_inputs(const Parcel& p, double capacity_mw, double annual_cf, const CostParams& c,
                    double min_project_mw)
{
    if (!(capacity_mw > 0.0)) {
        throw DomainError("site '" + p.id + "': capacity must be > 0 MW");
    }
    if (!(annual_cf > 0.0)) {
        throw ZeroGenerationError("site '" + p.id + "' has zero annual generation; LCOE is undefined");
    }
    const auto tech = technology_for(p.category);
    std::optional<std::size_t> bin;
    if (is_ground(p.category)) {
        const auto decision = capacity_bin(capacity_mw, min_project_mw);
        if (decision.below_min_scale()) {
            throw DomainError("site '" + p.id + "': " + format_number(capacity_mw) +
                              " MW is below the minimum project scale");
        }
        bin = decision.bin;
    }
    return {adjusted_capex(c.capex(tech), p.category, bin, c), c.fom(tech),
            transmission_adder(p.tx_multiplier, c, p.category)};
}

} // namespace

std::string_view to_string(Technology t) noexcept
{
    switch (t) {
    case Technology::utility: return "utility";
    case Technology::commercial_roof: return "commercial_roof";
    case Technology::residential_roof: return "residential_roof";
    }
    return "?";
}

Technology technology_for(Category c) noexcept
{
    switch (c) {
    case Category::roof_small: return Technology::residential_roof;
    case Category::roof_medium:
    case Category::roof_large: return Technology::commercial_roof;
    default: return Technology::utility;
    }
}

void validate(const CostParams& c)
{
    for (std::size_t t = 0; t < 3; ++t) {
        if (!(c.capex_usd_per_kw[t] >= 0.0) || !(c.fom_usd_per_kw_yr[t] >= 0.0)) {
            throw ConfigError("CAPEX and FOM must be >= 0");
        }
    }
    if (!(c.brownfield_premium >= 1.0)) {
        throw ConfigError("brownfield_premium must be >= 1");
    }
    for (const auto& m : c.bin_multipliers) {
        if (m && !(*m > 0.0)) {
            throw ConfigError("bin multipliers must be > 0");
        }
    }
    if (!(c.national_avg_lcot_usd_per_mwh >= 0.0)) {
        throw ConfigError("national_avg_lcot_usd_per_mwh must be >= 0");
    }
    if (!(c.finance.discount_rate >= 0.0) || c.finance.lifetime_years < 1) {
        throw ConfigError("discount_rate must be >= 0 and lifetime_years >= 1");
    }
}

double crf(double rate, int lifetime_years)
{
    if (!(rate >= 0.0) || lifetime_years < 1) {
        throw DomainError("crf requires rate >= 0 and lifetime >= 1");
    }
    const double n = lifetime_years;
    if (rate == 0.0) {
        return 1.0 / n;
    }
    // (1+r)^n - 1 via expm1/log1p keeps precision as r -> 0
    const double growth_minus_one = std::expm1(n * std::log1p(rate));
    return rate * (growth_minus_one + 1.0) / growth_minus_one;
}

double crf(const FinanceParams& f) { return crf(f.discount_rate, f.lifetime_years); }

double adjusted_capex(double base_usd_per_kw, Category category, std::optional<std::size_t> bin, const CostParams& c)
{
    if (is_rooftop(category)) {
        return base_usd_per_kw;
    }
    if (!bin || *bin >= c.bin_multipliers.size()) {
        throw DomainError("ground category " + std::string(to_string(category)) + " needs a capacity bin");
    }
    const auto& multiplier = c.bin_multipliers[*bin];
    if (!multiplier) {
        throw ConfigError("no CAPEX multiplier configured for bin '" + std::string(capacity_bins[*bin].label) + "'");
    }
    const double premium = is_contaminated(category) ? c.brownfield_premium : 1.0;
    return base_usd_per_kw * *multiplier * premium;
}

double transmission_adder(double tx_multiplier, const CostParams& c, Category category)
{
    if (is_rooftop(category)) {
        return 0.0;
    }
    if (!(tx_multiplier > 0.0)) {
        throw DomainError("transmission multiplier must be > 0");
    }
    return tx_multiplier * c.national_avg_lcot_usd_per_mwh;
}

double lcoe(double capex_usd_per_kw, double crf, double fom_usd_per_kw_yr, double annual_cf, double adder_usd_per_mwh)
{
    if (!(annual_cf > 0.0)) {
        throw ZeroGenerationError("annual capacity factor is zero; LCOE is undefined");
    }
    return (capex_usd_per_kw * crf + fom_usd_per_kw_yr) / (annual_cf * mwh_per_kw_year) + adder_usd_per_mwh;
}

SupplyPoint site_lcoe(const Parcel& p, double capacity_mw, double annual_cf, const CostParams& c,
                      double min_project_mw)
{
    const auto in = price_inputs(p, capacity_mw, annual_cf, c, min_project_mw);
    SupplyPoint sp;
    sp.parcel_id = p.id;
    sp.region = p.region;
    sp.category = p.category;
    sp.capacity_mw = capacity_mw;
    sp.annual_cf = annual_cf;
    sp.adjusted_capex_usd_per_kw = in.capex;
    sp.lcoe_usd_per_mwh = lcoe(in.capex, crf(c.finance), in.fom, annual_cf, in.adder);
    return sp;
}

std::vector<SupplyPoint> price_sites(std::span<const SiteRequest> requests, const CostParams& c,
                                     double min_project_mw)
{
    const std::size_t n = requests.size();
    std::vector<double> capex(n), fom(n), cf(n), adder(n), out(n);
    std::vector<SupplyPoint> points(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& r = requests[i];
        if (r.parcel == nullptr) {
            throw DomainError("site request without a parcel");
        }
        const auto in = price_inputs(*r.parcel, r.capacity_mw, r.annual_cf, c, min_project_mw);
        capex[i] = in.capex;
        fom[i] = in.fom;
        cf[i] = r.annual_cf;
        adder[i] = in.adder;
        auto& sp = points[i];
        sp.parcel_id = r.point_id.empty() ? r.parcel->id : r.point_id;
        sp.region = r.parcel->region;
        sp.category = r.parcel->category;
        sp.capacity_mw = r.capacity_mw;
        sp.annual_cf = r.annual_cf;
        sp.adjusted_capex_usd_per_kw = in.capex;
    }
    kernels::lcoe_batch({capex, fom, cf, adder, crf(c.finance)}, out);
    for (std::size_t i = 0; i < n; ++i) {
        points[i].lcoe_usd_per_mwh = out[i];
    }
    return points;
}

} // namespace solarsite
