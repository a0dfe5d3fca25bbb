#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "solarsite/domain.hpp"

namespace solarsite {

enum class Technology : std::uint8_t { utility, commercial_roof, residential_roof };

std::string_view to_string(Technology t) noexcept;

// Small roofs follow residential costs, medium and large roofs commercial costs.
Technology technology_for(Category c) noexcept;

struct FinanceParams {
    double discount_rate = 0.05;
    int lifetime_years = 30;
};

struct CostParams {
    std::array<double, 3> capex_usd_per_kw{};   // indexed by Technology
    std::array<double, 3> fom_usd_per_kw_yr{};  // indexed by Technology
    double brownfield_premium = 1.30;           // applied to every contaminated category
    std::array<std::optional<double>, 4> bin_multipliers{}; // indexed like capacity_bins
    double national_avg_lcot_usd_per_mwh = 0.0;
    FinanceParams finance;

    double capex(Technology t) const noexcept { return capex_usd_per_kw[static_cast<std::size_t>(t)]; }
    double fom(Technology t) const noexcept { return fom_usd_per_kw_yr[static_cast<std::size_t>(t)]; }
};

void validate(const CostParams& c);

// Capital recovery factor r(1+r)^n / ((1+r)^n - 1), or 1/n at r = 0.
double crf(double rate, int lifetime_years);
double crf(const FinanceParams& f);

// Ground categories: base x bin multiplier x (premium if contaminated).
// Rooftop categories ignore the bin and use the base as given.
// Throws ConfigError when a ground category's bin has no multiplier.
double adjusted_capex(double base_usd_per_kw, Category category, std::optional<std::size_t> bin, const CostParams& c);

// Transmission interconnection adder in $/MWh; zero for rooftops.
double transmission_adder(double tx_multiplier, const CostParams& c, Category category);

// (capex * crf + fom) / (cf * 8.76 MWh/kW-yr) + adder, in $/MWh.
// Throws ZeroGenerationError when annual_cf <= 0.
double lcoe(double capex_usd_per_kw, double crf, double fom_usd_per_kw_yr, double annual_cf, double adder_usd_per_mwh);

struct SupplyPoint {
    std::string parcel_id;
    Region region = Region::iso_ne;
    Category category = Category::prime_agriculture;
    double capacity_mw = 0.0;
    double annual_cf = 0.0;
    double lcoe_usd_per_mwh = 0.0;
    double adjusted_capex_usd_per_kw = 0.0;

    friend bool operator==(const SupplyPoint&, const SupplyPoint&) = default;
};

// Prices one screened site. Ground sites are binned by capacity (which must be
// at least min_project_mw and at most 700 MW); rooftops bypass bins and the adder.
SupplyPoint site_lcoe(const Parcel& p, double capacity_mw, double annual_cf, const CostParams& c,
                      double min_project_mw = 1.0);

struct SiteRequest {
    const Parcel* parcel = nullptr;
    std::string point_id; // parcel id, or a chunk id for split parcels
    double capacity_mw = 0.0;
    double annual_cf = 0.0;
};

// Bulk form of site_lcoe over the vectorized LCOE kernel; results are
// identical to calling site_lcoe per request.
std::vector<SupplyPoint> price_sites(std::span<const SiteRequest> requests, const CostParams& c,
                                     double min_project_mw = 1.0);

} // namespace solarsite
