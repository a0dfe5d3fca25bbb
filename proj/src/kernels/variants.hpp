#pragma once

#include "solarsite/kernels.hpp"

namespace solarsite::kernels::detail {

inline constexpr double mwh_per_kw_year = 8.76;

void hourly_cf_scalar(const HourlyCfInputs& in, const HourlyCfParams& p, std::span<double> out);
void lcoe_batch_scalar(const LcoeInputs& in, std::span<double> out);

#if defined(SOLARSITE_HAVE_AVX2)
void hourly_cf_avx2(const HourlyCfInputs& in, const HourlyCfParams& p, std::span<double> out);
void lcoe_batch_avx2(const LcoeInputs& in, std::span<double> out);
#endif

#if defined(SOLARSITE_HAVE_NEON)
void hourly_cf_neon(const HourlyCfInputs& in, const HourlyCfParams& p, std::span<double> out);
void lcoe_batch_neon(const LcoeInputs& in, std::span<double> out);
#endif

// Single-element reference used for tails by every variant. Internal linkage
// keeps the -mavx2 copy from being merged with the baseline one.
namespace {

inline double hourly_cf_one(double ghi, double dni, double dhi, double t_amb, double beam, double diffuse,
                            double ground, const HourlyCfParams& p)
{
    double poa = dni * beam + dhi * diffuse + ghi * ground;
    poa = poa > 0.0 ? poa : 0.0;
    const double t_cell = t_amb + poa * p.temp_rise_per_wm2;
    const double derate = 1.0 + p.temp_coeff_per_c * (t_cell - 25.0);
    double cf = poa / 1000.0 * derate * p.loss_factor;
    cf = cf < 1.0 ? cf : 1.0;
    return cf > 0.0 ? cf : 0.0;
}

inline double lcoe_one(double capex, double fom, double cf, double adder, double crf)
{
    return (capex * crf + fom) / (cf * mwh_per_kw_year) + adder;
}

} // namespace

} // namespace solarsite::kernels::detail
