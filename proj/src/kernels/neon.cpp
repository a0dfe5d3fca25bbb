// AArch64 only; Advanced SIMD is part of the base architecture there.
#include "variants.hpp"

#include <arm_neon.h>

namespace solarsite::kernels::detail {

void hourly_cf_neon(const HourlyCfInputs& in, const HourlyCfParams& p, std::span<double> out)
{
    const std::size_t n = out.size();
    const float64x2_t zero = vdupq_n_f64(0.0);
    const float64x2_t one = vdupq_n_f64(1.0);
    const float64x2_t thousand = vdupq_n_f64(1000.0);
    const float64x2_t stc_temp = vdupq_n_f64(25.0);
    const float64x2_t rise = vdupq_n_f64(p.temp_rise_per_wm2);
    const float64x2_t coeff = vdupq_n_f64(p.temp_coeff_per_c);
    const float64x2_t loss = vdupq_n_f64(p.loss_factor);

    std::size_t h = 0;
    for (; h + 2 <= n; h += 2) {
        const float64x2_t ghi = vld1q_f64(in.ghi.data() + h);
        const float64x2_t dni = vld1q_f64(in.dni.data() + h);
        const float64x2_t dhi = vld1q_f64(in.dhi.data() + h);
        const float64x2_t tamb = vld1q_f64(in.t_amb.data() + h);
        const float64x2_t beam = vld1q_f64(in.beam.data() + h);
        const float64x2_t diffuse = vld1q_f64(in.diffuse.data() + h);
        const float64x2_t ground = vld1q_f64(in.ground.data() + h);

        // separate vmulq/vaddq: vfmaq would round differently from the scalar path
        float64x2_t poa = vaddq_f64(vmulq_f64(dni, beam), vmulq_f64(dhi, diffuse));
        poa = vaddq_f64(poa, vmulq_f64(ghi, ground));
        poa = vmaxq_f64(poa, zero);
        const float64x2_t t_cell = vaddq_f64(tamb, vmulq_f64(poa, rise));
        const float64x2_t derate = vaddq_f64(one, vmulq_f64(coeff, vsubq_f64(t_cell, stc_temp)));
        float64x2_t cf = vmulq_f64(vmulq_f64(vdivq_f64(poa, thousand), derate), loss);
        cf = vmaxq_f64(vminq_f64(cf, one), zero);
        vst1q_f64(out.data() + h, cf);
    }
    for (; h < n; ++h) {
        out[h] = hourly_cf_one(in.ghi[h], in.dni[h], in.dhi[h], in.t_amb[h], in.beam[h], in.diffuse[h], in.ground[h],
                               p);
    }
}

void lcoe_batch_neon(const LcoeInputs& in, std::span<double> out)
{
    const std::size_t n = out.size();
    const float64x2_t crf = vdupq_n_f64(in.crf);
    const float64x2_t hours = vdupq_n_f64(mwh_per_kw_year);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t capex = vld1q_f64(in.capex_usd_per_kw.data() + i);
        const float64x2_t fom = vld1q_f64(in.fom_usd_per_kw_yr.data() + i);
        const float64x2_t cf = vld1q_f64(in.annual_cf.data() + i);
        const float64x2_t adder = vld1q_f64(in.adder_usd_per_mwh.data() + i);
        const float64x2_t annual = vaddq_f64(vmulq_f64(capex, crf), fom);
        vst1q_f64(out.data() + i, vaddq_f64(vdivq_f64(annual, vmulq_f64(cf, hours)), adder));
    }
    for (; i < n; ++i) {
        out[i] = lcoe_one(in.capex_usd_per_kw[i], in.fom_usd_per_kw_yr[i], in.annual_cf[i], in.adder_usd_per_mwh[i],
                          in.crf);
    }
}

} // namespace solarsite::kernels::detail
