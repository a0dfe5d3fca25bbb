// Compiled with -mavx2 (and without -mfma) when targeting x86-64.
#include "variants.hpp"

#include <immintrin.h>

namespace solarsite::kernels::detail {

void hourly_cf_avx2(const HourlyCfInputs& in, const HourlyCfParams& p, std::span<double> out)
{
    const std::size_t n = out.size();
    const __m256d zero = _mm256_setzero_pd();
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d thousand = _mm256_set1_pd(1000.0);
    const __m256d stc_temp = _mm256_set1_pd(25.0);
    const __m256d rise = _mm256_set1_pd(p.temp_rise_per_wm2);
    const __m256d coeff = _mm256_set1_pd(p.temp_coeff_per_c);
    const __m256d loss = _mm256_set1_pd(p.loss_factor);

    std::size_t h = 0;
    for (; h + 4 <= n; h += 4) {
        const __m256d ghi = _mm256_loadu_pd(in.ghi.data() + h);
        const __m256d dni = _mm256_loadu_pd(in.dni.data() + h);
        const __m256d dhi = _mm256_loadu_pd(in.dhi.data() + h);
        const __m256d tamb = _mm256_loadu_pd(in.t_amb.data() + h);
        const __m256d beam = _mm256_loadu_pd(in.beam.data() + h);
        const __m256d diffuse = _mm256_loadu_pd(in.diffuse.data() + h);
        const __m256d ground = _mm256_loadu_pd(in.ground.data() + h);

        __m256d poa = _mm256_add_pd(_mm256_mul_pd(dni, beam), _mm256_mul_pd(dhi, diffuse));
        poa = _mm256_add_pd(poa, _mm256_mul_pd(ghi, ground));
        poa = _mm256_max_pd(poa, zero);
        const __m256d t_cell = _mm256_add_pd(tamb, _mm256_mul_pd(poa, rise));
        const __m256d derate = _mm256_add_pd(one, _mm256_mul_pd(coeff, _mm256_sub_pd(t_cell, stc_temp)));
        __m256d cf = _mm256_mul_pd(_mm256_mul_pd(_mm256_div_pd(poa, thousand), derate), loss);
        cf = _mm256_max_pd(_mm256_min_pd(cf, one), zero);
        _mm256_storeu_pd(out.data() + h, cf);
    }
    for (; h < n; ++h) {
        out[h] = hourly_cf_one(in.ghi[h], in.dni[h], in.dhi[h], in.t_amb[h], in.beam[h], in.diffuse[h], in.ground[h],
                               p);
    }
}

void lcoe_batch_avx2(const LcoeInputs& in, std::span<double> out)
{
    const std::size_t n = out.size();
    const __m256d crf = _mm256_set1_pd(in.crf);
    const __m256d hours = _mm256_set1_pd(mwh_per_kw_year);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d capex = _mm256_loadu_pd(in.capex_usd_per_kw.data() + i);
        const __m256d fom = _mm256_loadu_pd(in.fom_usd_per_kw_yr.data() + i);
        const __m256d cf = _mm256_loadu_pd(in.annual_cf.data() + i);
        const __m256d adder = _mm256_loadu_pd(in.adder_usd_per_mwh.data() + i);
        const __m256d annual = _mm256_add_pd(_mm256_mul_pd(capex, crf), fom);
        const __m256d lcoe = _mm256_add_pd(_mm256_div_pd(annual, _mm256_mul_pd(cf, hours)), adder);
        _mm256_storeu_pd(out.data() + i, lcoe);
    }
    for (; i < n; ++i) {
        out[i] = lcoe_one(in.capex_usd_per_kw[i], in.fom_usd_per_kw_yr[i], in.annual_cf[i], in.adder_usd_per_mwh[i],
                          in.crf);
    }
}

} // namespace solarsite::kernels::detail
