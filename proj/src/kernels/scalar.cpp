#include "variants.hpp"

namespace solarsite::kernels::detail {

void hourly_cf_scalar(const HourlyCfInputs& in, const HourlyCfParams& p, std::span<double> out)
{
    for (std::size_t h = 0; h < out.size(); ++h) {
        out[h] = hourly_cf_one(in.ghi[h], in.dni[h], in.dhi[h], in.t_amb[h], in.beam[h], in.diffuse[h], in.ground[h],
                               p);
    }
}

void lcoe_batch_scalar(const LcoeInputs& in, std::span<double> out)
{
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = lcoe_one(in.capex_usd_per_kw[i], in.fom_usd_per_kw_yr[i], in.annual_cf[i], in.adder_usd_per_mwh[i],
                          in.crf);
    }
}

} // namespace solarsite::kernels::detail
