#pragma once

// Data-parallel inner loops with a scalar reference implementation and
// AVX2 / NEON variants. All variants evaluate the same operations in the same
// order without fused multiply-add, so their outputs are bit-identical to the
// scalar reference; the equivalence tests hold them to that.

#include <span>
#include <string_view>

namespace solarsite::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view to_string(Isa isa) noexcept;

// True when the variant is compiled in and the running CPU supports it.
bool isa_available(Isa isa) noexcept;

// Fastest available variant. The SOLARSITE_ISA environment variable
// ("scalar", "avx2", "neon") overrides the choice when that variant is available.
Isa active_isa() noexcept;

// Per-hour inputs for the PV performance chain. The three surface factors fold
// the geometry in and are zero whenever the sun is below the horizon:
//   beam    = max(cos aoi, 0)
//   diffuse = (1 + cos tilt) / 2
//   ground  = albedo * (1 - cos tilt) / 2
struct HourlyCfInputs {
    std::span<const double> ghi;
    std::span<const double> dni;
    std::span<const double> dhi;
    std::span<const double> t_amb;
    std::span<const double> beam;
    std::span<const double> diffuse;
    std::span<const double> ground;
};

struct HourlyCfParams {
    double temp_rise_per_wm2 = 25.0 / 800.0; // (NOCT - 20) / 800
    double temp_coeff_per_c = -0.0037;
    double loss_factor = 0.86; // 1 - system_loss
};

// cf[h] = clamp(poa/1000 * (1 + temp_coeff * (t_cell - 25)) * loss_factor, 0, 1)
// with poa = max(dni*beam + dhi*diffuse + ghi*ground, 0) and
// t_cell = t_amb + poa * temp_rise_per_wm2. All spans must share out's length.
void hourly_cf(Isa isa, const HourlyCfInputs& in, const HourlyCfParams& p, std::span<double> out);
void hourly_cf(const HourlyCfInputs& in, const HourlyCfParams& p, std::span<double> out);

struct LcoeInputs {
    std::span<const double> capex_usd_per_kw;
    std::span<const double> fom_usd_per_kw_yr;
    std::span<const double> annual_cf; // must be > 0
    std::span<const double> adder_usd_per_mwh;
    double crf = 0.0;
};

// out[i] = (capex*crf + fom) / (cf * 8.76) + adder, in $/MWh.
void lcoe_batch(Isa isa, const LcoeInputs& in, std::span<double> out);
void lcoe_batch(const LcoeInputs& in, std::span<double> out);

} // namespace solarsite::kernels
