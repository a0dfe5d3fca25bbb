#include <cstdlib>
#include <string_view>

#include "solarsite/error.hpp"
#include "variants.hpp"

namespace solarsite::kernels {

namespace {

Isa detect() noexcept
{
    if (const char* forced = std::getenv("SOLARSITE_ISA")) {
        const std::string_view want(forced);
        for (const auto isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
            if (want == to_string(isa) && isa_available(isa)) {
                return isa;
            }
        }
    }
    if (isa_available(Isa::avx2)) {
        return Isa::avx2;
    }
    if (isa_available(Isa::neon)) {
        return Isa::neon;
    }
    return Isa::scalar;
}

template <typename... Spans>
void check_lengths(std::size_t n, const Spans&... spans)
{
    if (((spans.size() != n) || ...)) {
        throw DomainError("kernel input spans must match the output length");
    }
}

} // namespace

std::string_view to_string(Isa isa) noexcept
{
    switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
    }
    return "?";
}

bool isa_available(Isa isa) noexcept
{
    switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(SOLARSITE_HAVE_AVX2)
        return __builtin_cpu_supports("avx2");
#else
        return false;
#endif
    case Isa::neon:
#if defined(SOLARSITE_HAVE_NEON)
        return true;
#else
        return false;
#endif
    }
    return false;
}

Isa active_isa() noexcept
{
    static const Isa isa = detect();
    return isa;
}

void hourly_cf(Isa isa, const HourlyCfInputs& in, const HourlyCfParams& p, std::span<double> out)
{
    check_lengths(out.size(), in.ghi, in.dni, in.dhi, in.t_amb, in.beam, in.diffuse, in.ground);
    if (!isa_available(isa)) {
        isa = Isa::scalar;
    }
    switch (isa) {
#if defined(SOLARSITE_HAVE_AVX2)
    case Isa::avx2: detail::hourly_cf_avx2(in, p, out); return;
#endif
#if defined(SOLARSITE_HAVE_NEON)
    case Isa::neon: detail::hourly_cf_neon(in, p, out); return;
#endif
    default: detail::hourly_cf_scalar(in, p, out); return;
    }
}

void hourly_cf(const HourlyCfInputs& in, const HourlyCfParams& p, std::span<double> out)
{
    hourly_cf(active_isa(), in, p, out);
}

void lcoe_batch(Isa isa, const LcoeInputs& in, std::span<double> out)
{
    check_lengths(out.size(), in.capex_usd_per_kw, in.fom_usd_per_kw_yr, in.annual_cf, in.adder_usd_per_mwh);
    if (!isa_available(isa)) {
        isa = Isa::scalar;
    }
    switch (isa) {
#if defined(SOLARSITE_HAVE_AVX2)
    case Isa::avx2: detail::lcoe_batch_avx2(in, out); return;
#endif
#if defined(SOLARSITE_HAVE_NEON)
    case Isa::neon: detail::lcoe_batch_neon(in, out); return;
#endif
    default: detail::lcoe_batch_scalar(in, out); return;
    }
}

void lcoe_batch(const LcoeInputs& in, std::span<double> out)
{
    lcoe_batch(active_isa(), in, out);
}

} // namespace solarsite::kernels
