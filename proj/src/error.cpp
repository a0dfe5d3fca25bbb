#include "solarsite/error.hpp"

#include "solarsite/format.hpp"

namespace solarsite {

int exit_code(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::config: return 2;
    case ErrorKind::validation: return 3;
    case ErrorKind::domain: return 3;
    case ErrorKind::infeasible: return 4;
    case ErrorKind::io: return 1;
    }
    return 1;
}

ParseError::ParseError(const std::string& source, std::size_t row, const std::string& what)
    : ValidationError(source + ": row " + std::to_string(row) + ": " + what), row_(row)
{
}

DuplicateIdError::DuplicateIdError(const std::string& id)
    : ValidationError("duplicate parcel id '" + id + "'"), id_(id)
{
}

TargetMismatchError::TargetMismatchError(std::int64_t total_mw, std::int64_t regional_sum_mw)
    : ValidationError("regional targets sum to " + std::to_string(regional_sum_mw) + " MW but total is " +
                      std::to_string(total_mw) + " MW (residual " + std::to_string(total_mw - regional_sum_mw) +
                      " MW)"),
      residual_mw_(total_mw - regional_sum_mw)
{
}

InsufficientPotentialError::InsufficientPotentialError(double requested_mw, double available_mw)
    : DomainError("requested " + format_number(requested_mw) + " MW exceeds available " +
                  format_number(available_mw) + " MW (shortfall " + format_number(requested_mw - available_mw) +
                  " MW)"),
      shortfall_mw_(requested_mw - available_mw)
{
}

InfeasibleError::InfeasibleError(std::string scope, double shortfall_mw)
    : Error(ErrorKind::infeasible,
            "infeasible in " + scope + ": priority tiers exhausted with shortfall " + format_number(shortfall_mw) +
                " MW"),
      scope_(std::move(scope)), shortfall_mw_(shortfall_mw)
{
}

} // namespace solarsite
