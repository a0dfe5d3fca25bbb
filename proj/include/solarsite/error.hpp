#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace solarsite {

enum class ErrorKind {
    config,
    validation,
    domain,
    infeasible,
    io,
};

// Process exit status for each error kind, as reported by the CLI.
int exit_code(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(ErrorKind::config, what) {}
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(ErrorKind::validation, what) {}
};

// Malformed input row. Row numbers are 1-based and count the header as row 1.
class ParseError : public ValidationError {
public:
    ParseError(const std::string& source, std::size_t row, const std::string& what);
    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

class DuplicateIdError : public ValidationError {
public:
    explicit DuplicateIdError(const std::string& id);
    const std::string& id() const noexcept { return id_; }

private:
    std::string id_;
};

class TargetMismatchError : public ValidationError {
public:
    TargetMismatchError(std::int64_t total_mw, std::int64_t regional_sum_mw);
    // total minus the regional sum, in MW
    std::int64_t residual_mw() const noexcept { return residual_mw_; }

private:
    std::int64_t residual_mw_;
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

// A site whose annual capacity factor is zero has no finite LCOE.
class ZeroGenerationError : public DomainError {
public:
    explicit ZeroGenerationError(const std::string& what) : DomainError(what) {}
};

// Requested capacity exceeds what a supply curve holds.
class InsufficientPotentialError : public DomainError {
public:
    InsufficientPotentialError(double requested_mw, double available_mw);
    double shortfall_mw() const noexcept { return shortfall_mw_; }

private:
    double shortfall_mw_;
};

// A strict scenario ran out of capacity in its priority tiers.
class InfeasibleError : public Error {
public:
    InfeasibleError(std::string scope, double shortfall_mw);
    const std::string& scope() const noexcept { return scope_; }
    double shortfall_mw() const noexcept { return shortfall_mw_; }

private:
    std::string scope_;
    double shortfall_mw_;
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

} // namespace solarsite
