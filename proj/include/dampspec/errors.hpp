#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace dampspec {

using cplx = std::complex<double>;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid intervals, parameters out of range, class-tag violations,
// semigroup-domain violations.
struct DomainError : Error {
    using Error::Error;
};

// Quadrature / iteration failed to meet the requested tolerance.
// Carries the partial value and the error bound actually achieved.
struct AccuracyError : Error {
    AccuracyError(const std::string& msg, cplx partial_value, double achieved_tol)
        : Error(msg), partial(partial_value), achieved(achieved_tol) {}
    cplx partial{};
    double achieved = 0.0;
};

// Evaluation requested at (or too close to) a pole.  `index` is the pole
// index (k for lambda = -k, n for E = +-E_n); `residue` holds the residue
// at that pole when it has a closed form.
struct PoleError : Error {
    PoleError(const std::string& msg, int pole_index, cplx residue_value = {})
        : Error(msg), index(pole_index), residue(residue_value) {}
    int index = 0;
    cplx residue{};
};

// An operation was asked for more than the object can deliver
// (jet order beyond capability, unsupported function class, ...).
struct CapabilityError : Error {
    using Error::Error;
};

// Run-configuration problems; names the offending field and line.
struct ConfigError : Error {
    ConfigError(const std::string& msg, std::string field_name = {}, int line_no = 0)
        : Error(msg), field(std::move(field_name)), line(line_no) {}
    std::string field;
    int line = 0;
};

}  // namespace dampspec
