#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "dampspec/errors.hpp"
#include "dampspec/jet.hpp"
#include "dampspec/quad.hpp"
#include "dampspec/specfn.hpp"
#include "dampspec/testfn.hpp"

namespace dampspec {

enum class Side { Plus, Minus };
enum class BoundarySign { PlusI0, MinusI0 };
enum class Parity { Even, Odd };

struct PowerDistribution {
    cplx lambda{};
    Side side = Side::Plus;
};

struct BoundaryPower {
    cplx alpha{};
    BoundarySign sign = BoundarySign::PlusI0;
};

// Residue of lambda -> <phi| x^lambda_side > at lambda = -k:
//   Plus side:  phi^(k-1)(0)/(k-1)!
//   Minus side: (-1)^(k-1) phi^(k-1)(0)/(k-1)!
inline cplx residue_power(const TestFunction& phi, int k, Side side) {
    if (k < 1) throw DomainError("residue_power: k must be >= 1");
    const cplx c = phi.jet(0.0, k - 1).coeff(k - 1);  // phi^(k-1)(0)/(k-1)!
    return (side == Side::Plus || k % 2 == 1) ? c : -c;
}

namespace detail {

struct SeriesSplit {
    std::vector<cplx> coeffs;  // Taylor coefficients of phi at 0
    double x_switch;           // series trusted on [0, x_switch]
    bool series_ok;
};

inline cplx horner(const std::vector<cplx>& c, double x, std::size_t from = 0) {
    cplx v{};
    for (std::size_t i = c.size(); i-- > from;) v = v * x + c[i];
    return v;
}

// Validates where the Taylor series of phi at 0 actually represents phi;
// combinators can hide singularities strictly inside the support hull, so
// the radius is probed rather than inferred.
inline SeriesSplit series_split(const TestFunction& phi, int min_order) {
    const int J = std::min(phi.max_jet_order(), min_order + 26);
    const Jet j = phi.jet(0.0, J);
    SeriesSplit s;
    s.coeffs.resize(static_cast<std::size_t>(J) + 1);
    for (int k = 0; k <= J; ++k) s.coeffs[static_cast<std::size_t>(k)] = j.coeff(k);

    double xs = 0.35;
    const auto& sup = phi.support();
    if (sup.compact && sup.lo < 0.0 && sup.hi > 0.0)
        xs = std::min(xs, 0.45 * std::min(-sup.lo, sup.hi));
    auto valid_at = [&](double x) {
        const cplx direct = phi(x);
        const cplx series = horner(s.coeffs, x);
        return std::abs(direct - series) <= 1e-11 * (1.0 + std::abs(direct));
    };
    s.series_ok = false;
    while (xs > 0.02) {
        if (valid_at(xs) && valid_at(0.6 * xs)) {
            s.series_ok = true;
            break;
        }
        xs *= 0.5;
    }
    s.x_switch = xs;
    return s;
}

// Regularized one-sided pairing Int_0^inf x^lambda phi(x) dx on the Plus
// side, meromorphically continued by Taylor subtraction at 0:
//
//   Int_0^1 x^l [phi - T_{n-1}] + Int_1^inf x^l phi
//     + sum_{k=1..n} phi^(k-1)(0) / ((k-1)! (lambda+k)) .
//
// The [0, x_switch] part of the subtracted integral is summed in closed form
// from the Taylor tail (exact cancellation), the rest is quadrature with
// period-aware splitting in u = log x.  skip_k omits one pole term so the
// boundary-value limit can recombine it analytically.
inline cplx power_pairing_plus(const TestFunction& phi, cplx lambda, const QuadratureConfig& cfg,
                               int skip_k = 0, int force_min_sub = 0) {
    int n = std::max(0, static_cast<int>(std::floor(-lambda.real()))) + 1;
    n = std::max({n, skip_k, force_min_sub});
    if (n > phi.max_jet_order())
        throw CapabilityError("power pairing needs jets to order " + std::to_string(n));
    for (int k = 1; k <= n; ++k) {
        if (k == skip_k) continue;
        if (std::abs(lambda + static_cast<double>(k)) < 1e-10)
            throw PoleError("pair_power at pole lambda = -" + std::to_string(k), k,
                            residue_power(phi, k, Side::Plus));
    }

    const auto split = series_split(phi, n);
    const auto& c = split.coeffs;
    // kernel oscillation (uniform in u = log x) plus the evaluator's own
    // phase rate (bounded by osc_rate * x <= osc_rate on (0,1])
    const double omega = std::abs(lambda.imag()) + phi.support().osc_rate;
    const double tail_tol = cfg.abs_tol * 1e-3;

    cplx total{};

    // pole terms
    for (int k = 1; k <= n; ++k) {
        if (k == skip_k) continue;
        total += c[static_cast<std::size_t>(k - 1)] / (lambda + static_cast<double>(k));
    }

    // [0, x_switch]: closed-form Taylor tail, sum_{k>=n} c_k x^{lambda+k+1}/(lambda+k+1)
    double xsw = split.x_switch;
    if (split.series_ok) {
        const cplx lxs = std::log(xsw);
        for (std::size_t k = static_cast<std::size_t>(n); k < c.size(); ++k) {
            const cplx p = lambda + static_cast<double>(k + 1);
            total += c[k] * std::exp(p * lxs) / p;
        }
    } else {
        xsw = 0.0;  // fall back to pure quadrature on (0, 1]
    }

    // [x_switch, 1]: quadrature of the subtracted integrand in u = log x
    auto subtracted = [&](double u) -> cplx {
        const double x = std::exp(u);
        cplx t{};
        for (int k = n - 1; k >= 0; --k) t = t * x + c[static_cast<std::size_t>(k)];
        return std::exp((lambda + 1.0) * u) * (phi(x) - t);
    };
    double u_lo;
    if (xsw > 0.0) {
        u_lo = std::log(xsw);
    } else {
        // decay rate of the subtracted integrand is at least Re(lambda)+1+n >= 1
        double m = 1.0;
        for (const auto& ck : c) m = std::max(m, std::abs(ck));
        const double rate = lambda.real() + 1.0 + n;
        u_lo = std::min(-2.0, (std::log(tail_tol) - std::log(m)) / rate);
        u_lo = std::max(u_lo, -60.0);
    }
    if (u_lo < 0.0)
        total += integrate_oscillatory(subtracted, u_lo, 0.0, omega, cfg).value;

    // [1, hi]: quadrature of x^lambda phi
    double u_hi = 0.0;
    const auto& sup = phi.support();
    if (sup.compact) {
        u_hi = (sup.hi > 1.0) ? std::log(sup.hi) : 0.0;
    } else {
        double u = std::max(1.0, std::log(2.0 + 2.0 * sup.decay_scale));
        int calm = 0;
        while (u < 60.0 && calm < 3) {
            const double x = std::exp(u);
            const double w = std::exp(lambda.real() * u) * std::abs(phi(x));
            calm = (w < tail_tol) ? calm + 1 : 0;
            u += 0.5;
        }
        u_hi = u;
    }
    if (u_hi > 0.0) {
        if (sup.osc_rate == 0.0) {
            // log substitution makes the kernel oscillation uniform
            auto far = [&](double u) -> cplx {
                return std::exp((lambda + 1.0) * u) * phi(std::exp(u));
            };
            total += integrate_oscillatory(far, 0.0, u_hi, omega, cfg).value;
        } else {
            // an oscillatory evaluator has constant phase rate in x, not in
            // log x; on [1, inf) the kernel rate |Im lambda|/x only shrinks
            auto far = [&](double x) -> cplx {
                return std::exp(lambda * std::log(x)) * phi(x);
            };
            const double w = std::abs(lambda.imag()) + sup.osc_rate;
            total += integrate_oscillatory(far, 1.0, std::exp(u_hi), w, cfg).value;
        }
    }
    return total;
}

inline cplx power_pairing(const TestFunction& phi, cplx lambda, Side side,
                          const QuadratureConfig& cfg, int skip_k = 0) {
    if (side == Side::Plus) return power_pairing_plus(phi, lambda, cfg, skip_k);
    return power_pairing_plus(reflected(phi), lambda, cfg, skip_k);
}

}  // namespace detail

// <phi | x^lambda_side>, regularized.
inline cplx pair_power(const TestFunction& phi, cplx lambda, Side side,
                       const QuadratureConfig& cfg = {}) {
    return detail::power_pairing(phi, lambda, side, cfg);
}

inline cplx pair_power(const TestFunction& phi, const PowerDistribution& d,
                       const QuadratureConfig& cfg = {}) {
    return pair_power(phi, d.lambda, d.side, cfg);
}

// |x|^lambda (Even) and sign(x)|x|^lambda (Odd) pairings.
inline cplx pair_abs_power(const TestFunction& phi, cplx lambda, Parity parity,
                           const QuadratureConfig& cfg = {}) {
    const cplx plus = pair_power(phi, lambda, Side::Plus, cfg);
    const cplx minus = pair_power(phi, lambda, Side::Minus, cfg);
    return parity == Parity::Even ? plus + minus : plus - minus;
}

// <delta^(n), phi> = (-1)^n phi^(n)(0); bilinear, no conjugation.
inline cplx pair_delta_derivative(const TestFunction& phi, int n) {
    if (n < 0) throw DomainError("pair_delta_derivative: n must be >= 0");
    const cplx d = phi.jet(0.0, n).derivative(n);
    return (n % 2 == 0) ? d : -d;
}

// <phi | (k +- i0)^alpha> = <phi|k^a_+> + e^{+-i a pi} <phi|k^a_->.
// Entire in alpha: close to a negative integer -m the simple poles of the
// two one-sided pairings cancel, and the combination is evaluated through
// the pole-free limit   A + e^{+-i a pi} B + r (1 - e^{+-i (a+m) pi})/(a+m),
// where A, B are the pairings with the k = m pole term removed and
// r = phi^(m-1)(0)/(m-1)!.
inline cplx pair_boundary_power(const TestFunction& phi, cplx alpha, BoundarySign sign,
                                const QuadratureConfig& cfg = {}) {
    const double s = (sign == BoundarySign::PlusI0) ? 1.0 : -1.0;
    const cplx i(0.0, 1.0);

    const double nearest = std::round(alpha.real());
    const bool near_negative_integer =
        nearest <= -1.0 && std::abs(alpha - cplx(nearest, 0.0)) < 0.05;

    if (!near_negative_integer) {
        const cplx plus = pair_power(phi, alpha, Side::Plus, cfg);
        const cplx minus = pair_power(phi, alpha, Side::Minus, cfg);
        return plus + std::exp(s * i * alpha * M_PI) * minus;
    }

    const int m = static_cast<int>(-nearest);
    const cplx A = detail::power_pairing(phi, alpha, Side::Plus, cfg, m);
    const cplx B = detail::power_pairing(phi, alpha, Side::Minus, cfg, m);
    const cplx r = phi.jet(0.0, m - 1).coeff(m - 1);  // phi^(m-1)(0)/(m-1)!
    const cplx eps = alpha + static_cast<double>(m);

    // (1 - e^{s i pi eps})/eps = -s i pi * sum_{k>=1} w^{k-1}/k!, finite at eps = 0
    const cplx w = s * i * M_PI * eps;
    cplx ratio;
    if (std::abs(w) < 0.5) {
        cplx series(1.0, 0.0);  // sum w^{k-1}/k!
        cplx term(1.0, 0.0);
        for (int k = 2; k <= 24; ++k) {
            term *= w / static_cast<double>(k);
            series += term;
        }
        ratio = -s * i * M_PI * series;
    } else {
        ratio = (1.0 - std::exp(w)) / eps;
    }
    return A + std::exp(s * i * alpha * M_PI) * B + r * ratio;
}

inline cplx pair_boundary_power(const TestFunction& phi, const BoundaryPower& b,
                                const QuadratureConfig& cfg = {}) {
    return pair_boundary_power(phi, b.alpha, b.sign, cfg);
}

// Finite-part pairing <phi | k^{-m}>, defined as the alpha -> -m limit of the
// (k +- i0)^alpha combination minus its delta contribution; equivalently
// A(-m) + (-1)^m B(-m) with the k = m pole terms removed on both sides.
inline cplx finite_part_integer_power(const TestFunction& phi, int m,
                                      const QuadratureConfig& cfg = {}) {
    if (m < 1) throw DomainError("finite_part_integer_power: m must be >= 1");
    const cplx alpha(-static_cast<double>(m), 0.0);
    const cplx A = detail::power_pairing(phi, alpha, Side::Plus, cfg, m);
    const cplx B = detail::power_pairing(phi, alpha, Side::Minus, cfg, m);
    return (m % 2 == 0) ? A + B : A - B;
}

// <F[x^lambda_side], phi> through the transform formula
//   F[x^l_+-](k) = +- (i/sqrt(2 pi)) e^{+- i l pi/2} Gamma(l+1) (k +- i0)^{-l-1}.
// The boundary sign follows the side; an override is exposed because the two
// conventions differ by a delta-type term and only one survives the duality
// cross-check.
inline cplx fourier_power_pairing(const TestFunction& phi, cplx lambda, Side side,
                                  const QuadratureConfig& cfg = {},
                                  std::optional<BoundarySign> boundary_override = {}) {
    const double s = (side == Side::Plus) ? 1.0 : -1.0;
    const cplx i(0.0, 1.0);
    const cplx coef =
        s * (i / std::sqrt(2.0 * M_PI)) * std::exp(s * i * lambda * (M_PI / 2.0)) *
        gamma_value(lambda + 1.0);
    const BoundarySign bs = boundary_override.value_or(
        side == Side::Plus ? BoundarySign::PlusI0 : BoundarySign::MinusI0);
    return coef * pair_boundary_power(phi, -lambda - 1.0, bs, cfg);
}

// <F[x^n_side], phi> for integer n:
//   F[x^n_+-](k) = (1/sqrt(2 pi)) [ (+-i)^{n+1} n! k^{-n-1} + (-+i)^n pi delta^(n)(k) ],
// with k^{-n-1} the finite part above.
inline cplx fourier_power_integer_pairing(const TestFunction& phi, int n, Side side,
                                          const QuadratureConfig& cfg = {}) {
    if (n < 0) throw DomainError("fourier_power_integer_pairing: n must be >= 0");
    const cplx i(0.0, 1.0);
    const cplx si = (side == Side::Plus) ? i : -i;
    double fact = 1.0;
    for (int k = 2; k <= n; ++k) fact *= k;
    const cplx fp = finite_part_integer_power(phi, n + 1, cfg);
    const cplx delta_term = std::pow(-si, n) * M_PI * pair_delta_derivative(phi, n);
    return (std::pow(si, n + 1) * fact * fp + delta_term) / std::sqrt(2.0 * M_PI);
}

}  // namespace dampspec
