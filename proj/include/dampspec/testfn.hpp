#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "dampspec/errors.hpp"
#include "dampspec/jet.hpp"
#include "dampspec/quad.hpp"

namespace dampspec {

enum class FnClass { D, Z, S };

struct Support {
    bool compact = false;
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    double decay_scale = 1.0;  // length-scale hint used to truncate rapid-decay tails
    double osc_rate = 0.0;     // e^{icx}-type phase rate of the evaluator, 0 when smooth

    static Support compact_interval(double lo, double hi) { return {true, lo, hi, hi - lo, 0.0}; }
    static Support rapid_decay(double scale, double osc = 0.0) {
        Support s;
        s.decay_scale = scale;
        s.osc_rate = osc;
        return s;
    }
};

// An evaluable, exactly-differentiable test function: evaluator plus a jet
// oracle delivering Taylor coefficients to high order.  Values are immutable
// after construction and safe to share across threads.
class TestFunction {
  public:
    using Evaluator = std::function<cplx(double)>;
    using JetOracle = std::function<Jet(double, int)>;
    using FourierHook = std::function<TestFunction()>;

    TestFunction(Evaluator ev, JetOracle jo, Support sup, FnClass cls, std::string desc,
                 int max_jet_order = 32)
        : eval_(std::move(ev)),
          jet_(std::move(jo)),
          support_(sup),
          class_(cls),
          desc_(std::move(desc)),
          max_jet_order_(max_jet_order) {
        if (class_ == FnClass::D && !support_.compact)
            throw DomainError("class D requires compact support");
    }

    cplx operator()(double x) const { return eval_(x); }

    Jet jet(double x, int order) const {
        if (order < 0) throw DomainError("negative jet order");
        if (order > max_jet_order_)
            throw CapabilityError("jet order " + std::to_string(order) +
                                  " beyond capability " + std::to_string(max_jet_order_));
        return jet_(x, order);
    }

    const Support& support() const { return support_; }
    FnClass fn_class() const { return class_; }
    const std::string& description() const { return desc_; }
    int max_jet_order() const { return max_jet_order_; }

    bool has_fourier_closed_form() const { return static_cast<bool>(fourier_hook_); }
    TestFunction fourier_closed_form() const {
        if (!fourier_hook_) throw CapabilityError("no closed-form Fourier transform available");
        return fourier_hook_();
    }
    TestFunction with_fourier_hook(FourierHook h) const {
        TestFunction r = *this;
        r.fourier_hook_ = std::move(h);
        return r;
    }

  private:
    Evaluator eval_;
    JetOracle jet_;
    Support support_;
    FnClass class_;
    std::string desc_;
    int max_jet_order_;
    FourierHook fourier_hook_;
};

namespace detail {

// Radius beyond which |x^n f(x)| is negligible, found by scanning outward.
inline double truncation_radius(const TestFunction& f, int n, double tiny) {
    if (f.support().compact) return std::max(std::abs(f.support().lo), std::abs(f.support().hi));
    double r = 4.0 * f.support().decay_scale + 1.0;
    auto small_at = [&](double x) {
        const double w = std::pow(std::abs(x), n) * std::abs(f(x));
        return w < tiny;
    };
    while (r < 1e6) {
        if (small_at(r) && small_at(-r) && small_at(1.25 * r) && small_at(-1.25 * r) &&
            small_at(1.6 * r) && small_at(-1.6 * r))
            return 1.6 * r;
        r *= 2.0;
    }
    return r;
}

}  // namespace detail

// Integral of x^n f(x) over the line, split exactly at 0 so that one-sided
// pairings can reuse the halves.
inline cplx moment(const TestFunction& f, int n, const QuadratureConfig& cfg = {}) {
    if (n < 0) throw DomainError("moment order must be non-negative");
    auto integrand = [&](double x) { return std::pow(x, n) * f(x); };
    double lo, hi;
    if (f.support().compact) {
        lo = f.support().lo;
        hi = f.support().hi;
    } else {
        const double r = detail::truncation_radius(f, n, cfg.abs_tol * 1e-4);
        lo = -r;
        hi = r;
    }
    const double osc = f.support().osc_rate;
    cplx total{};
    if (lo < 0.0)
        total += integrate_oscillatory(integrand, lo, std::min(hi, 0.0), osc, cfg).value;
    if (hi > 0.0)
        total += integrate_oscillatory(integrand, std::max(lo, 0.0), hi, osc, cfg).value;
    return total;
}

// n-th derivative of f at x, read off the exact jet.
inline cplx derivative_at(const TestFunction& f, double x, int n) {
    return f.jet(x, n).derivative(n);
}

// Scaled mollifier amplitude * exp(-1/(1-u^2)) with u the affine map of
// [lo,hi] onto [-1,1]; identically zero outside.
inline TestFunction make_bump(double lo, double hi, double amplitude, int max_order = 32) {
    if (!(lo < hi)) throw DomainError("make_bump: invalid interval (lo >= hi)");
    if (amplitude == 0.0) throw DomainError("make_bump: amplitude must be nonzero");
    const double mid = 0.5 * (lo + hi);
    const double slope = 2.0 / (hi - lo);

    auto eval = [=](double x) -> cplx {
        const double u = slope * (x - mid);
        const double w = 1.0 - u * u;
        if (w <= 0.0) return cplx{};
        return amplitude * std::exp(-1.0 / w);
    };
    auto jet = [=](double x0, int order) -> Jet {
        const double u0 = slope * (x0 - mid);
        const double w0 = 1.0 - u0 * u0;
        // Next to the support edge every coefficient is below ~e^{-500};
        // returning the zero jet avoids overflow inside the reciprocal.
        if (w0 <= 2e-3) return Jet(x0, order);
        Jet u(x0, order);
        u.coeff(0) = u0;
        if (order >= 1) u.coeff(1) = slope;
        const Jet w = Jet::constant(1.0, x0, order) - u * u;
        return dampspec::exp(-w.reciprocal()) * cplx(amplitude);
    };
    return TestFunction(eval, jet, Support::compact_interval(lo, hi), FnClass::D,
                        "bump[" + std::to_string(lo) + "," + std::to_string(hi) + "]",
                        max_order);
}

// p(x) * exp(-x^2/(2 sigma^2)) with complex polynomial coefficients.
// Carries its closed-form Fourier transform (polynomial recurrence through
// the Gaussian), so time reversal stays exact on this family.
inline TestFunction make_poly_gauss(std::vector<cplx> poly, double sigma, int max_order = 32,
                                    std::string desc = {});

namespace detail {

inline std::vector<cplx> poly_derivative(const std::vector<cplx>& p) {
    if (p.size() <= 1) return {cplx{}};
    std::vector<cplx> d(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = static_cast<double>(i) * p[i];
    return d;
}

inline std::vector<cplx> poly_shift_up(const std::vector<cplx>& p) {  // multiply by x
    std::vector<cplx> r(p.size() + 1, cplx{});
    for (std::size_t i = 0; i < p.size(); ++i) r[i + 1] = p[i];
    return r;
}

inline std::vector<cplx> poly_axpy(std::vector<cplx> a, const std::vector<cplx>& b, cplx s) {
    if (b.size() > a.size()) a.resize(b.size(), cplx{});
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += s * b[i];
    return a;
}

inline cplx poly_eval(const std::vector<cplx>& p, double x) {
    cplx v{};
    for (std::size_t i = p.size(); i-- > 0;) v = v * x + p[i];
    return v;
}

// F[p(x) e^{-x^2/(2s^2)}] = q(k) e^{-s^2 k^2/2}: with r_0 = s and
// r_{j+1} = r_j' - s^2 k r_j one has q = sum a_j (-i)^j r_j.
inline std::vector<cplx> poly_gauss_fourier_coeffs(const std::vector<cplx>& p, double sigma) {
    std::vector<cplx> q{cplx{}};
    std::vector<cplx> r{cplx(sigma)};
    cplx phase(1.0, 0.0);
    const cplx minus_i(0.0, -1.0);
    for (std::size_t j = 0; j < p.size(); ++j) {
        q = poly_axpy(std::move(q), r, phase * p[j]);
        r = poly_axpy(poly_derivative(r), poly_shift_up(r), -sigma * sigma);
        phase *= minus_i;
    }
    return q;
}

}  // namespace detail

inline TestFunction make_poly_gauss(std::vector<cplx> poly, double sigma, int max_order,
                                    std::string desc) {
    if (!(sigma > 0.0)) throw DomainError("make_poly_gauss: sigma must be positive");
    if (poly.empty()) poly = {cplx{}};
    if (desc.empty()) desc = "poly*gauss(sigma=" + std::to_string(sigma) + ")";
    auto shared = std::make_shared<std::vector<cplx>>(std::move(poly));
    const double inv2s2 = 1.0 / (2.0 * sigma * sigma);

    auto eval = [=](double x) -> cplx {
        return detail::poly_eval(*shared, x) * std::exp(-x * x * inv2s2);
    };
    auto jet = [=](double x0, int order) -> Jet {
        Jet x = Jet::variable(x0, order);
        Jet p = Jet::constant((*shared).back(), x0, order);
        for (std::size_t i = shared->size() - 1; i-- > 0;)
            p = p * x + Jet::constant((*shared)[i], x0, order);
        const Jet gauss = dampspec::exp(x * x * cplx(-inv2s2));
        return p * gauss;
    };
    const double deg_scale = sigma * (2.0 + std::sqrt(static_cast<double>(shared->size())));
    TestFunction f(eval, jet, Support::rapid_decay(deg_scale), FnClass::S, desc, max_order);
    return f.with_fourier_hook([shared, sigma, max_order]() {
        return make_poly_gauss(detail::poly_gauss_fourier_coeffs(*shared, sigma), 1.0 / sigma,
                               max_order);
    });
}

// x^k exp(-x^2/(2 sigma^2)).
inline TestFunction make_gauss_hermite(double sigma, int k, int max_order = 32) {
    if (!(sigma > 0.0)) throw DomainError("make_gauss_hermite: sigma must be positive");
    if (k < 0) throw DomainError("make_gauss_hermite: k must be non-negative");
    std::vector<cplx> poly(static_cast<std::size_t>(k) + 1, cplx{});
    poly.back() = 1.0;
    return make_poly_gauss(std::move(poly), sigma, max_order,
                           "gauss_hermite(sigma=" + std::to_string(sigma) +
                               ",k=" + std::to_string(k) + ")");
}

inline TestFunction scaled(const TestFunction& f, cplx factor) {
    TestFunction base(
        [f, factor](double x) { return factor * f(x); },
        [f, factor](double x0, int order) { return f.jet(x0, order) * factor; }, f.support(),
        f.fn_class(), "scale(" + f.description() + ")", f.max_jet_order());
    if (f.has_fourier_closed_form())
        return base.with_fourier_hook([f, factor] { return scaled(f.fourier_closed_form(), factor); });
    return base;
}

inline TestFunction reflected(const TestFunction& f) {
    Support s = f.support();
    if (s.compact) {
        std::swap(s.lo, s.hi);
        s.lo = -s.lo;
        s.hi = -s.hi;
    }
    TestFunction base(
        [f](double x) { return f(-x); },
        [f](double x0, int order) {
            const Jet inner = f.jet(-x0, order);
            Jet r(x0, order);
            double sign = 1.0;
            for (int k = 0; k <= order; ++k, sign = -sign) r.coeff(k) = sign * inner.coeff(k);
            return r;
        },
        s, f.fn_class(), "reflect(" + f.description() + ")", f.max_jet_order());
    if (f.has_fourier_closed_form())
        return base.with_fourier_hook([f] { return reflected(f.fourier_closed_form()); });
    return base;
}

inline TestFunction sum_of(const TestFunction& a, const TestFunction& b) {
    Support s;
    if (a.support().compact && b.support().compact) {
        s = Support::compact_interval(std::min(a.support().lo, b.support().lo),
                                      std::max(a.support().hi, b.support().hi));
    } else {
        s = Support::rapid_decay(std::max(a.support().decay_scale, b.support().decay_scale),
                                 std::max(a.support().osc_rate, b.support().osc_rate));
    }
    FnClass cls = FnClass::S;
    if (a.fn_class() == b.fn_class()) cls = a.fn_class();
    if (!s.compact && cls == FnClass::D) cls = FnClass::S;
    TestFunction base(
        [a, b](double x) { return a(x) + b(x); },
        [a, b](double x0, int order) { return a.jet(x0, order) + b.jet(x0, order); }, s, cls,
        "sum(" + a.description() + "," + b.description() + ")",
        std::min(a.max_jet_order(), b.max_jet_order()));
    if (a.has_fourier_closed_form() && b.has_fourier_closed_form())
        return base.with_fourier_hook(
            [a, b] { return sum_of(a.fourier_closed_form(), b.fourier_closed_form()); });
    return base;
}

// Fourier transform (1/sqrt(2 pi)) Int e^{ikx} f(x) dx of a compactly
// supported f.  The evaluator is quadrature-backed; the jet at 0 is exact,
// built from the moments of f (g^(n)(0) = i^n m_n / sqrt(2 pi)).
inline TestFunction make_fourier_of(const TestFunction& f, const QuadratureConfig& cfg_in = {},
                                    int max_order = 32) {
    if (!f.support().compact || f.fn_class() != FnClass::D)
        throw DomainError("make_fourier_of: argument must be compactly supported (class D)");
    const double lo = f.support().lo;
    const double hi = f.support().hi;
    // evaluations of the transform feed outer quadratures; keep their noise
    // floor below ambient tolerances
    QuadratureConfig cfg = cfg_in;
    cfg.abs_tol = std::max(1e-13, cfg_in.abs_tol * 0.1);
    cfg.rel_tol = std::max(1e-13, cfg_in.rel_tol * 0.1);

    auto moments = std::make_shared<std::vector<cplx>>();
    moments->reserve(static_cast<std::size_t>(max_order) + 1);
    for (int n = 0; n <= max_order; ++n) moments->push_back(moment(f, n, cfg));

    const double inv_sqrt2pi = 1.0 / std::sqrt(2.0 * M_PI);
    auto eval = [=](double k) -> cplx {
        auto integrand = [&](double x) { return std::polar(1.0, k * x) * f(x); };
        return inv_sqrt2pi * integrate_oscillatory(integrand, lo, hi, k, cfg).value;
    };
    auto jet = [=](double k0, int order) -> Jet {
        Jet j(k0, order);
        if (k0 == 0.0) {
            cplx ipow(1.0, 0.0);
            double fact = 1.0;
            for (int n = 0; n <= order; ++n) {
                if (n > 0) fact *= n;
                j.coeff(n) = ipow * (*moments)[static_cast<std::size_t>(n)] * inv_sqrt2pi / fact;
                ipow *= cplx(0.0, 1.0);
            }
            return j;
        }
        cplx ipow(1.0, 0.0);
        double fact = 1.0;
        for (int n = 0; n <= order; ++n) {
            if (n > 0) fact *= n;
            auto integrand = [&](double x) {
                return std::pow(x, n) * std::polar(1.0, k0 * x) * f(x);
            };
            const cplx in = integrate_oscillatory(integrand, lo, hi, k0, cfg).value;
            j.coeff(n) = ipow * in * inv_sqrt2pi / fact;
            ipow *= cplx(0.0, 1.0);
        }
        return j;
    };
    const double scale = std::max(1.0, 2.0 * M_PI / (hi - lo));
    const double osc = std::max(std::abs(lo), std::abs(hi));
    return TestFunction(eval, jet, Support::rapid_decay(scale, osc), FnClass::Z,
                        "F[" + f.description() + "]", max_order);
}

}  // namespace dampspec
