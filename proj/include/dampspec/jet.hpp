#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "dampspec/errors.hpp"

namespace dampspec {

// Truncated Taylor expansion around a real base point.  coeff(k) stores
// f^(k)(x0)/k!, so products are plain Cauchy convolutions and high-order
// derivatives stay exact where finite differences would drown in noise.
class Jet {
  public:
    Jet(double base_point, int order)
        : x0_(base_point), c_(static_cast<std::size_t>(order) + 1, cplx{}) {
        if (order < 0) throw DomainError("jet order must be non-negative");
    }

    static Jet constant(cplx v, double x0, int order) {
        Jet j(x0, order);
        j.c_[0] = v;
        return j;
    }

    // The identity function x viewed around x0.
    static Jet variable(double x0, int order) {
        Jet j(x0, order);
        j.c_[0] = x0;
        if (order >= 1) j.c_[1] = 1.0;
        return j;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    double base_point() const { return x0_; }

    cplx coeff(int k) const { return c_[static_cast<std::size_t>(k)]; }
    cplx& coeff(int k) { return c_[static_cast<std::size_t>(k)]; }

    cplx value() const { return c_[0]; }

    // f^(n)(x0) = n! * coeff(n)
    cplx derivative(int n) const {
        if (n > order())
            throw CapabilityError("jet derivative order " + std::to_string(n) +
                                  " exceeds jet order " + std::to_string(order()));
        double fact = 1.0;
        for (int k = 2; k <= n; ++k) fact *= k;
        return fact * c_[static_cast<std::size_t>(n)];
    }

    Jet operator+(const Jet& o) const {
        Jet r = *this;
        for (int k = 0; k <= std::min(order(), o.order()); ++k) r.coeff(k) += o.coeff(k);
        return r;
    }
    Jet operator-(const Jet& o) const {
        Jet r = *this;
        for (int k = 0; k <= std::min(order(), o.order()); ++k) r.coeff(k) -= o.coeff(k);
        return r;
    }
    Jet operator*(cplx s) const {
        Jet r = *this;
        for (auto& c : r.c_) c *= s;
        return r;
    }
    Jet operator-() const { return *this * cplx(-1.0); }

    Jet operator*(const Jet& o) const {
        Jet r(x0_, order());
        for (int k = 0; k <= order(); ++k) {
            cplx acc{};
            for (int j = 0; j <= k && j <= order(); ++j) {
                if (k - j > o.order()) continue;
                acc += c_[static_cast<std::size_t>(j)] * o.coeff(k - j);
            }
            r.coeff(k) = acc;
        }
        return r;
    }

    // Power-series inverse; requires a nonzero constant term.
    Jet reciprocal() const {
        if (c_[0] == cplx{}) throw DomainError("jet reciprocal of zero constant term");
        Jet r(x0_, order());
        r.coeff(0) = 1.0 / c_[0];
        for (int k = 1; k <= order(); ++k) {
            cplx acc{};
            for (int j = 1; j <= k; ++j) acc += c_[static_cast<std::size_t>(j)] * r.coeff(k - j);
            r.coeff(k) = -acc / c_[0];
        }
        return r;
    }

    // First derivative as a jet of one order less (order 0 maps to order 0 zero jet).
    Jet derivative_jet() const {
        int m = std::max(order() - 1, 0);
        Jet r(x0_, m);
        for (int k = 0; k + 1 <= order() && k <= m; ++k)
            r.coeff(k) = static_cast<double>(k + 1) * c_[static_cast<std::size_t>(k + 1)];
        if (order() == 0) r.coeff(0) = cplx{};
        return r;
    }

  private:
    double x0_;
    std::vector<cplx> c_;
};

inline Jet operator*(cplx s, const Jet& j) { return j * s; }

// exp through the series: g = exp(u)  =>  g' = u' g, giving the
// coefficient recurrence k*g_k = sum_{j=1..k} j*u_j*g_{k-j}.
inline Jet exp(const Jet& u) {
    Jet g(u.base_point(), u.order());
    g.coeff(0) = std::exp(u.coeff(0));
    for (int k = 1; k <= u.order(); ++k) {
        cplx acc{};
        for (int j = 1; j <= k; ++j) acc += static_cast<double>(j) * u.coeff(j) * g.coeff(k - j);
        g.coeff(k) = acc / static_cast<double>(k);
    }
    return g;
}

inline Jet pow_int(const Jet& u, int n) {
    Jet r = Jet::constant(1.0, u.base_point(), u.order());
    for (int i = 0; i < n; ++i) r = r * u;
    return r;
}

}  // namespace dampspec
