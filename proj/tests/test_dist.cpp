#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "dampspec/dist.hpp"
#include "oracles.hpp"

using namespace dampspec;

namespace {

// Literal term-by-term evaluation of the one-sided regularization formula
// with the minimal subtraction order n, kept independent of the library's
// series-splitting path.
cplx pole_formula_oracle(const TestFunction& phi, cplx lambda, int n) {
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-12;
    cfg.rel_tol = 1e-12;
    Jet j = phi.jet(0.0, std::max(0, n - 1));
    auto taylor = [&](double x) {
        cplx t{};
        for (int k = n - 1; k >= 0; --k) t = t * x + j.coeff(k);
        return t;
    };
    auto near = [&](double x) -> cplx {
        return std::exp(lambda * std::log(x)) * (phi(x) - taylor(x));
    };
    QuadratureConfig ts = cfg;
    ts.scheme_hint = QuadratureConfig::Scheme::tanh_sinh_endpoint;
    cplx total = integrate(near, 0.0, 1.0, ts).value;
    const double hi = phi.support().compact ? std::max(1.0, phi.support().hi)
                                            : 12.0 * phi.support().decay_scale;
    if (hi > 1.0) {
        auto far = [&](double x) -> cplx { return std::exp(lambda * std::log(x)) * phi(x); };
        total += integrate(far, 1.0, hi, cfg).value;
    }
    for (int k = 1; k <= n; ++k)
        total += j.coeff(k - 1) / (lambda + static_cast<double>(k));
    return total;
}

// Principal value of Int phi(x)/x dx by symmetric excision and Richardson
// in the excision radius.
cplx pv_oracle(const TestFunction& phi) {
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-13;
    cfg.rel_tol = 1e-13;
    auto f = [&](double x) -> cplx { return phi(x) / x; };
    const double hi = phi.support().compact ? std::max(std::abs(phi.support().lo),
                                                       std::abs(phi.support().hi))
                                            : 12.0 * phi.support().decay_scale;
    auto at = [&](double eps) {
        return integrate(f, eps, hi, cfg).value + integrate(f, -hi, -eps, cfg).value;
    };
    // PV(eps) = PV + c1 eps + c2 eps^2 + ...: two-point Richardson
    const cplx a = at(1e-3);
    const cplx b = at(5e-4);
    return 2.0 * b - a;
}

}  // namespace

TEST_CASE("pair_power: direct regime and support bookkeeping") {
    auto g = make_gauss_hermite(1.0, 0);
    // Int_0^inf e^{-x^2/2} dx = sqrt(pi/2)
    CHECK(std::abs(pair_power(g, cplx(0.0), Side::Plus) - std::sqrt(M_PI / 2.0)) < 1e-10);

    auto b12 = make_bump(1.0, 2.0, 1.0);
    CHECK(std::abs(pair_power(b12, cplx(0.7, 0.3), Side::Minus)) == 0.0);

    // for Re(lambda) > -1 the regularization must agree with naive quadrature
    auto b = make_bump(-0.5, 1.5, 1.0);
    for (cplx lam : {cplx(0.4, 0.0), cplx(-0.6, 1.2), cplx(2.0, -3.0)}) {
        QuadratureConfig ts;
        ts.scheme_hint = QuadratureConfig::Scheme::tanh_sinh_endpoint;
        auto direct = integrate(
            [&](double x) -> cplx { return std::exp(lam * std::log(x)) * b(x); }, 0.0, 1.5, ts);
        CHECK(std::abs(pair_power(b, lam, Side::Plus) - direct.value) < 1e-10);
    }
}

TEST_CASE("pair_power matches the literal formula oracle at lambda = -1.5") {
    auto b = make_bump(-1.0, 1.0, 1.0);
    const cplx lam(-1.5, 0.0);
    const cplx lib = pair_power(b, lam, Side::Plus);
    const cplx oracle = pole_formula_oracle(b, lam, 1);
    CHECK(std::abs(lib - oracle) < 1e-9);

    // a second continuation depth on an asymmetric bump; the literal
    // formula is integrated in u = log x with the cutoff balancing Taylor
    // tail truncation against cancellation noise in phi - T
    auto s = make_bump(-0.5, 1.5, 1.0);
    const cplx lam2(-2.3, 0.0);
    {
        const int n = 3;
        Jet j = s.jet(0.0, n - 1);
        auto near = [&](double u) -> cplx {
            const double x = std::exp(u);
            cplx t{};
            for (int k = n - 1; k >= 0; --k) t = t * x + j.coeff(k);
            return std::exp((lam2 + 1.0) * u) * (s(x) - t);
        };
        QuadratureConfig cfg;
        cfg.abs_tol = 1e-12;
        cplx oracle = integrate(near, -11.5, 0.0, cfg).value;
        auto far = [&](double x) -> cplx { return std::exp(lam2 * std::log(x)) * s(x); };
        oracle += integrate(far, 1.0, 1.5, cfg).value;
        for (int k = 1; k <= n; ++k)
            oracle += j.coeff(k - 1) / (lam2 + static_cast<double>(k));
        CHECK(std::abs(pair_power(s, lam2, Side::Plus) - oracle) < 5e-9);
    }
}

TEST_CASE("subtraction-order independence away from poles") {
    auto b = make_bump(-0.5, 1.5, 1.0);
    for (cplx lam : {cplx(-1.5, 0.4), cplx(-3.2, 0.0), cplx(-0.4, -1.1)}) {
        const cplx guard = detail::power_pairing_plus(b, lam, {});
        const cplx deeper = detail::power_pairing_plus(b, lam, {}, 0, 6);
        CHECK(std::abs(guard - deeper) < 1e-10);
    }
}

TEST_CASE("pair_power raises a pole error carrying the residue") {
    auto b = make_bump(-0.5, 1.5, 1.0);
    try {
        pair_power(b, cplx(-2.0, 0.0), Side::Plus);
        FAIL("expected PoleError");
    } catch (const PoleError& e) {
        CHECK(e.index == 2);
        CHECK(std::abs(e.residue - derivative_at(b, 0.0, 1)) < 1e-12);
    }
}

TEST_CASE("residue_power closed forms") {
    auto g = make_gauss_hermite(1.0, 0);
    CHECK(std::abs(residue_power(g, 1, Side::Plus) - 1.0) < 1e-14);  // phi(0)=1
    // odd function vanishes at 0
    auto odd = make_gauss_hermite(1.0, 1);
    CHECK(std::abs(residue_power(odd, 1, Side::Plus)) < 1e-14);
    CHECK(std::abs(residue_power(odd, 1, Side::Minus)) < 1e-14);
    // k=3, Minus: (-1)^2 phi''(0)/2! = -1/2 for the unit Gaussian
    CHECK(std::abs(residue_power(g, 3, Side::Minus) - cplx(-0.5)) < 1e-14);
}

TEST_CASE("pole structure: contour integrals around lambda=-k match residues") {
    auto b = make_bump(-0.5, 1.5, 1.0);
    QuadratureConfig cfg;
    for (Side side : {Side::Plus, Side::Minus}) {
        for (int k = 1; k <= 4; ++k) {
            Contour c{cplx(-static_cast<double>(k), 0.0), 0.3, 64};
            const cplx got = contour_integral(
                [&](cplx lam) { return pair_power(b, lam, side, cfg); }, c, 1e-10);
            const cplx want = residue_power(b, k, side);
            CHECK(std::abs(got - want) <= 1e-8 * std::abs(want));
        }
    }
}

TEST_CASE("pair_abs_power parities") {
    auto even = make_gauss_hermite(1.0, 0);
    CHECK(std::abs(pair_abs_power(even, cplx(0.3), Parity::Odd)) < 1e-12);

    auto b = make_bump(-1.0, 1.0, 1.0);
    CHECK(std::abs(pair_abs_power(b, cplx(0.0), Parity::Even) - moment(b, 0)) < 1e-10);

    auto wide = make_bump(-2.0, 2.0, 1.0);
    const cplx lam(0.7, 0.0);
    const cplx plus = pole_formula_oracle(wide, lam, 1);
    const cplx minus = pole_formula_oracle(reflected(wide), lam, 1);
    CHECK(std::abs(pair_abs_power(wide, lam, Parity::Even) - (plus + minus)) < 1e-10);
}

TEST_CASE("pair_delta_derivative") {
    auto g = make_gauss_hermite(1.0, 0);
    CHECK(std::abs(pair_delta_derivative(g, 0) - 1.0) < 1e-14);
    auto x_gauss = make_gauss_hermite(1.0, 1);
    CHECK(std::abs(pair_delta_derivative(x_gauss, 1) - cplx(-1.0)) < 1e-14);

    auto b = make_bump(-1.0, 1.0, 1.0);
    const cplx fd = oracles::fd_derivative_auto(b, 0.0, 4);
    CHECK(std::abs(pair_delta_derivative(b, 4) - fd) < 1e-7 * std::abs(fd));
}

TEST_CASE("boundary power: trivial alpha and Sokhotski-Plemelj") {
    auto b = make_bump(-0.5, 1.5, 1.0);
    CHECK(std::abs(pair_boundary_power(b, cplx(0.0), BoundarySign::PlusI0) - moment(b, 0)) <
          1e-10);

    // (k + i0)^{-1}: PV - i pi phi(0); (k - i0)^{-1}: PV + i pi phi(0)
    const cplx pv = pv_oracle(b);
    const cplx phi0 = b(0.0);
    const cplx up = pair_boundary_power(b, cplx(-1.0), BoundarySign::PlusI0);
    const cplx dn = pair_boundary_power(b, cplx(-1.0), BoundarySign::MinusI0);
    CHECK(std::abs(up - (pv - cplx(0.0, M_PI) * phi0)) < 1e-8);
    CHECK(std::abs(dn - (pv + cplx(0.0, M_PI) * phi0)) < 1e-8);

    // Gaussian: PV term vanishes by parity
    auto g = make_gauss_hermite(1.0, 0);
    CHECK(std::abs(pair_boundary_power(g, cplx(-1.0), BoundarySign::PlusI0) -
                   cplx(0.0, -M_PI)) < 1e-9);
}

TEST_CASE("boundary power: continuity across the limit-path switch") {
    auto b = make_bump(-0.5, 1.5, 1.0);
    // alpha = -2 + 0.03 triggers the pole-free limit path; the direct
    // two-term combination is still finite there and must agree
    const cplx alpha(-2.0 + 0.03, 0.0);
    const cplx via_limit = pair_boundary_power(b, alpha, BoundarySign::PlusI0);
    const cplx direct = pair_power(b, alpha, Side::Plus) +
                        std::exp(cplx(0.0, 1.0) * alpha * M_PI) *
                            pair_power(b, alpha, Side::Minus);
    CHECK(std::abs(via_limit - direct) < 1e-8);
}

TEST_CASE("boundary power is pole-free around alpha = -2") {
    auto b = make_bump(-0.5, 1.5, 1.0);
    Contour c{cplx(-2.0, 0.0), 0.3, 64};
    const cplx loop = contour_integral(
        [&](cplx a) { return pair_boundary_power(b, a, BoundarySign::PlusI0); }, c, 1e-9);
    CHECK(std::abs(loop) < 1e-8);
}

TEST_CASE("fourier power pairing: duality against the transform of phi") {
    auto b = make_bump(-1.0, 1.0, 1.0);
    auto Fb = make_fourier_of(b);
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-11;
    cfg.rel_tol = 1e-11;
    const cplx lams[] = {cplx(0.3, 0.0), cplx(-0.7, 0.0), cplx(1.4, 0.0), cplx(-0.3, 0.5),
                         cplx(0.9, -0.6)};
    for (Side side : {Side::Plus, Side::Minus}) {
        for (cplx lam : lams) {
            const cplx lhs = fourier_power_pairing(b, lam, side, cfg);
            const cplx rhs = pair_power(Fb, lam, side, cfg);
            INFO("side=" << (side == Side::Plus ? "+" : "-") << " lambda=" << lam.real() << "+"
                         << lam.imag() << "i");
            CHECK(std::abs(lhs - rhs) < 1e-8);
        }
    }
}

TEST_CASE("fourier power pairing: composition identity at lambda = 0") {
    auto g = make_gauss_hermite(1.0, 0);
    const cplx lhs = fourier_power_pairing(g, cplx(0.0), Side::Plus);
    const cplx rhs = (cplx(0.0, 1.0) / std::sqrt(2.0 * M_PI)) *
                     pair_boundary_power(g, cplx(-1.0), BoundarySign::PlusI0);
    CHECK(std::abs(lhs - rhs) < 1e-10);
}

TEST_CASE("fourier integer pairing: parity and half-line completeness") {
    auto g = make_gauss_hermite(1.0, 0);
    // even phi: the finite-part term dies, leaving pi phi(0)/sqrt(2 pi)
    const cplx v = fourier_power_integer_pairing(g, 0, Side::Plus);
    CHECK(std::abs(v - M_PI * g(0.0) / std::sqrt(2.0 * M_PI)) < 1e-9);

    // F[x^0_+] + F[x^0_-] = F[1] = sqrt(2 pi) delta
    auto b = make_bump(-0.5, 1.5, 1.0);
    const cplx sum = fourier_power_integer_pairing(b, 0, Side::Plus) +
                     fourier_power_integer_pairing(b, 0, Side::Minus);
    CHECK(std::abs(sum - std::sqrt(2.0 * M_PI) * b(0.0)) < 1e-9);
}

TEST_CASE("fourier integer pairing: duality oracle at n = 2") {
    auto b = make_bump(-1.0, 1.0, 1.0);
    auto Fb = make_fourier_of(b);
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-9;
    cfg.rel_tol = 1e-9;
    cfg.max_subdivisions = 20000;
    for (Side side : {Side::Plus, Side::Minus}) {
        const cplx lhs = fourier_power_integer_pairing(b, 2, side, cfg);
        // <x^2_side, F[phi]> by direct quadrature of the transform; the
        // x^2-weighted tail of F[bump] needs a long range before it dies
        const double sgn = side == Side::Plus ? 1.0 : -1.0;
        auto integrand = [&](double x) -> cplx { return x * x * Fb(sgn * x); };
        const cplx rhs = integrate_oscillatory(integrand, 0.0, 900.0, 1.0, cfg).value;
        CHECK(std::abs(lhs - rhs) < 1e-7);
    }
}
