#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "kirlab/continuum.hpp"
#include "oracle.hpp"

using namespace kirlab;

namespace {

/// C^∞ bump exp(−1/(1−t²)) on (−1,1), scaled to peak 1.
double mollifier(double t) {
    const double u = 1.0 - t * t;
    if (u <= 0.0) return 0.0;
    return std::exp(1.0 - 1.0 / u);
}

double mollifier_d1(double t) {
    const double u = 1.0 - t * t;
    if (u <= 0.0) return 0.0;
    return mollifier(t) * (-2.0 * t / (u * u));
}

TwoPointField smooth_grad0_bump() {
    // Φ(x,y) = f(y) − f(x) with f a mollifier bump.
    TwoPointField phi([](const Point& x, const Point& y) {
        return mollifier(y[0]) - mollifier(x[0]);
    });
    phi.sup_bound = 2.0;
    phi.y_grad_bound = 2.1; // sup |f'| ≈ 1.63 < 2.1
    phi.y_hess_bound = 12.0;
    return phi;
}

} // namespace

TEST_SUITE("continuum") {

TEST_CASE("classical_kir on (y-x)^2 equals 2 everywhere") {
    const TwoPointField phi([](const Point& x, const Point& y) {
        const double d = y[0] - x[0];
        return d * d;
    });
    for (double x : {-2.0, 0.0, 0.7})
        CHECK(classical_kir(phi, Point::scalar(x)) == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("classical_kir of y-independent fields vanishes") {
    const TwoPointField phi([](const Point& x, const Point&) { return std::sin(x[0]); });
    CHECK(classical_kir(phi, Point::scalar(0.4)) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("classical_kir recovers the Laplacian of |x|^2 in 2D") {
    ScalarField f([](const Point& p) { return p[0] * p[0] + p[1] * p[1]; });
    SUBCASE("numeric Hessian path") {
        const TwoPointField phi = grad0(f);
        CHECK(classical_kir(phi, Point{0.3, -1.2}) == doctest::Approx(4.0).epsilon(1e-7));
    }
    SUBCASE("analytic Hessian path") {
        f.with_hessian([](const Point&) {
            return Matrix{{2.0, 0.0}, {0.0, 2.0}};
        });
        const TwoPointField phi = grad0(f);
        CHECK(classical_kir(phi, Point{0.3, -1.2}) == 4.0);
    }
}

TEST_CASE("frac_kir_regular rejects the PV regime and vice versa") {
    const TwoPointField phi = smooth_grad0_bump();
    CHECK_THROWS_WITH_AS(
        frac_kir_regular(FracKernelSpec::make(1, 0.6), phi, Point::scalar(0.0)),
        doctest::Contains("frac_kir_pv"), ValidationError);
    CHECK_THROWS_WITH_AS(
        frac_kir_pv(FracKernelSpec::make(1, 0.3), phi, Point::scalar(0.0)),
        doctest::Contains("frac_kir_regular"), ValidationError);
}

TEST_CASE("frac_kir_regular of y-independent fields is exactly zero") {
    TwoPointField phi([](const Point& x, const Point&) { return std::cos(x[0]); });
    phi.y_grad_bound = 0.0;
    const auto out = frac_kir_regular(FracKernelSpec::make(1, 0.25), phi,
                                      Point::scalar(0.3));
    CHECK(out.value == 0.0);
}

TEST_CASE("frac_kir_regular is homogeneous in the field") {
    const TwoPointField base = smooth_grad0_bump();
    TwoPointField scaled([base](const Point& x, const Point& y) {
        return -3.5 * base(x, y);
    });
    scaled.sup_bound = 7.0;
    scaled.y_grad_bound = 7.4;
    scaled.support_radius = base.support_radius;
    const FracKernelSpec spec = FracKernelSpec::make(1, 0.2);
    const Point x = Point::scalar(0.15);
    const double a = frac_kir_regular(spec, base, x).value;
    const double b = frac_kir_regular(spec, scaled, x).value;
    CHECK(b == doctest::Approx(-3.5 * a).epsilon(1e-12));
}

TEST_CASE("frac_kir_regular agrees with the adaptive oracle (1e-5)") {
    const TwoPointField phi = smooth_grad0_bump();
    const auto section = [](double a, double b) {
        return mollifier(b) - mollifier(a);
    };
    for (double s : {0.1, 0.25, 0.4}) {
        const FracKernelSpec spec = FracKernelSpec::make(1, s);
        for (double x : {0.0, 0.4, -0.6}) {
            const auto got = frac_kir_regular(spec, phi, Point::scalar(x));
            const double want =
                oracle::frac_kir_1d(section, x, s, std::abs(x) + 2.0, 1e-10);
            CHECK(std::abs(got.value - want) <= 1e-5 * std::max(1.0, std::abs(want)));
        }
    }
}

TEST_CASE("frac_kir_regular in 2D reduces to the radial integral at the origin") {
    // Radial Φ(x,y) = g(|y|) − g(|x|) at x = 0: the polar form collapses to
    // 2π ∫ (g(r) − g(0)) r^{−1−2s} dr, which the 1D oracle integrates.
    const auto g = [](double r) { return mollifier(r); };
    TwoPointField phi([g](const Point& x, const Point& y) {
        return g(norm(y)) - g(norm(x));
    });
    phi.sup_bound = 2.0;
    phi.y_grad_bound = 2.1;
    for (double s : {0.2, 0.4}) {
        const FracKernelSpec spec = FracKernelSpec::make(2, s);
        const auto got = frac_kir_regular(spec, phi, Point{0.0, 0.0});
        // 1D reduction: the paired oracle integrand at x=0 doubles g(t)−g(0),
        // so scale by (2π)/2 = π.
        const double radial = oracle::frac_kir_1d(
            [g](double, double b) { return g(std::abs(b)) - g(0.0); }, 0.0, s, 2.0,
            1e-11);
        const double want = std::numbers::pi * radial;
        CHECK(got.value == doctest::Approx(want).epsilon(1e-5));
    }
}

TEST_CASE("frac_kir_regular respects the a priori bound") {
    const TwoPointField phi = smooth_grad0_bump();
    std::mt19937 rng(113);
    std::uniform_real_distribution<double> xdist(-1.5, 1.5);
    for (double s : {0.1, 0.25, 0.4}) {
        const FracKernelSpec spec = FracKernelSpec::make(1, s);
        const double bound = frac_bound(spec, phi);
        for (int i = 0; i < 8; ++i) {
            const auto out = frac_kir_regular(spec, phi, Point::scalar(xdist(rng)));
            CHECK(std::abs(out.value) <= bound);
        }
    }
}

TEST_CASE("frac_bound arithmetic spot values") {
    // n=1 (ω₀=2), ‖Φ‖=1, ‖∇Φ‖=1: 2(1/(1−2s) + 1/s).
    TwoPointField phi([](const Point&, const Point&) { return 0.0; });
    phi.sup_bound = 1.0;
    phi.y_grad_bound = 1.0;
    CHECK(frac_bound(FracKernelSpec::make(1, 0.25), phi) == doctest::Approx(12.0));
    const double at01 = frac_bound(FracKernelSpec::make(1, 0.1), phi);
    const double at04 = frac_bound(FracKernelSpec::make(1, 0.4), phi);
    CHECK(at01 == doctest::Approx(22.5));
    CHECK(at04 == doctest::Approx(15.0));
    CHECK(at01 > at04);
}

TEST_CASE("frac_kir_pv: PV of odd sections is the far field only") {
    // Φ(x,y) = (y−x)·bump(y−x): odd about the diagonal, so the near PV part
    // cancels by symmetry and only the far field survives; here the bump
    // vanishes beyond |z| ≥ 1, so the whole limit is 0.
    TwoPointField phi([](const Point& x, const Point& y) {
        const double z = y[0] - x[0];
        return z * mollifier(z);
    });
    phi.sup_bound = 1.0;
    phi.y_grad_bound = 2.0;
    phi.y_hess_bound = 10.0;
    phi.support_radius = 50.0; // sections vanish for |z| ≥ 1 anyway
    const FracKernelSpec spec = FracKernelSpec::make(1, 0.75);
    const auto rep = frac_kir_pv(spec, phi, Point::scalar(0.0));
    CHECK(std::abs(rep.value) <= 1e-10);
    for (double psi : rep.psi) CHECK(std::abs(psi) <= 1e-10);
}

TEST_CASE("frac_kir_pv matches the oracle and shows the 2(1-s) rate") {
    const TwoPointField phi = smooth_grad0_bump();
    const auto section = [](double a, double b) {
        return mollifier(b) - mollifier(a);
    };
    for (double s : {0.5, 0.6, 0.75, 0.9}) {
        FracKernelSpec spec = FracKernelSpec::make(1, s);
        spec.eps_levels = 16;
        const Point x = Point::scalar(0.0);
        const auto rep = frac_kir_pv(spec, phi, x);
        const double want = oracle::frac_kir_1d(section, 0.0, s, 2.0, 1e-11);
        CHECK(std::abs(rep.value - want) <= 1e-4 * std::max(1.0, std::abs(want)));
        CHECK(std::abs(rep.observed_rate - 2.0 * (1.0 - s)) <= 0.15);
    }
}

TEST_CASE("frac_kir_pv annihilates y-independent fields exactly") {
    TwoPointField phi([](const Point& x, const Point&) { return 1.0 + x[0]; });
    const FracKernelSpec spec = FracKernelSpec::make(1, 0.6);
    const auto rep = frac_kir_pv(spec, phi, Point::scalar(0.4));
    CHECK(rep.value == 0.0);
    for (double psi : rep.psi) CHECK(psi == 0.0);
}

TEST_CASE("regime continuity diagnostic across s = 1/2") {
    // Matched evaluations at s = 0.49 and 0.51 on a smooth field should stay
    // within a few percent of each other (a sanity diagnostic, not an
    // identity).
    const TwoPointField phi = smooth_grad0_bump();
    const Point x = Point::scalar(0.1);
    const double below = frac_kir_regular(FracKernelSpec::make(1, 0.49), phi, x).value;
    const double above = frac_kir_pv(FracKernelSpec::make(1, 0.51), phi, x).value;
    CHECK(std::abs(below - above) < 0.05 * std::max(std::abs(below), std::abs(above)));
}

TEST_CASE("operators are safe to call concurrently") {
    const TwoPointField phi = smooth_grad0_bump();
    const FracKernelSpec spec = FracKernelSpec::make(1, 0.25);
    const double serial = frac_kir_regular(spec, phi, Point::scalar(0.2)).value;
    std::vector<double> results(8, 0.0);
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < results.size(); ++t)
        pool.emplace_back([&, t] {
            results[t] = frac_kir_regular(spec, phi, Point::scalar(0.2)).value;
        });
    for (auto& th : pool) th.join();
    for (double v : results) CHECK(v == serial);
}

TEST_CASE("hilbert_pv on the Cauchy kernel") {
    // H(1/(1+y²))(x) = πx/(1+x²) in this (un-normalized) convention.
    ScalarField cauchy = ScalarField::of_1d([](double y) { return 1.0 / (1.0 + y * y); });
    SUBCASE("x = 1 gives π/2") {
        CHECK(hilbert_pv(cauchy, 1.0) ==
              doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-8));
    }
    SUBCASE("x = 0 gives 0 by oddness") {
        CHECK(hilbert_pv(cauchy, 0.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
    }
    SUBCASE("general x against the closed form") {
        for (double x : {0.5, 2.0, -1.7}) {
            const double want = std::numbers::pi * x / (1.0 + x * x);
            CHECK(hilbert_pv(cauchy, x) == doctest::Approx(want).epsilon(1e-8));
        }
    }
}

TEST_CASE("hilbert_pv near field of an even function vanishes termwise") {
    // f even about x: the paired integrand (f(x−t)−f(x+t))/t is identically 0.
    const double x0 = 0.8;
    ScalarField f = ScalarField::of_1d(
        [x0](double y) { return std::exp(-(y - x0) * (y - x0)); });
    f.support_radius = 40.0;
    CHECK(hilbert_pv(f, x0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("hilbert_kir_eps and its limit") {
    // Φ(x,y) = φ(x)/(1+y²) with φ(x) = exp(−x²/4).
    const auto phi_x = [](double x) { return std::exp(-x * x / 4.0); };
    TwoPointField phi([phi_x](const Point& x, const Point& y) {
        return phi_x(x[0]) / (1.0 + y[0] * y[0]);
    });

    SUBCASE("zero field gives zero") {
        const TwoPointField zero([](const Point&, const Point&) { return 0.0; });
        CHECK(hilbert_kir_eps(PVHilbertSpec(0.1), zero, 1.0) == 0.0);
    }
    SUBCASE("limit value x²φ(x)π/(1+x²)") {
        for (double x : {0.5, 1.0, 2.0}) {
            const double want = x * x * phi_x(x) * std::numbers::pi / (1.0 + x * x);
            CHECK(hilbert_kir_limit(phi, x) == doctest::Approx(want).epsilon(1e-6));
        }
    }
    SUBCASE("Kir_eps converges to the limit along the eps ladder") {
        const double x = 1.0;
        const double limit = hilbert_kir_limit(phi, x);
        double prev_gap = std::numeric_limits<double>::infinity();
        for (double eps : {0.4, 0.2, 0.1, 0.05, 0.025}) {
            const double gap = std::abs(hilbert_kir_eps(PVHilbertSpec(eps), phi, x) - limit);
            CHECK(gap <= prev_gap + 1e-12);
            prev_gap = gap;
        }
        CHECK(prev_gap <= 2e-2);
    }
    SUBCASE("inside the regularization window the factor is eps·sign(x)") {
        const double eps = 0.5;
        const double x = 0.25; // |x| <= eps
        const double integral = oracle::adaptive_simpson(
            [&](double t) {
                return (phi(Point::scalar(x), Point::scalar(x - t)) -
                        phi(Point::scalar(x), Point::scalar(x + t))) / t;
            },
            eps, 500.0, 1e-11);
        CHECK(hilbert_kir_eps(PVHilbertSpec(eps), phi, x) ==
              doctest::Approx(eps * integral).epsilon(1e-6));
        CHECK(hilbert_kir_eps(PVHilbertSpec(eps), phi, 0.0) == 0.0);
    }
    SUBCASE("outside the window the factor is x") {
        const double eps = 0.05, x = 1.0;
        const double integral = oracle::adaptive_simpson(
            [&](double t) {
                return (phi(Point::scalar(x), Point::scalar(x - t)) -
                        phi(Point::scalar(x), Point::scalar(x + t))) / t;
            },
            eps, 500.0, 1e-11);
        CHECK(hilbert_kir_eps(PVHilbertSpec(eps), phi, x) ==
              doctest::Approx(x * integral).epsilon(1e-6));
    }
}

TEST_CASE("hilbert_laplacian drops the declared constant part") {
    const ScalarField c([](const Point&) { return 3.25; });
    CHECK(hilbert_laplacian(c, 1.3, 3.25) == 0.0);
}

} // TEST_SUITE
