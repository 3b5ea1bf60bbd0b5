#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "kirlab/lattice.hpp"

using namespace kirlab;

TEST_SUITE("lattice") {

TEST_CASE("fd_kirchhoff of the zero field") {
    const LatticeSpec spec(2, 0.25, 4);
    const TwoPointField zero([](const Point&, const Point&) { return 0.0; });
    CHECK(fd_kirchhoff(spec, zero, {0, 0}) == 0.0);
}

TEST_CASE("fd_kirchhoff, n=1, h=1, Phi == 1 gives 2") {
    // Two neighbor terms, each 1, divided by h² = 1.
    const LatticeSpec spec(1, 1.0, 3);
    const TwoPointField one([](const Point&, const Point&) { return 1.0; });
    CHECK(fd_kirchhoff(spec, one, {0}) == doctest::Approx(2.0));
}

TEST_CASE("fd_kirchhoff, n=2, h=0.5, Phi = y1-x1 cancels at the origin") {
    const LatticeSpec spec(2, 0.5, 3);
    const TwoPointField phi([](const Point& x, const Point& y) { return y[0] - x[0]; });
    CHECK(fd_kirchhoff(spec, phi, {0, 0}) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("fd boundary errors name the axis") {
    const LatticeSpec spec(1, 1.0, 2);
    const TwoPointField one([](const Point&, const Point&) { return 1.0; });
    CHECK_THROWS_AS(fd_kirchhoff(spec, one, {2}), ValidationError);
    CHECK_THROWS_AS(fd_laplacian(spec, ScalarField([](const Point&) { return 1.0; }), {2}),
                    ValidationError);
}

TEST_CASE("fd_laplacian of |x|^2 equals 2n exactly") {
    const ScalarField sq([](const Point& x) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.dim(); ++i) s += x[i] * x[i];
        return s;
    });
    for (int n : {1, 2, 3}) {
        for (double h : {1.0, 0.1, 0.01}) {
            const LatticeSpec spec(n, h, 3);
            LatticeIndex k(n, 1);
            const double v = fd_laplacian(spec, sq, k);
            CHECK(std::abs(v - 2.0 * n) <= 1e-12 * 2.0 * n);
        }
    }
}

TEST_CASE("fd_laplacian of constants vanishes") {
    const LatticeSpec spec(2, 0.3, 3);
    CHECK(fd_laplacian(spec, ScalarField([](const Point&) { return 9.0; }), {1, -1}) ==
          0.0);
}

TEST_CASE("fd_laplacian of sin at 0 is 0 up to O(h^2)") {
    const LatticeSpec spec(1, 0.1, 3);
    const ScalarField f = ScalarField::of_1d([](double x) { return std::sin(x); });
    CHECK(std::abs(fd_laplacian(spec, f, {0})) <= 1e-3);
}

TEST_CASE("fd_laplacian equals fd_kirchhoff of grad0") {
    const LatticeSpec spec(2, 0.2, 4);
    const ScalarField f([](const Point& x) { return std::sin(x[0]) * std::cos(x[1]); });
    const LatticeIndex k{1, -2};
    CHECK(fd_laplacian(spec, f, k) ==
          doctest::Approx(fd_kirchhoff(spec, grad0(f), k)).epsilon(1e-12));
}

TEST_CASE("fd operators are translation invariant") {
    const LatticeSpec spec(1, 0.5, 8);
    const ScalarField f = ScalarField::of_1d([](double x) { return std::exp(-x * x); });
    const int shift = 3;
    const ScalarField shifted_f = ScalarField::of_1d(
        [](double x) { return std::exp(-(x - 1.5) * (x - 1.5)); }); // shift·h = 1.5
    const double a = fd_laplacian(spec, f, {1});
    const double b = fd_laplacian(spec, shifted_f, {1 + shift});
    CHECK(a == doctest::Approx(b).epsilon(1e-14));
}

TEST_CASE("fd convergence order >= 1.9 on a C^4 field") {
    const ScalarField f = ScalarField::of_1d([](double x) { return std::cos(2.0 * x); });
    const double exact = -4.0; // f'' at 0
    std::vector<double> errs;
    for (double h : {0.08, 0.04, 0.02}) {
        const LatticeSpec spec(1, h, 2);
        errs.push_back(std::abs(fd_laplacian(spec, f, {0}) - exact));
    }
    for (std::size_t i = 1; i < errs.size(); ++i)
        CHECK(std::log2(errs[i - 1] / errs[i]) >= 1.9);
}

TEST_CASE("frac_lattice_constant brackets the analytic zeta values") {
    // n=1: c(α) = 2ζ(1+α); α=1 → π²/3, α=3 → π⁴/45.
    const double zeta2 = std::numbers::pi * std::numbers::pi / 6.0;
    const double zeta4 = std::pow(std::numbers::pi, 4) / 90.0;
    SUBCASE("alpha = 1") {
        const Bracket b = frac_lattice_constant(1, 1.0, 2000);
        CHECK(b.contains(2.0 * zeta2));
        CHECK(b.half_width() <= 1e-3);
    }
    SUBCASE("alpha = 3 (relaxed range)") {
        const Bracket b = frac_lattice_constant(1, 3.0, 400);
        CHECK(b.contains(2.0 * zeta4));
        CHECK(b.half_width() <= 1e-6);
    }
}

TEST_CASE("frac_lattice_constant partial sums decrease in alpha") {
    const Bracket lo = frac_lattice_constant(1, 0.7, 200);
    const Bracket hi = frac_lattice_constant(1, 1.3, 200);
    CHECK(lo.midpoint() > hi.midpoint());
}

TEST_CASE("frac_lattice_constant bracket contains the refinement at 2R") {
    for (int n : {1, 2}) {
        for (double alpha : {0.5, 1.0, 1.5}) {
            const Bracket coarse = frac_lattice_constant(n, alpha, 60);
            const Bracket fine = frac_lattice_constant(n, alpha, 120);
            CHECK(coarse.contains(fine.midpoint()));
        }
    }
}

TEST_CASE("frac spec validation") {
    CHECK_THROWS_AS(FracSpec::make(1, 2.5, 10), ValidationError);
    CHECK_NOTHROW(FracSpec::make_relaxed(1, 2.5, 10));
    CHECK_THROWS_AS(FracSpec::make(1, -0.1, 10), ValidationError);
}

TEST_CASE("frac_laplacian of a constant is exactly zero") {
    const LatticeSpec spec(1, 1.0, 10);
    const FracSpec fs = FracSpec::make(1, 1.0, 50);
    ScalarField f([](const Point&) { return 2.0; });
    f.sup_bound = 2.0;
    const auto out = frac_laplacian(spec, fs, f, {0});
    CHECK(out.value == 0.0);
}

TEST_CASE("frac_laplacian of the indicator of {0}") {
    // h=1, α=1. At k=1 the only nonzero neighbor term is f(0)/1² = 1 and the
    // −f(1)-tail vanishes; at k=0 the value is −c(1).
    const LatticeSpec spec(1, 1.0, 10);
    const FracSpec fs = FracSpec::make(1, 1.0, 4000);
    ScalarField f = ScalarField::of_1d([](double x) { return x == 0.0 ? 1.0 : 0.0; });
    f.sup_bound = 1.0;
    f.support_radius = 0.5;

    const auto at1 = frac_laplacian(spec, fs, f, {1});
    CHECK(at1.value == doctest::Approx(1.0).epsilon(1e-6));

    const auto at0 = frac_laplacian(spec, fs, f, {0});
    const Bracket c1 = frac_lattice_constant(1, 1.0, 4000);
    CHECK(at0.value == doctest::Approx(-c1.midpoint()).epsilon(1e-3));
    CHECK(std::abs(at0.value + c1.midpoint()) <= at0.bound + c1.half_width());
}

TEST_CASE("frac_laplacian rejects unbounded fields") {
    const LatticeSpec spec(1, 1.0, 5);
    const FracSpec fs = FracSpec::make(1, 0.5, 10);
    const ScalarField f = ScalarField::of_1d([](double x) { return x; });
    CHECK_THROWS_AS(frac_laplacian(spec, fs, f, {0}), ValidationError);
}

TEST_CASE("frac maximum principle at a strict global maximum") {
    std::mt19937 rng(61);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const LatticeSpec spec(1, 0.5, 30);
    const FracSpec fs = FracSpec::make(1, 0.8, 30);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> vals(61);
        for (double& v : vals) v = dist(rng);
        const int peak = trial % 41 - 20;
        vals[static_cast<std::size_t>(peak + 30)] = 1.5; // strict max over the window
        ScalarField f([vals](const Point& x) {
            const int idx = static_cast<int>(std::lround(x[0] / 0.5)) + 30;
            if (idx < 0 || idx >= static_cast<int>(vals.size())) return 0.0;
            return vals[static_cast<std::size_t>(idx)];
        });
        f.sup_bound = 1.5;
        const auto out = frac_laplacian(spec, fs, f, {peak});
        CHECK(out.value <= 1e-12);
    }
}

TEST_CASE("frac translation invariance") {
    const LatticeSpec spec(1, 1.0, 40);
    const FracSpec fs = FracSpec::make(1, 0.6, 12);
    ScalarField f = ScalarField::of_1d([](double x) { return 1.0 / (1.0 + x * x); });
    f.sup_bound = 1.0;
    ScalarField g = ScalarField::of_1d(
        [](double x) { return 1.0 / (1.0 + (x - 7.0) * (x - 7.0)); });
    g.sup_bound = 1.0;
    const auto a = frac_laplacian(spec, fs, f, {2});
    const auto b = frac_laplacian(spec, fs, g, {9});
    CHECK(a.value == doctest::Approx(b.value).epsilon(1e-14));
}

TEST_CASE("frac harmonicity checks") {
    const LatticeSpec spec(1, 1.0, 10);
    const FracSpec fs = FracSpec::make(1, 1.0, 600);
    SUBCASE("constants are harmonic within the truncation bound") {
        ScalarField f([](const Point&) { return 1.0; });
        f.sup_bound = 1.0;
        const auto rep = frac_is_harmonic(spec, fs, f, {0}, 1e-9);
        CHECK(rep.harmonic);
        CHECK(rep.deviation <= rep.bound + 1e-9);
    }
    SUBCASE("indicator of {0} at k=0 deviates by 1") {
        ScalarField f = ScalarField::of_1d([](double x) { return x == 0.0 ? 1.0 : 0.0; });
        f.sup_bound = 1.0;
        const auto rep = frac_is_harmonic(spec, fs, f, {0}, 1e-3);
        CHECK_FALSE(rep.harmonic);
        CHECK(rep.deviation == doctest::Approx(1.0).epsilon(1e-6));
    }
    SUBCASE("odd field about the center is harmonic there") {
        ScalarField f = ScalarField::of_1d([](double x) {
            if (std::abs(x) > 5.5) return 0.0;
            return x / 5.0;
        });
        f.sup_bound = 1.1;
        // Window symmetric about k=0 and f odd: the mean of neighbors cancels.
        const FracSpec small = FracSpec::make(1, 1.0, 5);
        const auto rep = frac_is_harmonic(spec, small, f, {0}, 1e-12);
        CHECK(rep.deviation <= rep.bound + 1e-12);
    }
}

} // TEST_SUITE
