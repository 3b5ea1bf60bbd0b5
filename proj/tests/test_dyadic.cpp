#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "kirlab/dyadic.hpp"
#include "oracle.hpp"

using namespace kirlab;

namespace {

/// Brute-force dyadic metric: scan interval levels directly.
double rho_oracle(double x, double y) {
    if (x == y) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (int j = -40; j <= 80; ++j) {
        const double len = std::ldexp(1.0, -j);
        const double left = std::floor(x / len) * len;
        if (y >= left && y < left + len) best = std::min(best, len);
    }
    return best;
}

/// Ball measure |B_ρ(x,r)| by the annulus description.
double ball_measure_oracle(double r) {
    // largest power of two strictly below r
    int m = 0;
    while (std::ldexp(1.0, -m) >= r) ++m;
    while (std::ldexp(1.0, -m + 1) < r) --m;
    return std::ldexp(1.0, -m);
}

} // namespace

TEST_SUITE("dyadic") {

TEST_CASE("rho basics") {
    CHECK(rho(0.37, 0.37) == 0.0);
    CHECK(rho(0.1, 0.3) == doctest::Approx(0.5));
    CHECK(rho(0.25, 0.75) == doctest::Approx(1.0));
    CHECK_THROWS_AS(rho(-0.1, 0.5), ValidationError);
}

TEST_CASE("rho agrees with the interval-scan oracle") {
    std::mt19937 rng(71);
    std::uniform_real_distribution<double> dist(0.0, 10.0);
    for (int i = 0; i < 200; ++i) {
        const double x = dist(rng), y = dist(rng);
        CHECK(rho(x, y) == rho_oracle(x, y));
    }
}

TEST_CASE("rho dominates the euclidean distance and is an ultrametric") {
    std::mt19937 rng(73);
    std::uniform_real_distribution<double> dist(0.0, 8.0);
    for (int i = 0; i < 300; ++i) {
        const double x = dist(rng), y = dist(rng), z = dist(rng);
        CHECK(rho(x, y) >= std::abs(x - y));
        CHECK(rho(x, z) <= std::max(rho(x, y), rho(y, z)));
    }
}

TEST_CASE("rho_index matches rho on net points") {
    std::mt19937 rng(79);
    std::uniform_int_distribution<std::int64_t> idx(0, 300);
    for (int j : {-2, 0, 3}) {
        for (int i = 0; i < 100; ++i) {
            const std::int64_t a = idx(rng), b = idx(rng);
            const double xa = std::ldexp(static_cast<double>(a), -j);
            const double xb = std::ldexp(static_cast<double>(b), -j);
            CHECK(rho_index(a, b, j) == rho(xa, xb));
        }
    }
}

TEST_CASE("ball measure is 1-Ahlfors: r/2 <= |B| <= 2r") {
    std::mt19937 rng(83);
    std::uniform_real_distribution<double> rdist(1e-4, 50.0);
    for (int i = 0; i < 200; ++i) {
        const double r = rdist(rng);
        const double B = ball_measure_oracle(r);
        CHECK(B >= 0.5 * r);
        CHECK(B <= 2.0 * r);
    }
}

TEST_CASE("dyadic quad-block laplacian") {
    const ScalarField id = ScalarField::of_1d([](double x) { return x; });
    SUBCASE("constant fields are annihilated (coefficients sum to zero)") {
        const ScalarField c([](const Point&) { return 4.0; });
        for (std::int64_t k : {0, 1, 2, 3, 7, 12})
            CHECK(dyadic_laplacian(0, c, k) == 0.0);
    }
    SUBCASE("j=0, k=0, f(x)=x gives 1+2+3-0 = 6") {
        CHECK(dyadic_laplacian(0, id, 0) == doctest::Approx(6.0));
    }
    SUBCASE("j=0, k=1, f(x)=x gives 0+2+3-3 = 2") {
        CHECK(dyadic_laplacian(0, id, 1) == doctest::Approx(2.0));
    }
    SUBCASE("block membership equals the rho ball of radius 2^{-j+2}") {
        for (int j : {-1, 0, 2}) {
            for (std::int64_t k = 0; k < 24; ++k) {
                const std::int64_t base = (k >> 2) << 2;
                for (std::int64_t i = 0; i < 32; ++i) {
                    const bool in_block = i != k && i >= base && i < base + 4;
                    const bool in_ball =
                        i != k && rho_index(k, i, j) <= std::ldexp(1.0, -j + 2);
                    CHECK(in_block == in_ball);
                }
            }
        }
    }
}

TEST_CASE("dyadic fractional laplacian on the indicator of [0,1)") {
    ScalarField f = ScalarField::of_1d([](double x) { return x < 1.0 ? 1.0 : 0.0; });
    f.sup_bound = 1.0;
    f.support_radius = 1.0;
    SUBCASE("at k=0 the annulus series sums to -1/2") {
        const auto out = dyadic_frac_laplacian(0, 1.0, f, 0, (1 << 20));
        CHECK(out.value == doctest::Approx(-0.5).epsilon(1e-5));
        CHECK(std::abs(out.value + 0.5) <= out.bound + 1e-12);
    }
    SUBCASE("at k=1 only i=0 contributes: 1/4") {
        const auto out = dyadic_frac_laplacian(0, 1.0, f, 1, (1 << 20));
        CHECK(out.value == doctest::Approx(0.25).epsilon(1e-12));
    }
    SUBCASE("constants give exactly zero") {
        ScalarField c([](const Point&) { return 3.0; });
        c.sup_bound = 3.0;
        const auto out = dyadic_frac_laplacian(0, 1.0, c, 5, 4096);
        CHECK(out.value == 0.0);
    }
}

TEST_CASE("haar point values") {
    const HaarFunction h00{0, 0};
    CHECK(h00(0.25) == 1.0);
    CHECK(h00(0.75) == -1.0);
    CHECK(h00(1.25) == 0.0);
    CHECK(h00(-0.25) == 0.0);
    const HaarFunction h10{1, 0};
    CHECK(h10(0.1) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("haar functions have zero mean and unit L2 norm") {
    // Midpoint cells aligned to the dyadic grid never touch the jumps, so the
    // Riemann sum is exact for these step functions.
    const auto riemann = [](const HaarFunction& h,
                            const std::function<double(double)>& g) {
        const auto supp = h.support();
        const int cells = 64;
        const double w = supp.length() / cells;
        double sum = 0.0;
        for (int i = 0; i < cells; ++i) sum += g(supp.left() + (i + 0.5) * w) * w;
        return sum;
    };
    for (const HaarFunction h : {HaarFunction{0, 0}, HaarFunction{2, 5}, HaarFunction{-1, 1}}) {
        const double mean = riemann(h, [&](double t) { return h(t); });
        const double norm2 = riemann(h, [&](double t) { return h(t) * h(t); });
        CHECK(mean == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
        CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("haar integrals over dyadic intervals match quadrature") {
    std::mt19937 rng(89);
    std::uniform_int_distribution<int> jdist(-2, 3);
    std::uniform_int_distribution<std::int64_t> kdist(0, 10);
    for (int trial = 0; trial < 60; ++trial) {
        const HaarFunction h{jdist(rng), kdist(rng)};
        const DyadicInterval I{jdist(rng), kdist(rng)};
        const double exact = haar_integral_over_dyadic(h, I);
        // Aligned midpoint cells: exact for step functions on dyadic pieces
        // (cell boundaries land on every breakpoint at this resolution).
        const int cells = 1 << 12;
        const double w = I.length() / cells;
        double quad = 0.0;
        for (int c = 0; c < cells; ++c) quad += h(I.left() + (c + 0.5) * w) * w;
        CHECK(exact == doctest::Approx(quad).scale(1.0).epsilon(1e-9));
    }
}

TEST_CASE("delta_s spot value: s=1/4 on h00 has eigenvalue 2+sqrt(2)") {
    const double expected = 2.0 + std::sqrt(2.0);
    const double got = delta_s_apply(0.25, HaarFunction{0, 0}, 0.25);
    CHECK(got == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("delta_s eigenrelation across scales (closed form, 1e-10)") {
    for (double s : {0.1, 0.25, 0.4}) {
        const double cs = haar_cs(s);
        for (int j = -2; j <= 4; ++j) {
            for (std::int64_t k : {std::int64_t{0}, std::int64_t{3}}) {
                const HaarFunction h{j, k};
                const double lambda = cs * std::pow(h.support_length(), -2.0 * s);
                const auto supp = h.support();
                for (int i = 0; i < 16; ++i) {
                    const double x =
                        supp.left() + (2.0 * i + 1.0) / 32.0 * supp.length();
                    const double expected = lambda * h(x);
                    const double got = delta_s_apply(s, h, x);
                    CHECK(std::abs(got - expected) <= 1e-10 * std::abs(expected));
                }
            }
        }
    }
}

TEST_CASE("delta_s eigenvalue for h at scale 1: c_s * sqrt(2)") {
    // supp length 1/2, s = 1/4: eigenvalue (2+√2)·√2 ≈ 4.828427.
    const HaarFunction h{1, 2};
    const double x = 1.0 + 1.0 / 8.0; // inside supp [1, 1.5)
    const double expected = (2.0 + std::sqrt(2.0)) * std::sqrt(2.0) * h(x);
    CHECK(delta_s_apply(0.25, h, x) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("delta_s on constants vanishes (expansion linearity)") {
    HaarExpansion e; // empty expansion = zero function
    CHECK(delta_s_apply(0.3, e, 0.7) == 0.0);
}

TEST_CASE("delta_s rejects s outside (0, 1/2)") {
    CHECK_THROWS_AS(delta_s_apply(0.5, HaarFunction{0, 0}, 0.25), ValidationError);
    CHECK_THROWS_AS(delta_s_apply(-0.1, HaarFunction{0, 0}, 0.25), ValidationError);
}

TEST_CASE("delta_s quadrature path reproduces the eigenrelation (1e-6)") {
    for (double s : {0.1, 0.25, 0.4}) {
        const HaarFunction h{1, 1}; // supp [1/2, 1)
        DyadicQuadSpec spec;
        spec.lipschitz = 64.0;
        const double lambda = haar_cs(s) * std::pow(h.support_length(), -2.0 * s);
        for (double x : {0.53125, 0.65625, 0.78125, 0.90625}) {
            const auto got = delta_s_apply(s, h.as_scalar_field(), x, spec);
            const double expected = lambda * h(x);
            CHECK(std::abs(got.value - expected) <= 1e-6 * std::abs(expected));
        }
    }
}

TEST_CASE("delta_s quadrature path on a smooth field matches adaptive annuli") {
    // Smooth compactly supported f, not aligned to the dyadic grid: the
    // production panel quadrature must agree with adaptive integration of the
    // same annulus decomposition, and its reported bound must cover the
    // fine-scale truncation.
    ScalarField f = ScalarField::of_1d([](double t) {
        const double u = t - 0.3;
        const double b = std::max(0.0, 1.0 - u * u);
        return b * b * b;
    });
    f.support_radius = 1.4;
    const double s = 0.3;
    DyadicQuadSpec spec;
    spec.lipschitz = 6.0;
    const double nu = 1.0 / (1.0 - std::pow(2.0, -(1.0 + 2.0 * s)));
    for (double x : {0.1, 0.55, 2.7}) {
        const auto got = delta_s_apply(s, f, x, spec);
        const double fx = f(Point::scalar(x));
        const auto annulus_total = [&](int m_hi) {
            double total = 0.0;
            for (int m = -6; m <= m_hi; ++m) {
                const auto idx =
                    static_cast<std::int64_t>(std::floor(std::ldexp(x, m + 1)));
                const DyadicInterval A{m + 1, idx ^ 1};
                total += std::pow(2.0, m * (1.0 + 2.0 * s)) *
                         oracle::adaptive_simpson(
                             [&](double y) { return fx - f(Point::scalar(y)); },
                             A.left(), A.right(), 1e-14);
            }
            total += fx * std::pow(2.0, 2.0 * s * (-7)) /
                     (2.0 * (1.0 - std::pow(2.0, -2.0 * s)));
            return nu * total;
        };
        // Same truncation: the two quadratures must coincide tightly.
        CHECK(got.value ==
              doctest::Approx(annulus_total(spec.fine_scale)).epsilon(1e-9).scale(1.0));
        // Deeper truncation: the difference must sit inside the reported bound.
        CHECK(std::abs(got.value - annulus_total(spec.fine_scale + 8)) <=
              got.bound + 1e-9);
    }
}

TEST_CASE("expansion evaluation and linearity of delta_s") {
    HaarExpansion e;
    e.add(0, 0, 2.0);
    e.add(1, 1, -0.5);
    const double x = 0.28125;
    const double direct = 2.0 * delta_s_apply(0.2, HaarFunction{0, 0}, x) -
                          0.5 * delta_s_apply(0.2, HaarFunction{1, 1}, x);
    CHECK(delta_s_apply(0.2, e, x) == doctest::Approx(direct).epsilon(1e-14));
    CHECK(e.eval(x) == doctest::Approx(2.0 * haar_eval({0, 0}, x) -
                                       0.5 * haar_eval({1, 1}, x)));
}

TEST_CASE("spectral kirchhoff point examples") {
    TwoVarHaarExpansion phi;
    phi.add(0, 0, 0, 0, 1.0);
    SUBCASE("x=0.25: c_s · h00(x)^2 = 2+sqrt(2)") {
        CHECK(spectral_kirchhoff(0.25, phi, 0.25) ==
              doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-14));
    }
    SUBCASE("outside the support the value is 0") {
        CHECK(spectral_kirchhoff(0.25, phi, 1.5) == 0.0);
    }
    SUBCASE("empty expansion gives 0") {
        TwoVarHaarExpansion empty;
        CHECK(spectral_kirchhoff(0.25, empty, 0.25) == 0.0);
    }
}

TEST_CASE("spectral kirchhoff equals delta_s on y-sections") {
    std::mt19937 rng(97);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    std::uniform_int_distribution<int> jdist(-1, 3);
    std::uniform_int_distribution<std::int64_t> kdist(0, 6);
    for (int trial = 0; trial < 10; ++trial) {
        TwoVarHaarExpansion phi;
        for (int t = 0; t < 6; ++t)
            phi.add(jdist(rng), kdist(rng), jdist(rng), kdist(rng), coef(rng));
        const double s = 0.1 + 0.05 * trial / 2.0;
        for (double x : {0.15, 0.4, 0.9, 2.3}) {
            // Closed-form route: Δ_s of the y-section, evaluated at x.
            const double kernel_route = delta_s_apply(s, phi.section_at(x), x);
            const double spectral = spectral_kirchhoff(s, phi, x);
            CHECK(spectral == doctest::Approx(kernel_route).epsilon(1e-10).scale(1.0));
        }
    }
}

TEST_CASE("spectral kirchhoff equals the quadrature kernel route (1e-6)") {
    TwoVarHaarExpansion phi;
    phi.add(0, 0, 1, 1, 0.8);
    phi.add(1, 0, 0, 0, -1.3);
    const double s = 0.25;
    DyadicQuadSpec spec;
    spec.lipschitz = 64.0;
    for (double x : {0.21875, 0.59375, 0.84375}) {
        const HaarExpansion section = phi.section_at(x);
        ScalarField section_field([section](const Point& p) { return section.eval(p.x()); });
        section_field.support_radius = 2.0;
        const auto quad = delta_s_apply(s, section_field, x, spec);
        const double spectral = spectral_kirchhoff(s, phi, x);
        CHECK(std::abs(spectral - quad.value) <=
              1e-6 * std::max(1.0, std::abs(spectral)));
    }
}

} // TEST_SUITE
