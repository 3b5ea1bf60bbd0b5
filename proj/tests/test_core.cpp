#include <doctest.h>

#include <cmath>
#include <random>

#include "kirlab/coupling.hpp"
#include "kirlab/division.hpp"
#include "kirlab/fields.hpp"
#include "kirlab/graph.hpp"
#include "kirlab/numdiff.hpp"
#include "oracle.hpp"

using namespace kirlab;

namespace {

ScalarField poly1d(std::vector<double> coeffs) {
    return ScalarField::of_1d([coeffs = std::move(coeffs)](double x) {
        double v = 0.0, p = 1.0;
        for (double c : coeffs) {
            v += c * p;
            p *= x;
        }
        return v;
    });
}

} // namespace

TEST_SUITE("core") {

TEST_CASE("grad0 of a constant vanishes everywhere") {
    const TwoPointField g = grad0(ScalarField([](const Point&) { return 4.25; }));
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    for (int i = 0; i < 50; ++i)
        CHECK(g(dist(rng), dist(rng)) == 0.0);
}

TEST_CASE("grad0 point examples") {
    const TwoPointField id = grad0(ScalarField::of_1d([](double x) { return x; }));
    CHECK(id(1.0, 3.0) == doctest::Approx(2.0).epsilon(1e-15));
    const TwoPointField sq = grad0(ScalarField::of_1d([](double x) { return x * x; }));
    CHECK(sq(1.0, 2.0) == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("grad0 antisymmetry and anti-diagonal vanishing are exact") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        const ScalarField f = poly1d({dist(rng), dist(rng), dist(rng), dist(rng)});
        const TwoPointField g = grad0(f);
        for (int i = 0; i < 20; ++i) {
            const double x = dist(rng), y = dist(rng);
            CHECK(g(x, y) == -g(y, x));
            CHECK(g(x, x) == 0.0);
        }
    }
}

TEST_CASE("num_y_hessian on (y-x)^2 gives 2") {
    const TwoPointField phi([](const Point& x, const Point& y) {
        const double d = y[0] - x[0];
        return d * d;
    });
    for (double x : {-1.3, 0.0, 2.7}) {
        const Matrix H = num_y_hessian(phi, Point::scalar(x), 1e-3);
        CHECK(H[0][0] == doctest::Approx(2.0).epsilon(1e-8));
    }
}

TEST_CASE("num_y_gradient on sin y at 0 gives cos 0") {
    const TwoPointField phi([](const Point&, const Point& y) { return std::sin(y[0]); });
    const Vector g = num_y_gradient(phi, Point::scalar(0.0), 1e-4);
    CHECK(g[0] == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("num_y_hessian on x*y^3 at x=1 gives 6") {
    // d²/dy² (x·y³) = 6xy = 6 at x = y = 1.
    const TwoPointField phi(
        [](const Point& x, const Point& y) { return x[0] * y[0] * y[0] * y[0]; });
    const Matrix H = num_y_hessian(phi, Point::scalar(1.0), 1e-4);
    CHECK(H[0][0] == doctest::Approx(6.0).epsilon(1e-7));
}

TEST_CASE("numeric derivatives reject h <= 0") {
    const TwoPointField phi([](const Point&, const Point& y) { return y[0]; });
    CHECK_THROWS_AS(num_y_gradient(phi, Point::scalar(0.0), 0.0), ValidationError);
    CHECK_THROWS_AS(num_y_hessian(phi, Point::scalar(0.0), -1.0), ValidationError);
}

TEST_CASE("numeric second derivative converges with order >= 1.9") {
    const TwoPointField phi([](const Point&, const Point& y) {
        const double t = y[0];
        return t * t * t * t; // exact second derivative 12y²
    });
    const Point x = Point::scalar(1.0);
    double prev_err = 0.0;
    std::vector<double> errs;
    for (double h : {2e-2, 1e-2, 5e-3}) {
        const double v = num_y_hessian(phi, x, h)[0][0];
        errs.push_back(std::abs(v - 12.0));
    }
    for (std::size_t i = 1; i < errs.size(); ++i) {
        const double order = std::log2(errs[i - 1] / errs[i]);
        CHECK(order >= 1.9);
    }
    (void)prev_err;
}

TEST_CASE("check_division: psi == 0 and Phi == 0 give zero residual") {
    const TPairing t = atomic_t_pairing({Point::scalar(0.0), Point::scalar(1.0)},
                                        {1.0, 2.0});
    const SPairing sigma = atomic_s_pairing({Point::scalar(0.0), Point::scalar(1.0)},
                                            {{0, 1, 1.0}, {1, 0, 1.0}});
    const ScalarField psi([](const Point&) { return 0.0; });
    const TwoPointField phi([](const Point&, const Point&) { return 0.0; });
    const auto family = bump_test_family({Point::scalar(0.0), Point::scalar(1.0)}, 0.8);
    const DivisionReport rep = check_division(t, sigma, psi, phi, family);
    CHECK(rep.max_residual == 0.0);
    CHECK(rep.residuals.size() == family.size());
}

TEST_CASE("check_division passes with psi from the graph Kirchhoff divergence") {
    // Exact discrete case: residuals vanish to roundoff when psi is the
    // Radon-Nikodym derivative, computed here against direct double summation.
    std::mt19937 rng(37);
    std::uniform_real_distribution<double> pos(-2.0, 2.0);
    std::uniform_real_distribution<double> wdist(0.1, 2.0);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<Point> nodes;
        std::vector<double> weights;
        for (int k = 0; k < 6; ++k) {
            nodes.push_back(Point::scalar(pos(rng) + 5.0 * k)); // distinct
            weights.push_back(wdist(rng));
        }
        CouplingWeights w;
        for (int k = 0; k < 6; ++k)
            for (int j = 0; j < 6; ++j)
                if (k != j && ((k + j) % 2 == 0)) w.add(k, j, wdist(rng));
        GraphSystem sys(NodeMeasure(nodes, weights), w);

        const TwoPointField phi([](const Point& a, const Point& b) {
            return std::cos(a[0]) + b[0] * b[0] * 0.1;
        });
        const std::vector<double> psi_vals = kirchhoff(sys, phi);
        const ScalarField psi = field_from_node_values(nodes, psi_vals);
        const auto family = bump_test_family(nodes, 1.0, 7u + trial);
        const DivisionReport rep =
            check_division(t_pairing(sys), s_pairing(sys), psi, phi, family);
        CHECK(rep.max_relative() <= 1e-12);
    }
}

TEST_CASE("check_division reproduces the no-solution example") {
    // T = δ₀, dπ = dx dy on the unit square, Φ ≡ 1: no ψ can work, and the
    // residual against φ with φ(0) = 0 equals ∫φ.
    const TPairing t = [](const ScalarField& g) { return g(Point::scalar(0.0)); };
    const QuadratureMeasure lebesgue = QuadratureMeasure::box_density(
        ScalarField([](const Point&) { return 1.0; }), Point{0.0}, Point{1.0});
    const IndependentCoupling indep(ScalarField([](const Point&) { return 1.0; }),
                                    lebesgue);
    const SPairing sigma = independent_s_pairing(indep, lebesgue);

    const TwoPointField phi_one([](const Point&, const Point&) { return 1.0; });
    const ScalarField candidate([](const Point& x) { return 0.7 + x[0]; });
    const ScalarField test = tensor_bump(Point{0.5}, 0.5); // vanishes at 0
    REQUIRE(test(Point::scalar(0.0)) == 0.0);

    const double expected =
        oracle::adaptive_simpson([&](double u) { return test(Point::scalar(u)); }, 0.0,
                                 1.0, 1e-12);
    REQUIRE(expected > 0.1);

    std::vector<ScalarField> family{test};
    const DivisionReport rep = check_division(t, sigma, candidate, phi_one, family);
    CHECK(rep.max_residual == doctest::Approx(expected).epsilon(1e-7));
    CHECK(rep.max_residual > 0.1);
}

TEST_CASE("check_division accepts multiple psi in the non-uniqueness example") {
    // μ = δ₀, π = δ₀×δ₀, Φ ≡ 1: every continuous ψ with ψ(0)=1 divides.
    const TPairing t = [](const ScalarField& g) { return g(Point::scalar(0.0)); };
    const SPairing sigma = [](const ScalarField& test, const TwoPointField& phi) {
        return test(Point::scalar(0.0)) * phi(Point::scalar(0.0), Point::scalar(0.0));
    };
    const TwoPointField phi_one([](const Point&, const Point&) { return 1.0; });
    const auto family = bump_test_family({Point::scalar(0.0), Point::scalar(0.4)}, 0.9);

    for (const ScalarField& psi :
         {ScalarField([](const Point&) { return 1.0; }),
          ScalarField([](const Point& x) { return 1.0 + x[0] * x[0]; })}) {
        const DivisionReport rep = check_division(t, sigma, psi, phi_one, family);
        CHECK(rep.max_residual <= 1e-15);
    }
}

TEST_CASE("check_division names the failing test function") {
    const TPairing t = [](const ScalarField& g) {
        (void)g;
        return std::numeric_limits<double>::quiet_NaN();
    };
    const SPairing sigma = [](const ScalarField&, const TwoPointField&) { return 0.0; };
    const ScalarField psi([](const Point&) { return 1.0; });
    const TwoPointField phi([](const Point&, const Point&) { return 1.0; });
    std::vector<ScalarField> family{ScalarField([](const Point&) { return 1.0; })};
    CHECK_THROWS_WITH_AS(check_division(t, sigma, psi, phi, family),
                         doctest::Contains("test function 0"), EvaluationError);
}

TEST_CASE("declared derivatives agree with finite differences to order h^2") {
    ScalarField f = ScalarField::of_1d([](double t) { return std::sin(t) + t * t; });
    f.with_gradient([](const Point& p) { return Vector{std::cos(p[0]) + 2.0 * p[0]}; });
    f.with_hessian([](const Point& p) { return Matrix{{-std::sin(p[0]) + 2.0}}; });
    const TwoPointField phi = grad0(f);
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    const double h = 1e-4;
    for (int i = 0; i < 25; ++i) {
        const Point x = Point::scalar(dist(rng));
        const double dg = std::abs(phi.y_gradient(x, x)[0] - num_y_gradient(phi, x, h)[0]);
        const double dh = std::abs(phi.y_hessian(x, x)[0][0] - num_y_hessian(phi, x, h)[0][0]);
        CHECK(dg <= 10.0 * h * h);
        CHECK(dh <= 1e-5); // second differences add a roundoff floor
    }
}

TEST_CASE("bump test family is deterministic under the seed") {
    const std::vector<Point> centers{Point::scalar(0.0), Point::scalar(1.0)};
    const auto fam1 = bump_test_family(centers, 0.5, 99u, 4);
    const auto fam2 = bump_test_family(centers, 0.5, 99u, 4);
    REQUIRE(fam1.size() == fam2.size());
    for (std::size_t i = 0; i < fam1.size(); ++i)
        for (double x : {-0.3, 0.1, 0.9, 1.4})
            CHECK(fam1[i](Point::scalar(x)) == fam2[i](Point::scalar(x)));
}

} // TEST_SUITE
