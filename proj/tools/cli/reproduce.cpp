#include "reproduce.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

#include "builtins.hpp"
#include "kirlab/continuum.hpp"
#include "kirlab/convergence.hpp"
#include "kirlab/coupling.hpp"
#include "kirlab/division.hpp"
#include "kirlab/dyadic.hpp"
#include "kirlab/graph.hpp"
#include "kirlab/lattice.hpp"
#include "kirlab/metric.hpp"
#include "oracle.hpp"

namespace kirlab::reproduce {

namespace {

using tools::builtin_two_point;
using tools::builtin_zeta;

double cube_bump(double t) {
    const double u = 1.0 - t * t;
    if (u <= 0.0) return 0.0;
    return u * u * u;
}

double mollifier(double t) {
    const double u = 1.0 - t * t;
    if (u <= 0.0) return 0.0;
    return std::exp(1.0 - 1.0 / u);
}

struct Tracker {
    double worst = 0.0;
    bool ok = true;
    void check(double observed, double threshold) {
        worst = std::max(worst, observed);
        if (!(observed <= threshold)) ok = false;
    }
    std::string detail(double threshold, const char* what) const {
        std::ostringstream os;
        os << "max " << what << " " << worst << " vs " << threshold;
        return os.str();
    }
};

// ---------------------------------------------------------------- criterion 1
CriterionResult haar_eigenrelation(const Options& options) {
    CriterionResult r{"haar eigenrelation c_s |supp|^{-2s}", false, ""};
    Tracker closed, quad;
    for (double s : {0.1, 0.25, 0.4}) {
        const double cs = options.haar_cs_override.value_or(haar_cs(s));
        for (int j = -2; j <= 4; ++j) {
            for (std::int64_t k : {std::int64_t{0}, std::int64_t{3}}) {
                const HaarFunction h{j, k};
                const double lambda = cs * std::pow(h.support_length(), -2.0 * s);
                const auto supp = h.support();
                for (int i = 0; i < 16; ++i) {
                    const double x = supp.left() + (2.0 * i + 1.0) / 32.0 * supp.length();
                    const double expected = lambda * h(x);
                    const double got = delta_s_apply(s, h, x);
                    closed.check(std::abs(got - expected) / std::abs(expected), 1e-10);
                }
            }
        }
        // Quadrature path on a subsample (same eigenvalue, coarser tolerance).
        const HaarFunction h{1, 1};
        DyadicQuadSpec spec;
        spec.lipschitz = 64.0;
        const double lambda = cs * std::pow(h.support_length(), -2.0 * s);
        for (double x : {0.53125, 0.65625, 0.78125, 0.90625}) {
            const auto got = delta_s_apply(s, h.as_scalar_field(), x, spec);
            quad.check(std::abs(got.value - lambda * h(x)) / std::abs(lambda * h(x)),
                       1e-6);
        }
    }
    // Spot value 2+√2 at s = 1/4.
    const double spot = delta_s_apply(0.25, HaarFunction{0, 0}, 0.25);
    const double expected_spot =
        options.haar_cs_override.value_or(2.0 + std::sqrt(2.0));
    closed.check(std::abs(spot - expected_spot) / expected_spot, 1e-10);

    r.passed = closed.ok && quad.ok;
    r.detail = closed.detail(1e-10, "closed-form rel err") + "; " +
               quad.detail(1e-6, "quadrature rel err");
    return r;
}

// ---------------------------------------------------------------- criterion 2
CriterionResult fd_exactness() {
    CriterionResult r{"finite differences exact on |x|^2 + mean value", false, ""};
    Tracker quad;
    const ScalarField sq([](const Point& x) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.dim(); ++i) s += x[i] * x[i];
        return s;
    });
    for (int n : {1, 2, 3})
        for (double h : {1.0, 0.1, 0.01}) {
            const LatticeSpec spec(n, h, 2);
            LatticeIndex k(n, 1);
            quad.check(std::abs(fd_laplacian(spec, sq, k) - 2.0 * n), 1e-12 * 2.0 * n);
            LatticeIndex origin(n, 0);
            quad.check(std::abs(fd_laplacian(spec, sq, origin) - 2.0 * n),
                       1e-12 * 2.0 * n);
        }

    // Mean value of linear fields on dyadic lattices is exactly zero at
    // interior nodes (dyadic data keeps the arithmetic exact in binary).
    bool mean_ok = true;
    for (int n : {1, 2})
        for (double h : {1.0, 0.5, 0.25}) {
            const LatticeSpec spec(n, h, 3);
            const auto idx = spec.indices();
            std::vector<Point> nodes;
            for (const auto& k : idx) nodes.push_back(spec.point(k));
            std::vector<double> weights(nodes.size(), std::pow(h, n));
            CouplingWeights w(true);
            for (std::size_t a = 0; a < idx.size(); ++a)
                for (std::size_t b = 0; b < idx.size(); ++b) {
                    if (a == b) continue;
                    int dist = 0;
                    for (int d = 0; d < n; ++d) dist += std::abs(idx[a][d] - idx[b][d]);
                    if (dist == 1) w.add(a, b, std::pow(h, n - 2));
                }
            GraphSystem sys(NodeMeasure(nodes, weights), std::move(w));
            std::vector<std::size_t> interior;
            for (std::size_t a = 0; a < idx.size(); ++a) {
                bool inner = true;
                for (int d = 0; d < n; ++d)
                    if (std::abs(idx[a][d]) >= spec.window) inner = false;
                if (inner) interior.push_back(a);
            }
            const ScalarField linear([](const Point& x) {
                double v = 0.0;
                double c = 1.0;
                for (std::size_t i = 0; i < x.dim(); ++i, c *= 0.5) v += c * x[i];
                return v;
            });
            const auto rep = is_harmonic(sys, linear, 0.0, interior);
            if (rep.max_deviation != 0.0) mean_ok = false;
        }

    r.passed = quad.ok && mean_ok;
    r.detail = quad.detail(0.0, "laplacian abs err (tol 2n*1e-12)") +
               std::string("; mean-value deviation ") + (mean_ok ? "0" : "nonzero");
    return r;
}

// ---------------------------------------------------------------- criterion 3
CriterionResult lattice_constant() {
    CriterionResult r{"c(1) bracket around pi^2/3 at R=10^4", false, ""};
    const Bracket b = frac_lattice_constant(1, 1.0, 10000);
    const double target = std::numbers::pi * std::numbers::pi / 3.0;
    r.passed = b.contains(target) && b.half_width() <= 1e-4;
    std::ostringstream os;
    os << "bracket [" << b.lower << ", " << b.upper << "], half-width " << b.half_width();
    r.detail = os.str();
    return r;
}

// Random smooth compactly supported two-point field built from mollifiers.
TwoPointField random_smooth_field(std::mt19937& rng) {
    std::uniform_real_distribution<double> cdist(-1.5, 1.5);
    std::uniform_real_distribution<double> center(-0.8, 0.8);
    std::uniform_real_distribution<double> width(0.4, 1.2);
    struct Term {
        double c, ax, wx, ay, wy;
    };
    std::vector<Term> terms;
    for (int i = 0; i < 3; ++i)
        terms.push_back({cdist(rng), center(rng), width(rng), center(rng), width(rng)});
    TwoPointField phi([terms](const Point& x, const Point& y) {
        double v = 0.0;
        for (const Term& t : terms)
            v += t.c * mollifier((x[0] - t.ax) / t.wx) * mollifier((y[0] - t.ay) / t.wy);
        return v;
    });
    phi.support_radius = 2.5;
    const auto [sup, grad] = sampled_sup_norms(phi, 1, 2.5, 41);
    phi.sup_bound = sup;
    phi.y_grad_bound = grad;
    return phi;
}

// ---------------------------------------------------------------- criterion 4
CriterionResult regular_regime() {
    CriterionResult r{"regular fractional regime: bound + oracle (1e-5)", false, ""};
    std::mt19937 rng(2024u);
    Tracker agree;
    bool bounded = true;
    std::uniform_real_distribution<double> xdist(-1.2, 1.2);
    for (int trial = 0; trial < 10; ++trial) {
        const TwoPointField phi = random_smooth_field(rng);
        const auto section = [&phi](double a, double b) {
            return phi(Point::scalar(a), Point::scalar(b));
        };
        for (double s : {0.1, 0.25, 0.4}) {
            const FracKernelSpec spec = FracKernelSpec::make(1, s);
            const double bound = frac_bound(spec, phi);
            for (int i = 0; i < 3; ++i) {
                const double x = xdist(rng);
                const auto got = frac_kir_regular(spec, phi, Point::scalar(x));
                if (std::abs(got.value) > bound) bounded = false;
                const double want =
                    oracle::frac_kir_1d(section, x, s, std::abs(x) + 3.5, 1e-10);
                agree.check(std::abs(got.value - want) / std::max(1.0, std::abs(want)),
                            1e-5);
            }
        }
    }
    r.passed = bounded && agree.ok;
    r.detail = agree.detail(1e-5, "oracle rel err") +
               std::string("; lemma bound ") + (bounded ? "held" : "violated");
    return r;
}

// ---------------------------------------------------------------- criterion 5
CriterionResult pv_regime() {
    CriterionResult r{"PV fractional regime: rate 2(1-s) +- 0.15, oracle 1e-4", false, ""};
    Tracker agree, rate;
    const TwoPointField phi([](const Point& x, const Point& y) {
        return mollifier(y[0]) - mollifier(x[0]) +
               0.4 * mollifier(1.6 * x[0]) * mollifier(1.3 * y[0]);
    });
    const auto section = [&phi](double a, double b) {
        return phi(Point::scalar(a), Point::scalar(b));
    };
    for (double s : {0.5, 0.6, 0.75, 0.9}) {
        FracKernelSpec spec = FracKernelSpec::make(1, s);
        spec.eps_levels = 16;
        for (double x : {0.0, 0.3}) {
            const auto rep = frac_kir_pv(spec, phi, Point::scalar(x));
            const double want = oracle::frac_kir_1d(section, x, s, std::abs(x) + 2.5, 1e-11);
            agree.check(std::abs(rep.value - want) / std::max(1.0, std::abs(want)), 1e-4);
            rate.check(std::abs(rep.observed_rate - 2.0 * (1.0 - s)), 0.15);
        }
    }
    r.passed = agree.ok && rate.ok;
    r.detail = agree.detail(1e-4, "oracle rel err") + "; " +
               rate.detail(0.15, "rate deviation");
    return r;
}

// ---------------------------------------------------------------- criterion 6
CriterionResult classical_identity() {
    CriterionResult r{"classical identity Kir(grad0 f) = Laplacian f", false, ""};
    Tracker analytic, numeric;
    std::mt19937 rng(77u);
    std::uniform_real_distribution<double> xdist(-1.0, 1.0);

    struct Case {
        ScalarField field;
        std::function<double(const Point&)> laplacian;
    };
    std::vector<Case> cases;
    {
        ScalarField f([](const Point& p) { return p[0] * p[0] + p[1] * p[1]; });
        f.with_hessian([](const Point&) { return Matrix{{2.0, 0.0}, {0.0, 2.0}}; });
        cases.push_back({f, [](const Point&) { return 4.0; }});
    }
    {
        ScalarField f([](const Point& p) { return p[0] * p[0] * p[0] + p[1] * p[1]; });
        f.with_hessian([](const Point& p) {
            return Matrix{{6.0 * p[0], 0.0}, {0.0, 2.0}};
        });
        cases.push_back({f, [](const Point& p) { return 6.0 * p[0] + 2.0; }});
    }
    {
        ScalarField f([](const Point& p) {
            return std::exp(-(p[0] * p[0] + p[1] * p[1]));
        });
        f.with_hessian([](const Point& p) {
            const double e = std::exp(-(p[0] * p[0] + p[1] * p[1]));
            return Matrix{{(4.0 * p[0] * p[0] - 2.0) * e, 4.0 * p[0] * p[1] * e},
                          {4.0 * p[0] * p[1] * e, (4.0 * p[1] * p[1] - 2.0) * e}};
        });
        cases.push_back({f, [](const Point& p) {
                             const double q = p[0] * p[0] + p[1] * p[1];
                             return (4.0 * q - 4.0) * std::exp(-q);
                         }});
    }

    for (const Case& c : cases) {
        const TwoPointField with_hess = grad0(c.field);
        ScalarField plain_field = c.field;
        plain_field.with_hessian(nullptr);
        const TwoPointField without_hess = grad0(plain_field);
        for (int i = 0; i < 10; ++i) {
            const Point x{xdist(rng), xdist(rng)};
            const double want = c.laplacian(x);
            analytic.check(std::abs(classical_kir(with_hess, x) - want), 1e-6);
            numeric.check(std::abs(classical_kir(without_hess, x) - want), 1e-3);
        }
    }
    r.passed = analytic.ok && numeric.ok;
    r.detail = analytic.detail(1e-6, "analytic abs err") + "; " +
               numeric.detail(1e-3, "numeric abs err");
    return r;
}

// ---------------------------------------------------------------- criterion 7
CriterionResult hilbert_limit() {
    CriterionResult r{"Hilbert-kernel limit x^2 phi(x) pi/(1+x^2)", false, ""};
    Tracker agree;
    const TwoPointField phi = builtin_two_point("bumpx-cauchyy");
    bool ladder_ok = true;
    for (double x : {0.5, 1.0, 2.0}) {
        const double want = x * x * std::exp(-x * x / 4.0) * std::numbers::pi /
                            (1.0 + x * x);
        const double got = hilbert_kir_limit(phi, x);
        agree.check(std::abs(got - want), 1e-4);
        // Kir_ε gaps shrink linearly in ε; the ladder must contract and its
        // rate-1 Richardson step must land on the limit.
        double prev_gap = std::numeric_limits<double>::infinity();
        double v_last = 0.0, v_prev = 0.0;
        for (double eps : {0.4, 0.2, 0.1, 0.05}) {
            const double v = hilbert_kir_eps(PVHilbertSpec(eps), phi, x);
            const double gap = std::abs(v - got);
            if (gap > prev_gap + 1e-12) ladder_ok = false;
            prev_gap = gap;
            v_prev = v_last;
            v_last = v;
        }
        if (std::abs(2.0 * v_last - v_prev - got) > 1e-3) ladder_ok = false;
    }
    r.passed = agree.ok && ladder_ok;
    r.detail = agree.detail(1e-4, "abs err") + std::string("; eps ladder ") +
               (ladder_ok ? "contracts" : "fails");
    return r;
}

// ---------------------------------------------------------------- criterion 8
CriterionResult convergence_theorems() {
    CriterionResult r{"dS/dT limits: fd, frac, poisson, coupling, dichotomy", false, ""};
    std::ostringstream detail;
    bool ok = true;

    {
        const TwoPointField sq([](const Point& x, const Point& y) {
            const double d = y[0] - x[0];
            return d * d;
        });
        const auto rep = estimate_limit(family_fd(), sq, Point::scalar(0.3), 0.4, 6);
        const bool good = rep.verdict == Verdict::converged &&
                          std::abs(rep.extrapolated - 2.0) <= 1e-3 &&
                          rep.observed_order >= 1.9;
        ok = ok && good;
        detail << "fd " << (good ? "ok" : "FAIL");
    }
    {
        const TwoPointField phi = builtin_two_point("pairbump");
        const auto fam = family_frac(0.5);
        const Point x = Point::scalar(0.0);
        const auto rep = estimate_limit(fam, phi, x, 0.25, 7);
        const double want = fam.claimed_limit(phi, x);
        const bool good = rep.verdict == Verdict::converged &&
                          std::abs(rep.extrapolated - want) <= 0.02 * std::abs(want);
        ok = ok && good;
        detail << ", frac " << (good ? "ok" : "FAIL");
    }
    {
        const TwoPointField one([](const Point&, const Point&) { return 1.0; });
        const auto rep = estimate_limit(family_poisson_cutoff(), one,
                                        Point::scalar(1.0), 0.5, 8);
        const bool good =
            rep.verdict == Verdict::converged &&
            std::abs(rep.extrapolated - 2.0 * std::numbers::pi) <= 1e-3;
        ok = ok && good;
        detail << ", poisson " << (good ? "ok" : "FAIL");
    }
    {
        const auto fam = family_coupling(tools::builtin_family_map("pow1ph"));
        const TwoPointField phi = builtin_two_point("xdiag");
        const auto rep =
            estimate_limit(fam, phi, Point::scalar(std::exp(-1.0)), 0.25, 12);
        const bool good = rep.verdict == Verdict::converged &&
                          std::abs(rep.extrapolated + std::exp(-2.0)) <= 1e-4;
        ok = ok && good;
        detail << ", coupling " << (good ? "ok" : "FAIL");
    }
    {
        const TwoPointField b2 = builtin_two_point("bump2");
        const auto gauss = estimate_limit(family_gaussian_area(), b2,
                                          Point::scalar(0.5), 0.5, 8);
        const auto compact = estimate_limit(
            family_tail_dichotomy(builtin_zeta("compactbump"), true), b2,
            Point::scalar(0.4), 0.2, 6);
        const auto heavy = estimate_limit(
            family_tail_dichotomy(builtin_zeta("cauchy"), false), b2,
            Point::scalar(0.5), 0.5, 6);
        const bool good = gauss.verdict == Verdict::diverged &&
                          compact.verdict == Verdict::converged &&
                          compact.extrapolated == 0.0 &&
                          heavy.verdict == Verdict::diverged;
        ok = ok && good;
        detail << ", dichotomy " << (good ? "ok" : "FAIL");
    }

    r.passed = ok;
    r.detail = detail.str();
    return r;
}

// ---------------------------------------------------------------- criterion 9
CriterionResult division_contract() {
    CriterionResult r{"division contract across discrete operators", false, ""};
    Tracker rel;
    std::mt19937 rng(4242u);
    std::uniform_real_distribution<double> wdist(0.2, 2.0);
    std::uniform_real_distribution<double> vdist(-1.5, 1.5);

    // Graph systems.
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<Point> nodes;
        std::vector<double> weights;
        for (int k = 0; k < 6; ++k) {
            nodes.push_back(Point::scalar(1.3 * k + 0.1 * trial));
            weights.push_back(wdist(rng));
        }
        CouplingWeights w;
        for (int a = 0; a < 6; ++a)
            for (int b = 0; b < 6; ++b)
                if (a != b && (a + b + trial) % 2 == 0) w.add(a, b, wdist(rng));
        GraphSystem sys(NodeMeasure(nodes, weights), std::move(w));
        const TwoPointField phi([](const Point& a, const Point& b) {
            return std::sin(a[0]) + 0.2 * b[0];
        });
        const ScalarField psi = field_from_node_values(nodes, kirchhoff(sys, phi));
        const auto family = bump_test_family(nodes, 0.9, 100u + trial);
        rel.check(check_division(t_pairing(sys), s_pairing(sys), psi, phi, family)
                      .max_relative(),
                  1e-12);
    }

    // Lattice systems (fd weights; witnesses concentrated at interior nodes).
    for (int trial = 0; trial < 5; ++trial) {
        const double h = 0.4 + 0.2 * trial;
        const LatticeSpec spec(1, h, 3);
        const auto idx = spec.indices();
        std::vector<Point> nodes;
        std::vector<double> weights(idx.size(), h);
        for (const auto& k : idx) nodes.push_back(spec.point(k));
        CouplingWeights w(true);
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t b = 0; b < idx.size(); ++b)
                if (std::abs(idx[a][0] - idx[b][0]) == 1) w.add(a, b, 1.0 / h);
        GraphSystem sys(NodeMeasure(nodes, weights), std::move(w));
        const TwoPointField phi([trial](const Point& a, const Point& b) {
            return std::cos(a[0] * (1 + trial)) * b[0];
        });
        std::vector<double> psi_vals(idx.size(), 0.0);
        std::vector<ScalarField> witnesses;
        for (std::size_t a = 0; a < idx.size(); ++a) {
            if (std::abs(idx[a][0]) >= spec.window) continue;
            psi_vals[a] = fd_kirchhoff(spec, phi, idx[a]);
            witnesses.push_back(tensor_bump(nodes[a], 0.45 * h));
        }
        const ScalarField psi = field_from_node_values(nodes, psi_vals);
        rel.check(check_division(t_pairing(sys), s_pairing(sys), psi, phi, witnesses)
                      .max_relative(),
                  1e-12);
    }

    // Dyadic quad-block systems.
    for (int trial = 0; trial < 5; ++trial) {
        const int j = trial % 3 - 1;
        const std::int64_t count = 4 * (3 + trial);
        std::vector<Point> nodes;
        std::vector<double> weights;
        const double a_k = std::ldexp(1.0, -j);
        for (std::int64_t k = 0; k < count; ++k) {
            nodes.push_back(Point::scalar(std::ldexp(static_cast<double>(k), -j)));
            weights.push_back(a_k);
        }
        CouplingWeights w(true);
        for (std::int64_t a = 0; a < count; ++a)
            for (std::int64_t b = 0; b < count; ++b)
                if (a != b && (a >> 2) == (b >> 2)) w.add(a, b, a_k);
        GraphSystem sys(NodeMeasure(nodes, weights), std::move(w));

        std::vector<double> fvals(nodes.size());
        for (double& v : fvals) v = vdist(rng);
        const ScalarField f = field_from_node_values(nodes, fvals);
        std::vector<double> psi_vals(nodes.size());
        for (std::int64_t k = 0; k < count; ++k)
            psi_vals[static_cast<std::size_t>(k)] = dyadic_laplacian(j, f, k);
        const ScalarField psi = field_from_node_values(nodes, psi_vals);
        const auto family = bump_test_family(nodes, 0.4 * a_k, 300u + trial);
        rel.check(check_division(t_pairing(sys), s_pairing(sys), psi, grad0(f), family)
                      .max_relative(),
                  1e-12);
    }

    // Metric nets.
    for (int trial = 0; trial < 5; ++trial) {
        MetricMeasureNet net;
        const double h = 0.6 + 0.1 * trial;
        for (int k = 0; k < 6; ++k) {
            net.points.push_back(Point::scalar(h * k));
            net.masses.push_back(wdist(rng));
        }
        net.metric = euclidean_metric();
        net.delta = 0.5;
        net.level = 0;
        net.range_constant = 2.2 * h;
        Matrix H(6, Vector(6, 0.0));
        for (int a = 0; a < 6; ++a)
            for (int b = a + 1; b < 6; ++b) H[a][b] = H[b][a] = wdist(rng);
        const TwoPointField phi([](const Point& a, const Point& b) {
            return a[0] * b[0] + 0.3;
        });
        std::vector<double> psi_vals(6);
        for (std::size_t k = 0; k < 6; ++k) psi_vals[k] = net_kirchhoff(net, H, phi, k);
        const ScalarField psi = field_from_node_values(net.points, psi_vals);
        const auto family = bump_test_family(net.points, 0.4 * h, 500u + trial);
        rel.check(check_division(net_t_pairing(net), net_s_pairing(net, H), psi, phi,
                                 family)
                      .max_relative(),
                  1e-12);
    }

    // Counterexamples: no solution, then non-uniqueness.
    bool counter_ok = true;
    {
        const TPairing t = [](const ScalarField& g) { return g(Point::scalar(0.0)); };
        const QuadratureMeasure lebesgue = QuadratureMeasure::box_density(
            ScalarField([](const Point&) { return 1.0; }), Point{0.0}, Point{1.0});
        const IndependentCoupling indep(ScalarField([](const Point&) { return 1.0; }),
                                        lebesgue);
        const SPairing sigma = independent_s_pairing(indep, lebesgue);
        const TwoPointField one([](const Point&, const Point&) { return 1.0; });
        const ScalarField candidate([](const Point& x) { return 0.3 + x[0] * x[0]; });
        std::vector<ScalarField> family{tensor_bump(Point{0.5}, 0.5)};
        const auto rep = check_division(t, sigma, candidate, one, family);
        if (!(rep.max_residual > 0.1)) counter_ok = false;
    }
    {
        const TPairing t = [](const ScalarField& g) { return g(Point::scalar(0.0)); };
        const SPairing sigma = [](const ScalarField& test, const TwoPointField& p) {
            return test(Point::scalar(0.0)) * p(Point::scalar(0.0), Point::scalar(0.0));
        };
        const TwoPointField one([](const Point&, const Point&) { return 1.0; });
        const auto family = bump_test_family({Point{0.0}, Point{0.5}}, 0.8, 7u);
        for (const ScalarField& psi :
             {ScalarField([](const Point&) { return 1.0; }),
              ScalarField([](const Point& x) { return 1.0 + std::sin(x[0]); })}) {
            if (check_division(t, sigma, psi, one, family).max_residual > 1e-14)
                counter_ok = false;
        }
    }

    r.passed = rel.ok && counter_ok;
    r.detail = rel.detail(1e-12, "relative residual") +
               std::string("; counterexamples ") + (counter_ok ? "reproduced" : "FAIL");
    return r;
}

// --------------------------------------------------------------- criterion 10
CriterionResult conservation_and_maximum() {
    CriterionResult r{"flux conservation + nonlocal maximum principles", false, ""};
    std::mt19937 rng(909u);
    std::uniform_real_distribution<double> wdist(0.2, 2.0);
    std::uniform_real_distribution<double> vdist(-1.0, 1.0);
    bool flux_ok = true, max_ok = true;

    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Point> nodes;
        std::vector<double> weights;
        for (int k = 0; k < 8; ++k) {
            nodes.push_back(Point::scalar(0.9 * k));
            weights.push_back(wdist(rng));
        }
        CouplingWeights w(true);
        for (int a = 0; a < 8; ++a)
            for (int b = a + 1; b < 8; ++b) {
                const double v = wdist(rng);
                w.add(a, b, v);
                w.add(b, a, v);
            }
        GraphSystem sys(NodeMeasure(nodes, weights), std::move(w));
        std::vector<double> fvals(8);
        for (double& v : fvals) v = vdist(rng);
        const auto lap = laplacian(sys, field_from_node_values(nodes, fvals));
        double flux = 0.0, scale = 0.0;
        for (std::size_t k = 0; k < 8; ++k) {
            flux += sys.measure().weight(k) * lap[k];
            scale += std::abs(sys.measure().weight(k) * lap[k]);
        }
        if (std::abs(flux) > 1e-12 * std::max(1.0, scale)) flux_ok = false;

        // Strict maximum principle on the same systems.
        for (int rep_i = 0; rep_i < 10; ++rep_i) {
            std::vector<double> g(8);
            for (double& v : g) v = vdist(rng);
            const std::size_t arg = static_cast<std::size_t>((trial + rep_i) % 8);
            g[arg] = 1.8;
            const auto l = laplacian(sys, field_from_node_values(nodes, g));
            if (l[arg] > 1e-12) max_ok = false;
        }
    }

    // Metric nets: strict maxima under positive symmetric H.
    {
        MetricMeasureNet net;
        for (int k = 0; k < 7; ++k) {
            net.points.push_back(Point::scalar(0.8 * k));
            net.masses.push_back(1.0);
        }
        net.metric = euclidean_metric();
        net.delta = 0.5;
        net.level = 0;
        net.range_constant = 2.0;
        Matrix H(7, Vector(7, 0.0));
        for (int a = 0; a < 7; ++a)
            for (int b = a + 1; b < 7; ++b) H[a][b] = H[b][a] = wdist(rng);
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<double> g(7);
            for (double& v : g) v = vdist(rng);
            const std::size_t arg = static_cast<std::size_t>(trial % 7);
            g[arg] = 1.7;
            const ScalarField f = field_from_node_values(net.points, g);
            if (net_laplacian(net, H, f, arg) > 1e-12) max_ok = false;
        }
    }

    // Lattice operators: fd and fractional, 100 random fields each.
    const LatticeSpec spec(1, 0.5, 20);
    const FracSpec fs = FracSpec::make(1, 0.8, 20);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> vals(41);
        for (double& v : vals) v = vdist(rng);
        const int peak = trial % 19 - 9;
        vals[static_cast<std::size_t>(peak + 20)] = 1.9;
        ScalarField f([vals](const Point& x) {
            const int i = static_cast<int>(std::lround(x[0] / 0.5)) + 20;
            if (i < 0 || i >= static_cast<int>(vals.size())) return 0.0;
            return vals[static_cast<std::size_t>(i)];
        });
        f.sup_bound = 1.9;
        if (fd_laplacian(spec, f, {peak}) > 1e-12) max_ok = false;
        if (frac_laplacian(spec, fs, f, {peak}).value > 1e-12) max_ok = false;
        const std::int64_t dk = static_cast<std::int64_t>(peak + 20);
        ScalarField fd_shifted([vals](const Point& x) {
            const int i = static_cast<int>(std::lround(x[0] * 2.0));
            if (i < 0 || i >= static_cast<int>(vals.size())) return 0.0;
            return vals[static_cast<std::size_t>(i)];
        });
        if (dyadic_laplacian(1, fd_shifted, dk) > 1e-12) max_ok = false;
    }

    r.passed = flux_ok && max_ok;
    r.detail = std::string("flux ") + (flux_ok ? "conserved" : "FAIL") +
               ", maximum principle " + (max_ok ? "held" : "FAIL");
    return r;
}

std::vector<CriterionResult> extra_configs(const std::string& dir) {
    std::vector<CriterionResult> out;
    namespace fs = std::filesystem;
    if (dir.empty() || !fs::exists(dir)) return out;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& path : files) {
        CriterionResult r{"config " + path.filename().string(), false, ""};
        try {
            std::ifstream in(path);
            std::stringstream buf;
            buf << in.rdbuf();
            nlohmann::json j = nlohmann::json::parse(buf.str(), nullptr, false);
            if (j.is_discarded()) throw ValidationError("malformed JSON");
            for (const auto& [key, value] : j.items()) {
                (void)value;
                if (key != "family" && key != "phi" && key != "x" && key != "h0" &&
                    key != "levels" && key != "expect" && key != "tol" && key != "F")
                    throw ValidationError("unknown field '" + key + "'");
            }
            const std::string family = j.at("family").get<std::string>();
            ConvergenceFamily fam;
            if (family == "fd") fam = family_fd();
            else if (family == "poisson") fam = family_poisson_cutoff();
            else if (family == "coupling")
                fam = family_coupling(
                    tools::builtin_family_map(j.value("F", std::string("pow1ph"))));
            else throw ValidationError("unsupported family '" + family + "'");
            const TwoPointField phi =
                builtin_two_point(j.value("phi", std::string("sqdiff")));
            const auto rep = estimate_limit(fam, phi, Point::scalar(j.at("x").get<double>()),
                                            j.value("h0", 0.25), j.value("levels", 8));
            const double expect = j.at("expect").get<double>();
            const double tol = j.value("tol", 1e-3);
            r.passed = rep.verdict == Verdict::converged &&
                       std::abs(rep.extrapolated - expect) <= tol;
            std::ostringstream os;
            os << "extrapolated " << rep.extrapolated << " vs " << expect;
            r.detail = os.str();
        } catch (const std::exception& e) {
            r.detail = e.what();
        }
        out.push_back(r);
    }
    return out;
}

} // namespace

std::vector<CriterionResult> run_all(const Options& options) {
    const bool timing = std::getenv("KIRLAB_TIME_CRITERIA") != nullptr;
    std::vector<CriterionResult> results;
    const auto timed = [&](auto&& fn) {
        const auto t0 = std::chrono::steady_clock::now();
        results.push_back(fn());
        if (timing) {
            const auto dt = std::chrono::duration<double>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
            std::fprintf(stderr, "[%5.1fs] %s\n", dt, results.back().name.c_str());
        }
    };
    timed([&] { return haar_eigenrelation(options); });
    timed([] { return fd_exactness(); });
    timed([] { return lattice_constant(); });
    timed([] { return regular_regime(); });
    timed([] { return pv_regime(); });
    timed([] { return classical_identity(); });
    timed([] { return hilbert_limit(); });
    timed([] { return convergence_theorems(); });
    timed([] { return division_contract(); });
    timed([] { return conservation_and_maximum(); });
    for (auto& extra : extra_configs(options.config_dir))
        results.push_back(std::move(extra));
    return results;
}

int report(const std::vector<CriterionResult>& results, std::ostream& out) {
    bool all = true;
    int id = 1;
    for (const auto& r : results) {
        out << (r.passed ? "PASS" : "FAIL") << "  [" << id++ << "] " << r.name;
        if (!r.detail.empty()) out << "  (" << r.detail << ")";
        out << '\n';
        all = all && r.passed;
    }
    out << (all ? "all criteria passed" : "some criteria FAILED") << '\n';
    return all ? 0 : 1;
}

} // namespace kirlab::reproduce
