#include "kirlab/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "kirlab/continuum.hpp"
#include "kirlab/lattice.hpp"
#include "kirlab/numdiff.hpp"
#include "kirlab/parallel.hpp"
#include "kirlab/quadrature.hpp"

namespace kirlab {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::converged: return "converged";
        case Verdict::diverged: return "diverged";
        default: return "inconclusive";
    }
}

namespace {

constexpr double kGrowthFactor = 2.0;
constexpr int kGrowthStreak = 3;

bool trailing_growth(const std::vector<double>& q) {
    if (q.size() < kGrowthStreak + 1) return false;
    int streak = 0;
    for (std::size_t m = q.size() - 1; m >= 1; --m) {
        const double prev = std::abs(q[m - 1]);
        const double cur = std::abs(q[m]);
        if (prev > 0.0 && cur >= kGrowthFactor * prev)
            ++streak;
        else
            break;
        if (streak >= kGrowthStreak) return true;
        if (m == 1) break;
    }
    return streak >= kGrowthStreak;
}

} // namespace

LimitReport estimate_limit(const ConvergenceFamily& family, const TwoPointField& phi,
                           const Point& x, double h0, int levels) {
    if (!(h0 > 0.0)) throw ValidationError("estimate_limit: h0 must be positive");
    if (levels < 3) throw ValidationError("estimate_limit: need at least 3 levels");
    if (family.check_admissible) family.check_admissible(phi, x);

    LimitReport report;
    report.extrapolated = std::numeric_limits<double>::quiet_NaN();
    double h = h0;
    bool overflowed = false;
    for (int m = 0; m < levels; ++m) {
        double q;
        try {
            q = family.quotient(phi, h, x);
        } catch (const Error&) {
            report.failure_level = static_cast<std::size_t>(m);
            break;
        }
        if (!std::isfinite(q)) {
            overflowed = true;
            break;
        }
        report.hs.push_back(h);
        report.values.push_back(q);
        h *= 0.5;
    }
    if (report.values.empty()) {
        report.note = "no evaluable levels";
        return report;
    }

    double scale = 0.0;
    for (double v : report.values) scale = std::max(scale, std::abs(v));
    const double floor = 1e-14 * std::max(scale, 1.0);

    for (std::size_t m = 0; m + 1 < report.values.size(); ++m)
        report.diffs.push_back(report.values[m + 1] - report.values[m]);
    for (std::size_t m = 1; m < report.diffs.size(); ++m) {
        const double a = std::abs(report.diffs[m - 1]);
        const double b = std::abs(report.diffs[m]);
        if (a > floor && b > floor)
            report.level_orders.push_back(std::log2(a / b));
        else
            report.level_orders.push_back(std::numeric_limits<double>::quiet_NaN());
    }

    // Divergence: sustained ≥2× growth, or overflow reached along such growth.
    if (trailing_growth(report.values) ||
        (overflowed && report.values.size() >= 2 &&
         std::abs(report.values.back()) > 0.0 &&
         std::abs(report.values.back()) >= kGrowthFactor *
             std::abs(report.values[report.values.size() - 2]))) {
        report.verdict = Verdict::diverged;
        if (overflowed) report.note = "overflowed during growth";
        return report;
    }
    if (report.failure_level || overflowed) {
        report.note = overflowed ? "non-finite quotient" : "evaluator failure";
        return report;
    }

    // Constant-in-h quotient.
    bool constant = true;
    for (double d : report.diffs)
        if (std::abs(d) > floor) constant = false;
    if (constant) {
        report.verdict = Verdict::converged;
        report.extrapolated = report.values.back();
        report.observed_order = std::numeric_limits<double>::infinity();
        return report;
    }

    // Cauchy contraction within slack, judged on the trailing window (the
    // asymptotic regime; coarse levels may cross zero accidentally).
    const std::size_t window = std::min<std::size_t>(5, report.diffs.size());
    const std::size_t start = report.diffs.size() - window;
    // Slack 1.5 tolerates transient ratio bumps from mixed-order error terms
    // while staying well under the divergence growth factor.
    bool contracting = true;
    for (std::size_t m = start + 1; m < report.diffs.size(); ++m) {
        const double a = std::abs(report.diffs[m - 1]);
        const double b = std::abs(report.diffs[m]);
        if (a <= floor && b <= floor) continue;
        if (b > 1.5 * a + floor) contracting = false;
    }

    std::vector<double> orders;
    for (std::size_t m = std::max<std::size_t>(start, 1); m < report.diffs.size(); ++m) {
        const double p = report.level_orders[m - 1];
        if (std::isfinite(p)) orders.push_back(p);
    }
    double fitted = 0.0;
    if (!orders.empty()) {
        std::sort(orders.begin(), orders.end());
        fitted = orders[orders.size() / 2];
    }
    report.observed_order = fitted;

    if (contracting && fitted > 0.0) {
        report.verdict = Verdict::converged;
        const double p = std::clamp(fitted, 0.05, 8.0);
        const double w = std::pow(2.0, -p) / (1.0 - std::pow(2.0, -p));
        report.extrapolated = report.values.back() + report.diffs.back() * w;
    }
    return report;
}

namespace {

LatticeIndex cube_of(const Point& x, double h) {
    LatticeIndex k(x.dim());
    for (std::size_t d = 0; d < x.dim(); ++d)
        k[d] = static_cast<int>(std::floor(x[d] / h));
    return k;
}

void require_diagonal_vanishing(const TwoPointField& phi, const Point& x,
                                const char* family) {
    const double scale = phi.sup_bound.value_or(1.0);
    for (double offset : {0.0, 0.3, -0.7}) {
        Point z = x;
        for (std::size_t d = 0; d < z.dim(); ++d) z[d] += offset;
        if (std::abs(phi(z, z)) > 1e-12 * std::max(1.0, scale))
            throw ValidationError(std::string(family) +
                                  ": Φ must vanish on the diagonal");
    }
}

double section_integral(const TwoPointField& phi, const Point& x) {
    if (!phi.support_radius)
        throw ValidationError("convergence family: Φ needs a support radius");
    const double r = *phi.support_radius;
    return integrate_composite(
        [&](double y) { return phi(x, Point::scalar(y)); }, -r, r, 64, 12);
}

double gauss_profile(double t) {
    return std::exp(-t * t) / std::sqrt(std::numbers::pi);
}

} // namespace

ConvergenceFamily family_fd() {
    ConvergenceFamily fam;
    fam.name = "fd";
    fam.claimed_order = 2.0;
    fam.check_admissible = [](const TwoPointField& phi, const Point& x) {
        require_diagonal_vanishing(phi, x, "family_fd");
    };
    fam.quotient = [](const TwoPointField& phi, double h, const Point& x) {
        const LatticeIndex k = cube_of(x, h);
        int reach = 2;
        for (int v : k) reach = std::max(reach, std::abs(v) + 2);
        const LatticeSpec spec(static_cast<int>(x.dim()), h, reach);
        return fd_kirchhoff(spec, phi, k);
    };
    fam.claimed_limit = [](const TwoPointField& phi, const Point& x) {
        return classical_kir(phi, x);
    };
    return fam;
}

ConvergenceFamily family_frac(double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0))
        throw ValidationError("family_frac: alpha must lie in (0,2)");
    ConvergenceFamily fam;
    fam.name = "frac";
    fam.check_admissible = [](const TwoPointField& phi, const Point& x) {
        require_diagonal_vanishing(phi, x, "family_frac");
        if (!phi.support_radius)
            throw ValidationError("family_frac: Φ needs a support radius");
    };
    fam.quotient = [alpha](const TwoPointField& phi, double h, const Point& x) {
        const int n = static_cast<int>(x.dim());
        const LatticeIndex k = cube_of(x, h);
        // Window: the support of Φ(hk̄,·) plus the unit far-field ring.
        const double reach = *phi.support_radius + sup_norm(x) + 1.0;
        const double r_real = std::ceil(reach / h) + 2.0;
        if (r_real > 5e7)
            throw ValidationError("family_frac: window of " + std::to_string(r_real) +
                                  " cells is impractical at this h");
        const int R = static_cast<int>(r_real);
        const Point xk = [&] {
            std::vector<double> c(k.size());
            for (std::size_t d = 0; d < k.size(); ++d) c[d] = h * k[d];
            return Point(std::move(c));
        }();
        if (n > 2)
            throw ValidationError("family_frac: quotient implemented for n <= 2");
        KahanSum s;
        if (n == 1) {
            for (int off = -R; off <= R; ++off) {
                if (off == 0) continue;
                const double num = phi(xk, Point::scalar(h * (k[0] + off)));
                if (num == 0.0) continue;
                s.add(num / std::pow(std::abs(static_cast<double>(off)), 1.0 + alpha));
            }
        } else {
            for (int a = -R; a <= R; ++a)
                for (int b = -R; b <= R; ++b) {
                    if (a == 0 && b == 0) continue;
                    const double num =
                        phi(xk, Point{h * (k[0] + a), h * (k[1] + b)});
                    if (num == 0.0) continue;
                    const double dist = std::sqrt(static_cast<double>(a) * a +
                                                  static_cast<double>(b) * b);
                    s.add(num / std::pow(dist, 2.0 + alpha));
                }
        }
        return s.value() / std::pow(h, alpha);
    };
    fam.claimed_limit = [alpha](const TwoPointField& phi, const Point& x) {
        const double s = 0.5 * alpha;
        FracKernelSpec spec = FracKernelSpec::make(static_cast<int>(x.dim()), s);
        if (spec.pv_regime()) return frac_kir_pv(spec, phi, x).value;
        return frac_kir_regular(spec, phi, x).value;
    };
    return fam;
}

ConvergenceFamily family_poisson_cutoff() {
    ConvergenceFamily fam;
    fam.name = "poisson";
    fam.quotient = [](const TwoPointField& phi, double h, const Point& x) {
        if (x.dim() != 1)
            throw ValidationError("family_poisson_cutoff: 1D only");
        const double c = x.x();
        const double integral = integrate_segment(
            [&](double y) { return phi(x, Point::scalar(y)); }, c - h, c + h, 16);
        return std::numbers::pi * h * (1.0 + c * c / (h * h)) * integral;
    };
    fam.claimed_limit = [](const TwoPointField& phi, const Point& x) {
        const double c = x.x();
        return 2.0 * std::numbers::pi * c * c * phi(x, x);
    };
    return fam;
}

ConvergenceFamily family_coupling(std::function<double(double, double)> F) {
    ConvergenceFamily fam;
    fam.name = "coupling";
    fam.check_admissible = [F](const TwoPointField& phi, const Point& x) {
        require_diagonal_vanishing(phi, x, "family_coupling");
        const double x0 = x.x();
        if (std::abs(F(0.0, x0) - x0) > 1e-12)
            throw ContractError("family_coupling: F(0,·) must be the identity");
    };
    fam.quotient = [F](const TwoPointField& phi, double h, const Point& x) {
        const double x0 = x.x();
        return phi(x, Point::scalar(F(h, x0))) / h;
    };
    fam.claimed_limit = [F](const TwoPointField& phi, const Point& x) {
        const double x0 = x.x();
        // One-sided ∂F/∂h(0,x) with a Richardson step (F need not extend to h<0).
        const double h1 = 1e-3, h2 = 5e-4;
        const double d1 = (F(h1, x0) - x0) / h1;
        const double d2 = (F(h2, x0) - x0) / h2;
        const double dF = 2.0 * d2 - d1;
        const double dphi = phi.has_y_gradient() ? phi.y_gradient(x, x)[0]
                                                 : num_y_gradient(phi, x, 1e-5)[0];
        return dF * dphi;
    };
    return fam;
}

ConvergenceFamily family_gaussian_area() {
    ConvergenceFamily fam;
    fam.name = "gaussian-area";
    fam.quotient = [](const TwoPointField& phi, double h, const Point& x) {
        if (x.dim() != 1)
            throw ValidationError("family_gaussian_area: 1D only");
        const double t = x.x() / h;
        const double integral = section_integral(phi, x);
        // 1/η_k(x) with η_k(x) = (1/h)·η(x/h), η the Gaussian profile.
        return h / gauss_profile(t) * integral;
    };
    return fam;
}

ConvergenceFamily family_tail_dichotomy(ScalarField zeta, bool compact_support) {
    ConvergenceFamily fam;
    fam.name = compact_support ? "dichotomy-compact" : "dichotomy-heavy";
    fam.quotient = [zeta](const TwoPointField& phi, double h, const Point& x) {
        if (x.dim() != 1)
            throw ValidationError("family_tail_dichotomy: 1D only");
        const double t = x.x() / h;
        const double zt = zeta(Point::scalar(t));
        if (zt == 0.0) return 0.0; // compact tails die before the Gaussian underflows
        return zt / gauss_profile(t) * section_integral(phi, x);
    };
    fam.claimed_limit = [zeta, compact_support](const TwoPointField& phi, const Point& x) {
        if (x.x() == 0.0) {
            const double z0 = zeta(Point::scalar(0.0));
            return std::sqrt(std::numbers::pi) * z0 * section_integral(phi, x);
        }
        if (compact_support) return 0.0;
        return std::numeric_limits<double>::quiet_NaN();
    };
    return fam;
}

} // namespace kirlab
