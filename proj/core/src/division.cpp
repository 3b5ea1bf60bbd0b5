#include "kirlab/division.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "kirlab/parallel.hpp"

namespace kirlab {

double DivisionReport::max_relative(double floor) const {
    double worst = 0.0;
    for (std::size_t i = 0; i < residuals.size(); ++i) {
        const double denom = std::max(scales[i], floor);
        worst = std::max(worst, residuals[i] / denom);
    }
    return worst;
}

DivisionReport check_division(const TPairing& t_pairing, const SPairing& sigma,
                              const ScalarField& psi, const TwoPointField& phi,
                              std::span<const ScalarField> test_functions) {
    DivisionReport report;
    report.residuals.reserve(test_functions.size());
    report.scales.reserve(test_functions.size());
    for (std::size_t i = 0; i < test_functions.size(); ++i) {
        const ScalarField& test = test_functions[i];
        const double lhs = t_pairing(product(test, psi));
        const double rhs = sigma(test, phi);
        if (!std::isfinite(lhs) || !std::isfinite(rhs))
            throw EvaluationError("check_division: non-finite pairing at test function " +
                                  std::to_string(i));
        report.residuals.push_back(std::abs(lhs - rhs));
        report.scales.push_back(std::max(std::abs(lhs), std::abs(rhs)));
        report.max_residual = std::max(report.max_residual, report.residuals.back());
    }
    return report;
}

ScalarField tensor_bump(const Point& center, double radius) {
    if (!(radius > 0.0)) throw ValidationError("tensor_bump: radius must be positive");
    return ScalarField([center, radius](const Point& x) {
        double v = 1.0;
        for (std::size_t i = 0; i < x.dim(); ++i) {
            const double t = (x[i] - center[i]) / radius;
            const double u = 1.0 - t * t;
            if (u <= 0.0) return 0.0;
            v *= u * u * u;
        }
        return v;
    });
}

std::vector<ScalarField> bump_test_family(const std::vector<Point>& centers, double radius,
                                          unsigned seed, int extra_random) {
    std::vector<ScalarField> family;
    family.reserve(centers.size() + static_cast<std::size_t>(std::max(0, extra_random)));
    for (const Point& c : centers) family.push_back(tensor_bump(c, radius));

    if (!centers.empty() && extra_random > 0) {
        const std::size_t n = centers.front().dim();
        std::vector<double> lo(n, 0.0), hi(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            lo[i] = centers.front()[i];
            hi[i] = centers.front()[i];
        }
        for (const Point& c : centers)
            for (std::size_t i = 0; i < n; ++i) {
                lo[i] = std::min(lo[i], c[i]);
                hi[i] = std::max(hi[i], c[i]);
            }
        std::mt19937 rng(seed);
        for (int r = 0; r < extra_random; ++r) {
            std::vector<double> c(n);
            for (std::size_t i = 0; i < n; ++i) {
                std::uniform_real_distribution<double> dist(lo[i] - radius, hi[i] + radius);
                c[i] = dist(rng);
            }
            family.push_back(tensor_bump(Point(std::move(c)), radius));
        }
    }
    return family;
}

TPairing atomic_t_pairing(std::vector<Point> nodes, std::vector<double> weights) {
    if (nodes.size() != weights.size())
        throw ValidationError("atomic_t_pairing: nodes/weights size mismatch");
    return [nodes = std::move(nodes), weights = std::move(weights)](const ScalarField& g) {
        KahanSum s;
        for (std::size_t k = 0; k < nodes.size(); ++k) s.add(weights[k] * g(nodes[k]));
        return s.value();
    };
}

SPairing atomic_s_pairing(std::vector<Point> nodes,
                          std::vector<std::tuple<std::size_t, std::size_t, double>> entries) {
    return [nodes = std::move(nodes), entries = std::move(entries)](
               const ScalarField& test, const TwoPointField& phi) {
        KahanSum s;
        for (const auto& [k, j, w] : entries)
            s.add(w * test(nodes[k]) * phi(nodes[k], nodes[j]));
        return s.value();
    };
}

ScalarField field_from_node_values(std::vector<Point> nodes, std::vector<double> values,
                                   double tol) {
    if (nodes.size() != values.size())
        throw ValidationError("field_from_node_values: size mismatch");
    return ScalarField([nodes = std::move(nodes), values = std::move(values), tol](
                           const Point& x) {
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            if (nodes[k].dim() != x.dim()) continue;
            if (distance(nodes[k], x) <= tol) return values[k];
        }
        return 0.0;
    });
}

} // namespace kirlab
