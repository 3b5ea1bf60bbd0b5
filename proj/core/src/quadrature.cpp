#include "kirlab/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace kirlab {

namespace {

GaussRule compute_gauss(int order) {
    GaussRule r;
    r.nodes.resize(order);
    r.weights.resize(order);
    const double pi = std::numbers::pi;
    for (int i = 0; i < order; ++i) {
        // Chebyshev initial guess, then Newton on P_n.
        double x = std::cos(pi * (i + 0.75) / (order + 0.5));
        double p0 = 0.0, p1 = 0.0;
        for (int it = 0; it < 100; ++it) {
            p0 = 1.0;
            p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        p0 = 1.0;
        p1 = x;
        for (int k = 2; k <= order; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        const double dp = order * (x * p1 - p0) / (x * x - 1.0);
        r.nodes[order - 1 - i] = x;
        r.weights[order - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

} // namespace

const GaussRule& gauss_legendre(int order) {
    if (order < 1 || order > 128) throw ValidationError("gauss_legendre: order out of range");
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_gauss(order)).first;
    return it->second;
}

double integrate_segment(const std::function<double(double)>& g, double a, double b,
                         int order) {
    const GaussRule& rule = gauss_legendre(order);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        s += rule.weights[i] * g(mid + half * rule.nodes[i]);
    return s * half;
}

double integrate_composite(const std::function<double(double)>& g, double a, double b,
                           int panels, int order) {
    if (panels < 1) throw ValidationError("integrate_composite: panels must be >= 1");
    double s = 0.0;
    const double w = (b - a) / panels;
    for (int p = 0; p < panels; ++p)
        s += integrate_segment(g, a + p * w, a + (p + 1) * w, order);
    return s;
}

double integrate_geometric(const std::function<double(double)>& g, double b, int levels,
                           int order) {
    if (levels < 1) throw ValidationError("integrate_geometric: levels must be >= 1");
    double s = 0.0;
    double hi = b;
    for (int m = 0; m < levels; ++m) {
        const double lo = hi * 0.5;
        s += integrate_segment(g, lo, hi, order);
        hi = lo;
    }
    return s;
}

double unit_sphere_area(int n) {
    switch (n) {
        case 1: return 2.0;
        case 2: return 2.0 * std::numbers::pi;
        case 3: return 4.0 * std::numbers::pi;
        default: throw ValidationError("unit_sphere_area: only n in {1,2,3} supported");
    }
}

SphereRule sphere_rule(int n, int resolution) {
    SphereRule r;
    const double pi = std::numbers::pi;
    if (n == 1) {
        r.directions = {{1.0}, {-1.0}};
        r.weights = {1.0, 1.0};
    } else if (n == 2) {
        const int K = std::max(4, resolution * 2);
        for (int i = 0; i < K; ++i) {
            const double th = 2.0 * pi * i / K;
            r.directions.push_back({std::cos(th), std::sin(th)});
            r.weights.push_back(2.0 * pi / K);
        }
    } else if (n == 3) {
        // Product rule: Gauss in cosθ, uniform in φ.
        const GaussRule& gz = gauss_legendre(resolution);
        const int K = 2 * resolution;
        for (std::size_t a = 0; a < gz.nodes.size(); ++a) {
            const double c = gz.nodes[a];
            const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
            for (int i = 0; i < K; ++i) {
                const double ph = 2.0 * pi * (i + 0.5) / K;
                r.directions.push_back({s * std::cos(ph), s * std::sin(ph), c});
                r.weights.push_back(gz.weights[a] * 2.0 * pi / K);
            }
        }
    } else {
        throw ValidationError("sphere_rule: only n in {1,2,3} supported");
    }
    return r;
}

} // namespace kirlab
