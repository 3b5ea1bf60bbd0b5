#pragma once

#include <functional>
#include <vector>

#include "kirlab/errors.hpp"

namespace kirlab {

/// Gauss–Legendre rule on [-1,1]. Nodes are computed once per order by
/// Newton iteration and cached; the evaluation order is fixed (ascending
/// node), so results are reproducible bit for bit.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussRule& gauss_legendre(int order);

/// ∫_a^b g(t) dt with a single Gauss–Legendre panel of the given order.
double integrate_segment(const std::function<double(double)>& g, double a, double b,
                         int order = 16);

/// Composite rule: [a,b] split into `panels` equal panels.
double integrate_composite(const std::function<double(double)>& g, double a, double b,
                           int panels, int order = 8);

/// Geometric (dyadic-in-scale) panels on (0, b]: panels [b·2^{-m-1}, b·2^{-m}]
/// for m = 0..levels-1, each integrated with one Gauss panel. Suited to
/// integrands with an endpoint singularity at 0.
double integrate_geometric(const std::function<double(double)>& g, double b, int levels,
                           int order = 16);

/// Surface area ω_{n-1} of the unit sphere in ℝⁿ (ω₀ = 2, ω₁ = 2π, ω₂ = 4π).
double unit_sphere_area(int n);

/// Fixed angular rule on S^{n-1} for n ∈ {1,2,3}: unit directions and weights
/// summing to ω_{n-1}. The rules are symmetric (each direction appears with
/// its antipode), so odd integrands cancel exactly.
struct SphereRule {
    std::vector<std::vector<double>> directions;
    std::vector<double> weights;
};

SphereRule sphere_rule(int n, int resolution = 16);

} // namespace kirlab
