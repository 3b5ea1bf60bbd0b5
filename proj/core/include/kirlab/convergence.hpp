#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kirlab/fields.hpp"

namespace kirlab {

enum class Verdict { converged, diverged, inconclusive };

const char* to_string(Verdict v);

/// A parameterized pair h ↦ (T(h), S(h)) presented through its quotient
/// evaluator Q(Φ,h)(x) = (Σ(Φ,h)/T(h))(x), the object differentiated by the
/// dS/dT limit.
struct ConvergenceFamily {
    std::string name;
    /// Q(Φ, h) at x. Defined for h in (0, h₀].
    std::function<double(const TwoPointField&, double, const Point&)> quotient;
    /// The claimed limit, when the family states one.
    std::function<double(const TwoPointField&, const Point&)> claimed_limit;
    std::optional<double> claimed_order;
    /// Throws ValidationError when Φ is outside the family's admissible class.
    std::function<void(const TwoPointField&, const Point&)> check_admissible;
};

struct LimitReport {
    double extrapolated = 0.0;   ///< NaN unless verdict == converged
    double observed_order = 0.0; ///< +inf sentinel when Q is constant in h
    std::vector<double> hs;
    std::vector<double> values;
    std::vector<double> diffs;        ///< values[m+1] − values[m]
    std::vector<double> level_orders; ///< log₂|d_{m−1}/d_m| where resolvable
    Verdict verdict = Verdict::inconclusive;
    std::optional<std::size_t> failure_level; ///< first level whose evaluation failed
    std::string note;
};

/// Evaluates Q at h_m = h₀·2^{−m} for m = 0..levels−1, fits the order from
/// successive differences and Richardson-extrapolates at the fitted rate.
/// Divergence is flagged when |Q| grows by a factor ≥ 2 across three
/// consecutive levels (or overflows along such growth). A converged verdict
/// requires contracting differences with a positive fitted order.
LimitReport estimate_limit(const ConvergenceFamily& family, const TwoPointField& phi,
                           const Point& x, double h0, int levels);

/// Finite-difference family: T(h) = h²·h^n Σ δ_{hj̄},
/// S(h) the nearest-neighbor pair measure; Q = Kir_h Φ evaluated on the cube
/// containing x; limit Δ_yΦ(x,x), order 2. Admissible: Φ(x,x) = 0.
ConvergenceFamily family_fd();

/// Fractional family for 0 < α < 2: Q is the truncated
/// lattice sum (1/h^α) Σ Φ(hk̄,hj̄)/|k̄−j̄|^{n+α} on the cube containing x; the
/// claimed limit is the continuum fractional operator at s = α/2 (regular or
/// PV regime as α ≶ 1). Admissible: smooth Φ with bounded support vanishing
/// on the diagonal.
ConvergenceFamily family_frac(double alpha);

/// Poisson-cutoff family (Cauchy kernel against a shrinking band): with k = 1/h,
/// Q = (π/k)(1+k²x²) ∫_{x−1/k}^{x+1/k} Φ(x,y) dy → 2πx²Φ(x,x). The order is
/// reported empirically; no claim is set.
ConvergenceFamily family_poisson_cutoff();

/// Deterministic-coupling family: Q = (1/h)Φ(x, F(h,x));
/// limit ∂F/∂h(0,x)·∂Φ/∂y(x,x). F(0,·) must be the identity (contract
/// checked at the evaluation point).
ConvergenceFamily family_coupling(std::function<double(double, double)> F);

/// The divergent Gaussian/area pair: T(h) the Gaussian
/// approximate identity at scale h, S the area measure;
/// Q = √π·h·e^{x²/h²} ∫ Φ(x,y) dy. Diverges wherever the section integral is
/// positive and x ≠ 0.
ConvergenceFamily family_gaussian_area();

/// Tail-dichotomy family: S(h) has density ζ_k(x) = kζ(kx) against the area,
/// T(h) the Gaussian; Q = (ζ(kx)/η(kx)) ∫ Φ(x,y) dy. Compactly supported ζ
/// converges (to 0 for x ≠ 0); heavy tails diverge on the support projection.
ConvergenceFamily family_tail_dichotomy(ScalarField zeta, bool compact_support);

} // namespace kirlab
