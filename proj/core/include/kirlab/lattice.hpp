#pragma once

#include <vector>

#include "kirlab/fields.hpp"

namespace kirlab {

using LatticeIndex = std::vector<int>;

/// A finite window of the scaled lattice hℤⁿ: indices with |k̄|_∞ ≤ window.
struct LatticeSpec {
    int dim;
    double spacing;
    int window;

    LatticeSpec(int n, double h, int N);

    /// The lattice point  h·k̄.
    Point point(const LatticeIndex& k) const;
    bool inside(const LatticeIndex& k) const;
    /// All window indices in lexicographic order.
    std::vector<LatticeIndex> indices() const;
};

/// A rigorous bracket [lower, upper] around a series value.
struct Bracket {
    double lower = 0.0;
    double upper = 0.0;
    double midpoint() const { return 0.5 * (lower + upper); }
    double half_width() const { return 0.5 * (upper - lower); }
    bool contains(double v) const { return lower <= v && v <= upper; }
};

/// c(α) = Σ_{j̄≠0} |j̄|^{-n-α}: partial sum over 0 < |j̄|_∞ ≤ R plus an
/// integral-comparison tail bracket. |j̄| is the Euclidean norm; the window
/// is a sup-norm box. Requires alpha > 0. The bracket is tight for n = 1;
/// for n ≥ 2 the tail bounds account for norm equivalence and are looser.
Bracket frac_lattice_constant(int n, double alpha, int R);

/// Upper bound on the tail Σ_{|j̄|_∞ > R} |j̄|^{-n-α}.
double frac_tail_upper(int n, double alpha, int R);

/// Truncation parameters of the discrete fractional Laplacian. The operator
/// constructor requires α ∈ (0,2) (the validity domain of the convergence
/// theorems); `relaxed` admits any α > 0 for series-only use.
struct FracSpec {
    double alpha;
    int radius;        ///< truncation radius in index space, |j̄−k̄|_∞ ≤ radius
    double tail_bound; ///< upper bound on Σ_{|j̄|_∞ > radius} |j̄|^{-n-α}

    static FracSpec make(int dim, double alpha, int radius);
    static FracSpec make_relaxed(int dim, double alpha, int radius);
};

/// Kir_h Φ(hk̄) = (1/h²) Σ_m [Φ(hk̄, h(k̄+e_m)) + Φ(hk̄, h(k̄−e_m))].
/// The 2n axis neighbors must lie inside the window.
double fd_kirchhoff(const LatticeSpec& spec, const TwoPointField& phi, const LatticeIndex& k);

/// Δ_h f(hk̄) = Σ_m [f(h(k̄+e_m)) − 2f(hk̄) + f(h(k̄−e_m))] / h².
double fd_laplacian(const LatticeSpec& spec, const ScalarField& f, const LatticeIndex& k);

struct ValueWithBound {
    double value = 0.0;
    double bound = 0.0; ///< truncation error bound
};

/// Δ^α_h f(hk̄) = (1/h^α) Σ_{j̄≠k̄} (f(hj̄) − f(hk̄)) / |k̄−j̄|^{n+α}, truncated
/// at |j̄−k̄|_∞ ≤ spec.radius with the reported tail bound. Requires a
/// declared sup bound or a support radius covered by the truncation window.
ValueWithBound frac_laplacian(const LatticeSpec& spec, const FracSpec& fspec,
                              const ScalarField& f, const LatticeIndex& k);

struct FracHarmonicReport {
    bool harmonic = false;
    double deviation = 0.0;
    double bound = 0.0; ///< truncation contribution to the deviation
};

/// Checks the α-harmonic mean value f(hk̄) = (1/c(α)) Σ_{j̄≠k̄} f(hj̄)/|k̄−j̄|^{n+α}
/// within tol plus the truncation bound.
FracHarmonicReport frac_is_harmonic(const LatticeSpec& spec, const FracSpec& fspec,
                                    const ScalarField& f, const LatticeIndex& k, double tol);

} // namespace kirlab
