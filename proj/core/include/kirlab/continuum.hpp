#pragma once

#include <vector>

#include "kirlab/fields.hpp"

namespace kirlab {

struct ValueWithError {
    double value = 0.0;
    double error = 0.0; ///< a posteriori estimate (tail bounds + extrapolation gap)
};

/// The classical identity Kir_{T,S}Φ(x) = (Δ_yΦ)(x,x): trace of the y-Hessian
/// on the diagonal, analytic when declared, else central differences with
/// step h.
double classical_kir(const TwoPointField& phi, const Point& x, double h = 1e-4);

/// Parameters of the fractional kernel |x−y|^{−(n+2s)} and of its quadrature.
/// The regime follows s: absolutely integrable for s < ½, principal value for
/// s ≥ ½. The near/far split radius is fixed at 1, matching the estimates the
/// tests reuse as bounds.
struct FracKernelSpec {
    int dim = 1;
    double s = 0.25;
    int radial_levels = 13;      ///< geometric radial shells down to 2^{−radial_levels};
                                 ///< below that the quadratic Taylor coefficient of the
                                 ///< shell average completes the integral (finite
                                 ///< differences of Φ drown in roundoff deeper down)
    int subpanels = 8;           ///< Gauss panels per geometric shell
    int gauss_order = 16;
    int angular_resolution = 16; ///< for dim 2 and 3
    double eps0 = 0.5;           ///< PV ladder start
    int eps_levels = 14;         ///< PV ladder length

    static FracKernelSpec make(int dim, double s);
    bool pv_regime() const { return s >= 0.5; }
};

/// Kir_{T,S}Φ(x) = ∫ (Φ(x,y) − Φ(x,x)) |x−y|^{−(n+2s)} dy for 0 < s < ½.
/// Near field in polar form over geometric shells; far field up to the
/// declared support reach, beyond which the shell average is constant
/// (−Φ(x,x)·ω for supported fields, 0 for y-constant ones) and the power
/// tail is exact. Fields that keep varying at infinity need a declared
/// support radius. Rejects s ≥ ½ (use frac_kir_pv).
ValueWithError frac_kir_regular(const FracKernelSpec& spec, const TwoPointField& phi,
                                const Point& x);

/// The a priori bound ω_{n−1} ( ‖∇_yΦ‖_∞/(1−2s) + ‖Φ‖_∞/s ) on the regular
/// regime. Uses declared sup norms when present, else samples them over the
/// support box.
double frac_bound(const FracKernelSpec& spec, const TwoPointField& phi);

/// Samples ‖Φ‖_∞ and ‖∇_yΦ‖_∞ over [−radius, radius]^{2n} with `per_axis`
/// points per axis.
std::pair<double, double> sampled_sup_norms(const TwoPointField& phi, int dim, double radius,
                                            int per_axis = 17);

struct PvReport {
    double value = 0.0;         ///< Richardson-accelerated limit
    double observed_rate = 0.0; ///< fitted exponent of the Cauchy differences
    double error = 0.0;
    std::vector<double> eps;    ///< ε ladder
    std::vector<double> psi;    ///< partial values ψ_ε
};

/// Kir Φ(x) = lim_{ε→0} ∫_{|x−y|≥ε} (Φ(x,y) − Φ(x,x)) |x−y|^{−(n+2s)} dy for
/// ½ ≤ s < 1. The near field subtracts ∇_yΦ(x,x)·(y−x) (whose PV integral
/// vanishes by symmetry); successive partials must contract at the rate
/// ε^{2(1−s)} and the limit is Richardson-accelerated at that known rate.
/// Non-contracting differences raise ConvergenceError.
PvReport frac_kir_pv(const FracKernelSpec& spec, const TwoPointField& phi, const Point& x);

/// Quadrature parameters of the 1D principal-value machinery.
struct HilbertSpec {
    double near_radius = 1.0;
    int near_panels = 64;
    int gauss_order = 16;
    double far_factor = 2.0;   ///< far segments grow geometrically
    int max_far_segments = 64;
    double tail_tol = 1e-11;   ///< far-tail relative stopping increment
};

/// Hη(x) = p.v. ∫ η(y)/(x−y) dy, evaluated as ∫_0^∞ (η(x−t) − η(x+t))/t dt
/// (the symmetric pairing cancels the singularity). No 1/π normalization.
/// Raises ConvergenceError when the far tail does not settle.
double hilbert_pv(const ScalarField& f, double x, const HilbertSpec& spec = {});

/// The ε-regularized divider h^ε = h_ε + (σ/ε)·1_{[−ε,ε]}.
struct PVHilbertSpec {
    double eps = 0.1;
    HilbertSpec quadrature;

    explicit PVHilbertSpec(double e) : eps(e) {
        if (!(e > 0.0)) throw ValidationError("PVHilbertSpec: eps must be positive");
    }
};

/// Kir_ε Φ(x) = (1/h^ε(x)) ∫_{|x−y|>ε} Φ(x,y)/(x−y) dy, with 1/h^ε(x) = x for
/// |x| > ε and ε·sign(x) for |x| ≤ ε (0 at x = 0, consistent with the ε→0
/// limit x·H_yΦ(x,x)).
double hilbert_kir_eps(const PVHilbertSpec& spec, const TwoPointField& phi, double x);

/// The ε→0 limit Kir_{T,S}Φ(x) = x·H_yΦ(x,x).
double hilbert_kir_limit(const TwoPointField& phi, double x, const HilbertSpec& spec = {});

/// Δ_{T,S}f(x) = x·Hf(x). The H·1 = 0 agreement is realized by declaring the
/// constant part of f, which is subtracted before the transform.
double hilbert_laplacian(const ScalarField& f, double x, double constant_part = 0.0,
                         const HilbertSpec& spec = {});

} // namespace kirlab
