#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

// Independent reference machinery for verifying the library's operators.
// Nothing here calls back into kirlab: the integrators are plain recursive
// adaptive Simpson, so agreement with the fixed-rule production paths is a
// genuine cross-check.
namespace kirlab::oracle {

using Fn1 = std::function<double(double)>;

/// Recursive adaptive Simpson on [a,b].
double adaptive_simpson(const Fn1& f, double a, double b, double tol, int max_depth = 40);

/// Adaptive quadrature on (0, b] for integrands with an endpoint singularity
/// at 0: geometric pre-splitting plus adaptive Simpson per piece, with the
/// final piece extrapolated geometrically.
double adaptive_singular(const Fn1& f, double b, double tol, int levels = 48);

/// ∫ (Φ(x,x+t) + Φ(x,x−t) − 2Φ(x,x)) t^{−1−2s} dt over (0,1] plus the far
/// field ∫_{|z|≥1}(Φ(x,x+z) − Φ(x,x))|z|^{−1−2s} dz: the 1D Taylor-subtracted
/// form of the fractional Kirchhoff divergence, valid for the regular regime
/// and equal to the principal value for s ∈ [1/2, 1).
double frac_kir_1d(const std::function<double(double, double)>& phi, double x, double s,
                   double far_reach, double tol);

} // namespace kirlab::oracle
