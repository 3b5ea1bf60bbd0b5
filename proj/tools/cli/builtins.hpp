#pragma once

#include <functional>
#include <string>

#include "kirlab/coupling.hpp"
#include "kirlab/fields.hpp"

// Named function families exposed on the command line. Every builtin is
// deterministic and carries the declared bounds the operators need.
namespace kirlab::tools {

/// Scalar fields: one, identity, square, cube, sin, gauss, bump, smoothbump,
/// cauchy, indicator0.
ScalarField builtin_scalar(const std::string& name);

/// Two-point fields: one, ydiff, sqdiff, xdiag, bumpx-cauchyy, pairbump,
/// bump2, grad0:<scalar name>.
TwoPointField builtin_two_point(const std::string& name);

/// 1D maps F for the deterministic coupling: identity, double, square.
VectorMap builtin_map(const std::string& name);

/// Parameterized maps F(h,x) for the coupling convergence family:
/// identity, pow1ph, drift.
std::function<double(double, double)> builtin_family_map(const std::string& name);

/// Probability-density profiles for the tail dichotomy: compactbump, cauchy.
ScalarField builtin_zeta(const std::string& name);
bool zeta_has_compact_support(const std::string& name);

} // namespace kirlab::tools
