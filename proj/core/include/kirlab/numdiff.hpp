#pragma once

#include "kirlab/fields.hpp"

namespace kirlab {

/// Central-difference gradient of y ↦ Φ(x,y) at y = x. Error O(h²) for C³
/// fields. h must be positive.
Vector num_y_gradient(const TwoPointField& phi, const Point& x, double h);

/// Central-difference Hessian of y ↦ Φ(x,y) at y = x (diagonal by the
/// three-point stencil, off-diagonal by the four-point cross stencil).
/// Error O(h²) for C⁴ fields.
Matrix num_y_hessian(const TwoPointField& phi, const Point& x, double h);

/// Central-difference gradient of a scalar field at x.
Vector num_gradient(const ScalarField& f, const Point& x, double h);

/// Directional derivative ∂f/∂x_i at x by central differences.
double num_partial(const ScalarField& f, const Point& x, std::size_t i, double h);

} // namespace kirlab
