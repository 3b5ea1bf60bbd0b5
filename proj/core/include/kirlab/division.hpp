#pragma once

#include <span>
#include <vector>

#include "kirlab/fields.hpp"

namespace kirlab {

/// Residuals of the division identity ⟨T, φψ⟩ = ⟨⟨S, φΦ⟩⟩ over a finite
/// family of test functions.
struct DivisionReport {
    std::vector<double> residuals; ///< |⟨T, φ_i ψ⟩ − ⟨⟨S, φ_i Φ⟩⟩|
    std::vector<double> scales;    ///< max(|lhs|, |rhs|) per test function
    double max_residual = 0.0;

    /// Largest residual relative to the per-test scale (absolute when the
    /// scale is below `floor`).
    double max_relative(double floor = 1.0) const;
};

/// ⟨T, g⟩ for scalar test objects g.
using TPairing = std::function<double(const ScalarField&)>;
/// (φ, Φ) ↦ ⟨⟨S, φΦ⟩⟩.
using SPairing = std::function<double(const ScalarField&, const TwoPointField&)>;

/// Checks whether ψ divides Σ_{S,Φ} by T: residual_i = |⟨T, φ_iψ⟩ − ⟨⟨S, φ_iΦ⟩⟩|
/// for each supplied test function φ_i. Throws EvaluationError (naming the
/// test index) if either pairing returns a non-finite value.
DivisionReport check_division(const TPairing& t_pairing, const SPairing& sigma,
                              const ScalarField& psi, const TwoPointField& phi,
                              std::span<const ScalarField> test_functions);

/// The default witness family for the division identity: one C² tensor
/// bump per supplied
/// center plus `extra_random` bumps at seeded random centers inside the
/// bounding box. The bump profile (1-t²)³ is C² with support radius `radius`.
std::vector<ScalarField> bump_test_family(const std::vector<Point>& centers, double radius,
                                          unsigned seed = 913u, int extra_random = 8);

/// A single C² tensor bump centered at c.
ScalarField tensor_bump(const Point& center, double radius);

/// ⟨T, ·⟩ for an atomic T = Σ a_k δ_{x_k}.
TPairing atomic_t_pairing(std::vector<Point> nodes, std::vector<double> weights);

/// ⟨⟨S, ·⟩⟩ for an atomic S = Σ w_kj δ_{(x_k, x_j)}; entries are (k, j, w).
SPairing atomic_s_pairing(std::vector<Point> nodes,
                          std::vector<std::tuple<std::size_t, std::size_t, double>> entries);

/// A field defined by values on a node set: evaluates to value[k] at the node
/// nearest x if it matches within `tol`, else 0. Used to feed Kirchhoff-output
/// node values back into pairings against atomic distributions.
ScalarField field_from_node_values(std::vector<Point> nodes, std::vector<double> values,
                                   double tol = 1e-9);

} // namespace kirlab
