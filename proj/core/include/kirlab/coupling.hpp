#pragma once

#include <vector>

#include "kirlab/division.hpp"
#include "kirlab/fields.hpp"

namespace kirlab {

/// A finite quadrature realization of a measure on X: either an atom list or
/// a density on an axis-aligned box (the two kinds every worked example
/// uses). Integration order is fixed, so results are reproducible.
class QuadratureMeasure {
public:
    static QuadratureMeasure atoms(std::vector<Point> points, std::vector<double> weights);
    static QuadratureMeasure box_density(ScalarField density, Point lo, Point hi,
                                         int panels_per_axis = 32, int gauss_order = 8);

    double integrate(const std::function<double(const Point&)>& g) const;
    double mass() const;

private:
    QuadratureMeasure() = default;

    bool is_atoms_ = true;
    std::vector<Point> points_;
    std::vector<double> weights_;
    ScalarField density_;
    Point lo_, hi_;
    int panels_ = 0;
    int order_ = 0;
};

/// π = π₁ × π₂ with π₁ ≪ μ: the independent coupling.
struct IndependentCoupling {
    ScalarField density;    ///< dπ₁/dμ, must be ≥ 0
    QuadratureMeasure pi2;  ///< second marginal

    IndependentCoupling(ScalarField d, QuadratureMeasure p2)
        : density(std::move(d)), pi2(std::move(p2)) {}
};

/// Kir_{μ,π}Φ(x) = (dπ₁/dμ)(x) ∫ Φ(x,y) dπ₂(y).
double independent_kir(const IndependentCoupling& c, const TwoPointField& phi,
                       const Point& x);

/// Δ_{μ,π}f(x) = (dπ₁/dμ)(x) ( ∫ f dπ₂ − f(x)·π₂(X) ). Requires finite π₂(X).
double independent_laplacian(const IndependentCoupling& c, const ScalarField& f,
                             const Point& x);

/// A map F: X → X with an optional Jacobian (J[i][j] = ∂F_i/∂x_j).
struct VectorMap {
    std::function<Point(const Point&)> eval;
    std::function<Matrix(const Point&)> jacobian;

    Point operator()(const Point& x) const { return eval(x); }
    bool has_jacobian() const { return static_cast<bool>(jacobian); }
};

/// π = (1/h)·μ∘G⁻¹ with G(x) = (x, F(x)): the deterministic coupling,
/// carrying the smooth density g of μ needed by the derivative operators.
struct DeterministicCoupling {
    VectorMap map;          ///< F
    ScalarField density;    ///< g > 0 where the derivative operators are used; empty = 1
    double scale = 1.0;     ///< h
    double deriv_step = 1e-4;

    double g(const Point& x) const { return density.valid() ? density(x) : 1.0; }
};

/// Kir_{μ,F}Φ(x) = Φ(x, F(x)).
double deterministic_kir(const DeterministicCoupling& c, const TwoPointField& phi,
                         const Point& x);

/// Δ_{μ,F,h}f(x) = (1/h)(f(F(x)) − f(x)).
double deterministic_laplacian(const DeterministicCoupling& c, const ScalarField& f,
                               const Point& x);

/// S = ∂π/∂x_i:  Kir_{i,1}Φ = (1/g)·∂/∂x_i[g·(Φ∘G)] − (∂Φ/∂x_i)∘G.
double positive_order_kir_x(const DeterministicCoupling& c, std::size_t i,
                            const TwoPointField& phi, const Point& x);

/// Δ_{i,1}f = ∂F/∂x_i · (∇f∘F) + [(f∘F) − f] · ∂(log g)/∂x_i.
double positive_order_laplacian_x(const DeterministicCoupling& c, std::size_t i,
                                  const ScalarField& f, const Point& x);

/// S = ∂π/∂y_j:  Kir_{j,2}Φ = (∂Φ/∂y_j)∘G.
double positive_order_kir_y(const DeterministicCoupling& c, std::size_t j,
                            const TwoPointField& phi, const Point& x);

/// Δ_{j,2}f = (∂f/∂x_j)∘F.
double positive_order_laplacian_y(const DeterministicCoupling& c, std::size_t j,
                                  const ScalarField& f, const Point& x);

/// ⟨T_μ, ·⟩ for a quadrature measure.
TPairing measure_t_pairing(QuadratureMeasure mu);

/// ⟨⟨S_π, φΦ⟩⟩ for the independent coupling: ∬ φ(x)Φ(x,y) dπ₁(x) dπ₂(y).
SPairing independent_s_pairing(IndependentCoupling c, QuadratureMeasure mu);

/// ⟨⟨S_π, φΦ⟩⟩ for the pushforward coupling: (1/h)∫ φ(x)Φ(x,F(x)) dμ(x).
SPairing deterministic_s_pairing(DeterministicCoupling c, QuadratureMeasure mu);

} // namespace kirlab
