#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "kirlab/fields.hpp"
#include "kirlab/lattice.hpp" // ValueWithBound

namespace kirlab {

/// The dyadic metric on ℝ⁺: length of the smallest dyadic interval containing
/// both points. rho(x,x) = 0; rho(x,y) ≥ |x−y|; ultrametric. Negative input
/// is rejected.
double rho(double x, double y);

/// ρ between net points x^j_k = k·2^{−j} and x^j_i, computed exactly from the
/// index bits.
double rho_index(std::int64_t k, std::int64_t i, int j);

/// I^j_k = [k·2^{−j}, (k+1)·2^{−j}).
struct DyadicInterval {
    int scale = 0;          ///< j
    std::int64_t position = 0; ///< k ≥ 0

    double length() const;
    double left() const;
    double right() const;
    bool contains(double x) const;
};

/// Δ_{ρ,j} f(x^j_k): the quad-block Laplacian. With k = 4l+m, the coupled
/// nodes are the other three members of the block {4l,...,4l+3} (exactly the
/// i with ρ(x^j_k, x^j_i) ≤ 2^{−j+2}), and the value is
/// Σ f(x^j_{4l+m_i}) − 3 f(x^j_k).
double dyadic_laplacian(int j, const ScalarField& f, std::int64_t k);

/// Δ^ρ_{α,j} f(x^j_k) = Σ_{i≠k} (f(x^j_i) − f(x^j_k)) · 2^{−j} / ρ(x^j_k,x^j_i)^{1+α},
/// truncated to indices 0 ≤ i ≤ window. The tail is bounded generation by
/// generation: the ρ-annulus of radius 2^{g−j} around x^j_k holds 2^{g−1}
/// indices with total weight 2^{−1−α(g−j)}, a geometric series.
ValueWithBound dyadic_frac_laplacian(int j, double alpha, const ScalarField& f,
                                     std::int64_t k, std::int64_t window);

/// Haar function h^j_k(x) = 2^{j/2} h⁰₀(2^j x − k); support I^j_k, mean zero,
/// unit L² norm.
struct HaarFunction {
    int scale = 0;
    std::int64_t position = 0;

    double operator()(double x) const;
    DyadicInterval support() const { return {scale, position}; }
    double support_length() const;
    ScalarField as_scalar_field() const;
};

double haar_eval(const HaarFunction& h, double x);

/// Finitely supported expansion Σ c_{j,k} h^j_k.
class HaarExpansion {
public:
    void add(int j, std::int64_t k, double coef);
    double eval(double x) const;
    const std::map<std::pair<int, std::int64_t>, double>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

private:
    std::map<std::pair<int, std::int64_t>, double> terms_;
};

/// Finitely supported two-variable expansion Σ c · h^j_k(x) h^{j'}_{k'}(y).
class TwoVarHaarExpansion {
public:
    using Key = std::pair<std::pair<int, std::int64_t>, std::pair<int, std::int64_t>>;

    void add(int jx, std::int64_t kx, int jy, std::int64_t ky, double coef);
    double eval(double x, double y) const;
    /// The y-section at fixed x as a one-variable expansion.
    HaarExpansion section_at(double x) const;
    const std::map<Key, double>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

private:
    std::map<Key, double> terms_;
};

/// The Haar eigenvalue constant c_s = 2^{2s} / (2^{2s} − 1).
double haar_cs(double s);

/// The dyadic fractional Laplacian Δ_s, realized through the ancestor
/// kernel K_{2s}(x,y) = Σ_{I∈𝒟: x,y∈I} |I|^{−(1+2s)} = ρ(x,y)^{−(1+2s)} / (1 − 2^{−(1+2s)})
/// applied to f(x) − f(y):
///
///   Δ_s f(x) = ∫_{ℝ⁺} (f(x) − f(y)) K_{2s}(x,y) dy.
///
/// ρ is constant on the dyadic annuli A_m(x) = I_m(x) ∖ I_{m+1}(x) (each a
/// dyadic sibling interval of measure 2^{−m−1}), so for Haar expansions every
/// annulus integral has a closed form and the evaluation is exact. On the
/// Haar system Δ_s h = c_s |supp h|^{−2s} h. Requires s ∈ (0, ½).
double delta_s_apply(double s, const HaarExpansion& f, double x);
double delta_s_apply(double s, const HaarFunction& h, double x);

/// Quadrature parameters for the general-field path of Δ_s.
struct DyadicQuadSpec {
    double lipschitz = 1.0; ///< ρ-Lipschitz bound of f (Euclidean bound works too)
    int fine_scale = 40;    ///< finest annulus scale: annuli down to 2^{−fine_scale}
    int panels = 32;        ///< dyadic-aligned panels per annulus
    int gauss_order = 8;
};

/// Δ_s for a general bounded field with bounded support: annulus-wise
/// quadrature with a geometric fine-scale tail bound. f.support_radius is
/// required.
ValueWithBound delta_s_apply(double s, const ScalarField& f, double x,
                             const DyadicQuadSpec& spec);

/// The spectral Kirchhoff divergence on the span of 𝓗⊗𝓗:
/// Kir_s Φ(x) = c_s Σ_h Σ_h̃ |supp h̃|^{−2s} ⟨⟨Φ, h⊗h̃⟩⟩ h(x) h̃(x).
/// The expansion coefficients are the pairings ⟨⟨Φ, h⊗h̃⟩⟩. An empty
/// expansion gives 0. Agrees with Δ_s applied to y-sections.
double spectral_kirchhoff(double s, const TwoVarHaarExpansion& phi, double x);

/// Exact ∫_{I^q_i} h^J_K dy (both dyadic, so the intervals are nested or
/// disjoint and the integral is a closed form).
double haar_integral_over_dyadic(const HaarFunction& h, const DyadicInterval& interval);

} // namespace kirlab
