#pragma once

#include <optional>
#include <span>
#include <vector>

#include "kirlab/division.hpp"
#include "kirlab/fields.hpp"
#include "kirlab/lattice.hpp" // ValueWithBound

namespace kirlab {

using Metric = std::function<double(const Point&, const Point&)>;
using BallMass = std::function<double(const Point&, double)>;

/// A user-supplied dyadic-type net at a fixed level j: points x^j_k with cube
/// masses μ(Q^j_k), the ambient metric, and (for the fractional operator) a
/// ball-mass callable. The coupling range is d(x^j_k, x^j_i) < C·δ^j.
/// The library does not construct the partition; it consumes its output.
struct MetricMeasureNet {
    std::vector<Point> points;
    std::vector<double> masses;
    Metric metric;
    BallMass ball_mass; ///< may be empty unless net_frac_laplacian is used
    double delta = 0.5;
    int level = 0;
    double range_constant = 2.0; ///< C

    void validate() const;
    double coupling_range() const;
    std::size_t size() const { return points.size(); }
};

/// Kir_j Φ(x^j_k) = (1/μ(Q^j_k)) Σ_{i≠k, d<Cδ^j} Φ(x^j_k,x^j_i) (μ(Q^j_k)+μ(Q^j_i)) H_ki.
/// H must be symmetric and positive where read; violations raise ContractError.
double net_kirchhoff(const MetricMeasureNet& net, const Matrix& H, const TwoPointField& phi,
                     std::size_t k);

/// Δ_j f(x^j_k) = Σ_{d<Cδ^j} (f(x^j_i) − f(x^j_k)) (1 + μ(Q^j_i)/μ(Q^j_k)) H_ki.
double net_laplacian(const MetricMeasureNet& net, const Matrix& H, const ScalarField& f,
                     std::size_t k);

/// Δ_{α,j} f(x^j_k) = Σ_{i≠k} μ(Q^j_i)(f(x^j_i) − f(x^j_k)) /
///                    ( d^α(x^j_k,x^j_i) [μB(x^j_k,d) + μB(x^j_i,d)] ).
double net_frac_laplacian(const MetricMeasureNet& net, double alpha, const ScalarField& f,
                          std::size_t k);

/// Pairings of the net's T_j = Σ μ(Q^j_k) δ_{x^j_k} and S_j (the H-weighted
/// coupling), for the division-contract oracle.
TPairing net_t_pairing(const MetricMeasureNet& net);
SPairing net_s_pairing(const MetricMeasureNet& net, const Matrix& H);

/// Verifies the metric axioms (identity, symmetry, triangle inequality) on
/// every triple drawn from the samples; throws ContractError on a violation.
void check_metric_axioms(const Metric& metric, std::span<const Point> samples);

/// A symmetric kernel comparable to the pure power d^{−(γ+σ)}:
/// c₁·1_{d<1}·d^{−(γ+σ)} ≤ K ≤ c₂·d^{−(γ+σ)}.
struct MasterKernel {
    /// K(x,y); the distance is passed along to spare recomputation.
    std::function<double(double d, const Point& x, const Point& y)> eval;
    double sigma = 0.5; ///< σ ∈ (0,1); equals 2s for the pure power case
    double gamma = 1.0;
    double upper_c = 1.0;                ///< c₂
    std::optional<double> lower_c = 1.0; ///< c₁ (near field); unset to skip the check

    static MasterKernel pure_power(double gamma, double s);
};

/// Verifies the comparability bounds at the given off-diagonal sample pairs.
void check_kernel_bounds(const MasterKernel& kernel, const Metric& metric,
                         std::span<const std::pair<Point, Point>> samples);

/// ∫_{r_lo ≤ d(x,y) < r_hi} g(y) dμ(y): how a concrete space integrates over
/// metric annuli. Callables must tolerate concurrent invocation.
using AnnulusIntegrator =
    std::function<double(const Point& x, double r_lo, double r_hi,
                         const std::function<double(const Point&)>& g)>;

/// A γ-Ahlfors space presented through its annulus quadrature.
struct AhlforsSpace {
    double gamma = 1.0;
    Metric metric;
    AnnulusIntegrator integrate;
    double mass_upper = 2.0; ///< c₂ in μ(B(x,r)) ≤ c₂ r^γ, used by tail bounds
};

struct AhlforsQuadSpec {
    int near_levels = 40;             ///< annuli down to d ≈ 2^{−near_levels}
    int far_levels = 6;               ///< annuli out to d ≈ 2^{far_levels}
    double lipschitz = 1.0;           ///< |Φ(x,y)−Φ(x,x)| ≤ L·d(x,y)
    std::optional<double> sup;        ///< ‖Φ‖_∞ override (else Φ.sup_bound)
};

/// Kir_{T,S}Φ(x) = ∫_X (Φ(x,y) − Φ(x,x)) 𝒦(x,y) dμ(y) over a γ-Ahlfors space,
/// assembled annulus by annulus with Lipschitz-controlled near-field and
/// power-decay far-field tail bounds.
ValueWithBound ahlfors_kirchhoff(const AhlforsSpace& space, const MasterKernel& kernel,
                                 const TwoPointField& phi, const Point& x,
                                 const AhlforsQuadSpec& spec);

/// Annulus integrator for (ℝ, |·|, Lebesgue) restricted to 1D.
AnnulusIntegrator euclidean_1d_integrator(int panels = 16, int gauss_order = 16);

/// Annulus integrator for the 1-Ahlfors dyadic space (ℝ⁺, ρ, Lebesgue):
/// a metric annulus is a finite union of dyadic sibling intervals, integrated
/// with dyadic-aligned panels.
AnnulusIntegrator dyadic_annulus_integrator(int panels = 32, int gauss_order = 8);

/// The dyadic metric lifted to 1D points.
Metric dyadic_metric();
/// The Euclidean metric.
Metric euclidean_metric();

} // namespace kirlab
