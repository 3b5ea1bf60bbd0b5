#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "kirlab/division.hpp"
#include "kirlab/fields.hpp"

namespace kirlab {

/// The discrete distribution T = Σ a_k δ_{x_k}: a finite node set with
/// strictly positive weights. Nodes must be pairwise distinct.
class NodeMeasure {
public:
    NodeMeasure(std::vector<Point> nodes, std::vector<double> weights);

    std::size_t size() const { return nodes_.size(); }
    const std::vector<Point>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }
    const Point& node(std::size_t k) const { return nodes_[k]; }
    double weight(std::size_t k) const { return weights_[k]; }

private:
    std::vector<Point> nodes_;
    std::vector<double> weights_;
};

/// The discrete distribution S = Σ w_kj δ_{(x_k,x_j)}: sparse nonnegative
/// pair weights with zero diagonal.
class CouplingWeights {
public:
    CouplingWeights() = default;
    explicit CouplingWeights(bool symmetric) : symmetric_(symmetric) {}

    /// Adds w to entry (k,j). Diagonal and negative weights are rejected.
    void add(std::size_t k, std::size_t j, double w);

    double at(std::size_t k, std::size_t j) const;
    const std::map<std::pair<std::size_t, std::size_t>, double>& entries() const {
        return entries_;
    }
    bool symmetric() const { return symmetric_; }
    /// Σ w_kj over all entries.
    double total() const;
    std::size_t max_index() const { return max_index_; }

    /// Verifies w_kj == w_jk for every stored entry; throws ContractError.
    void check_symmetry() const;

private:
    std::map<std::pair<std::size_t, std::size_t>, double> entries_;
    bool symmetric_ = false;
    std::size_t max_index_ = 0;
};

/// A weighted node system (T, S) on which the discrete Kirchhoff divergence
/// and Laplacian act.
class GraphSystem {
public:
    GraphSystem(NodeMeasure measure, CouplingWeights coupling);

    const NodeMeasure& measure() const { return measure_; }
    const CouplingWeights& coupling() const { return coupling_; }
    double coupling_total() const { return coupling_total_; }

private:
    NodeMeasure measure_;
    CouplingWeights coupling_;
    double coupling_total_;
};

/// Kir_{S,T}Φ(x_k) = (1/a_k) Σ_j w_kj Φ(x_k, x_j), one value per node.
/// Throws EvaluationError (with the pair index) on non-finite Φ values.
std::vector<double> kirchhoff(const GraphSystem& sys, const TwoPointField& phi);

/// Δ_{T,S}f(x_k) = (1/a_k) Σ_j w_kj (f(x_j) − f(x_k)) = Kir(grad0 f).
/// Requires S finite (always true for stored systems; rejected if the total
/// overflowed).
std::vector<double> laplacian(const GraphSystem& sys, const ScalarField& f);

/// Mean-value harmonicity report.
struct HarmonicReport {
    bool harmonic = false;
    double max_deviation = 0.0; ///< sup_k |f(x_k) − weighted neighbor mean|
};

/// Checks f(x_k) = Σ_j w_kj f(x_j) / Σ_j w_kj within tol at every node of
/// `subset` (all nodes when empty). A zero row sum raises ValidationError
/// naming the offending node.
HarmonicReport is_harmonic(const GraphSystem& sys, const ScalarField& f, double tol,
                           std::span<const std::size_t> subset = {});

/// ⟨T, ·⟩ and ⟨⟨S, φ · ⟩⟩ pairings realized by direct summation; the oracles
/// for check_division on graph systems.
TPairing t_pairing(const GraphSystem& sys);
SPairing s_pairing(const GraphSystem& sys);

} // namespace kirlab
