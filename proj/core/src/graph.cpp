#include "kirlab/graph.hpp"

#include <cmath>

#include "kirlab/parallel.hpp"

namespace kirlab {

NodeMeasure::NodeMeasure(std::vector<Point> nodes, std::vector<double> weights)
    : nodes_(std::move(nodes)), weights_(std::move(weights)) {
    if (nodes_.size() != weights_.size())
        throw ValidationError("NodeMeasure: nodes/weights size mismatch");
    if (nodes_.empty()) throw ValidationError("NodeMeasure: empty node set");
    for (double a : weights_)
        if (!(a > 0.0) || !std::isfinite(a))
            throw ValidationError("NodeMeasure: weights must be strictly positive");
    for (std::size_t k = 0; k < nodes_.size(); ++k)
        for (std::size_t j = k + 1; j < nodes_.size(); ++j)
            if (nodes_[k] == nodes_[j])
                throw ValidationError("NodeMeasure: nodes must be pairwise distinct (" +
                                      std::to_string(k) + ", " + std::to_string(j) + ")");
}

void CouplingWeights::add(std::size_t k, std::size_t j, double w) {
    if (k == j) throw ValidationError("CouplingWeights: diagonal entries must be zero");
    if (!(w >= 0.0) || !std::isfinite(w))
        throw ValidationError("CouplingWeights: weights must be nonnegative and finite");
    if (w == 0.0) return;
    entries_[{k, j}] += w;
    max_index_ = std::max({max_index_, k, j});
}

double CouplingWeights::at(std::size_t k, std::size_t j) const {
    auto it = entries_.find({k, j});
    return it == entries_.end() ? 0.0 : it->second;
}

double CouplingWeights::total() const {
    KahanSum s;
    for (const auto& [kj, w] : entries_) s.add(w);
    return s.value();
}

void CouplingWeights::check_symmetry() const {
    for (const auto& [kj, w] : entries_) {
        const double back = at(kj.second, kj.first);
        if (back != w)
            throw ContractError("CouplingWeights: symmetric flag set but w(" +
                                std::to_string(kj.first) + "," + std::to_string(kj.second) +
                                ") != w(" + std::to_string(kj.second) + "," +
                                std::to_string(kj.first) + ")");
    }
}

GraphSystem::GraphSystem(NodeMeasure measure, CouplingWeights coupling)
    : measure_(std::move(measure)), coupling_(std::move(coupling)), coupling_total_(0.0) {
    if (!coupling_.entries().empty() && coupling_.max_index() >= measure_.size())
        throw ValidationError("GraphSystem: coupling index beyond node range");
    if (coupling_.symmetric()) coupling_.check_symmetry();
    coupling_total_ = coupling_.total();
    if (!std::isfinite(coupling_total_))
        throw ValidationError("GraphSystem: coupling total is not finite");
}

std::vector<double> kirchhoff(const GraphSystem& sys, const TwoPointField& phi) {
    const NodeMeasure& T = sys.measure();
    std::vector<KahanSum> acc(T.size());
    for (const auto& [kj, w] : sys.coupling().entries()) {
        const auto [k, j] = kj;
        const double v = phi(T.node(k), T.node(j));
        if (!std::isfinite(v))
            throw EvaluationError("kirchhoff: non-finite field value at pair (" +
                                  std::to_string(k) + "," + std::to_string(j) + ")");
        acc[k].add(w * v);
    }
    std::vector<double> out(T.size());
    for (std::size_t k = 0; k < T.size(); ++k) out[k] = acc[k].value() / T.weight(k);
    return out;
}

std::vector<double> laplacian(const GraphSystem& sys, const ScalarField& f) {
    // A finite S is what admits Phi = grad0 f beyond compactly supported fields.
    if (!std::isfinite(sys.coupling_total()))
        throw ValidationError("laplacian: coupling total must be finite");
    std::vector<double> fvals(sys.measure().size());
    parallel_for(fvals.size(),
                 [&](std::size_t k) { fvals[k] = f(sys.measure().node(k)); });
    std::vector<KahanSum> acc(fvals.size());
    for (const auto& [kj, w] : sys.coupling().entries()) {
        const auto [k, j] = kj;
        acc[k].add(w * (fvals[j] - fvals[k]));
    }
    std::vector<double> out(fvals.size());
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = acc[k].value() / sys.measure().weight(k);
    return out;
}

HarmonicReport is_harmonic(const GraphSystem& sys, const ScalarField& f, double tol,
                           std::span<const std::size_t> subset) {
    const NodeMeasure& T = sys.measure();
    std::vector<double> fvals(T.size());
    for (std::size_t k = 0; k < T.size(); ++k) fvals[k] = f(T.node(k));

    std::vector<KahanSum> num(T.size());
    std::vector<KahanSum> den(T.size());
    for (const auto& [kj, w] : sys.coupling().entries()) {
        const auto [k, j] = kj;
        num[k].add(w * fvals[j]);
        den[k].add(w);
    }

    std::vector<std::size_t> all;
    if (subset.empty()) {
        all.resize(T.size());
        for (std::size_t k = 0; k < T.size(); ++k) all[k] = k;
        subset = all;
    }

    HarmonicReport report;
    for (std::size_t k : subset) {
        const double rowsum = den[k].value();
        if (rowsum <= 0.0)
            throw ValidationError("is_harmonic: zero coupling row sum at node " +
                                  std::to_string(k));
        const double dev = std::abs(fvals[k] - num[k].value() / rowsum);
        report.max_deviation = std::max(report.max_deviation, dev);
    }
    report.harmonic = report.max_deviation <= tol;
    return report;
}

TPairing t_pairing(const GraphSystem& sys) {
    return atomic_t_pairing(sys.measure().nodes(), sys.measure().weights());
}

SPairing s_pairing(const GraphSystem& sys) {
    std::vector<std::tuple<std::size_t, std::size_t, double>> entries;
    entries.reserve(sys.coupling().entries().size());
    for (const auto& [kj, w] : sys.coupling().entries())
        entries.emplace_back(kj.first, kj.second, w);
    return atomic_s_pairing(sys.measure().nodes(), std::move(entries));
}

} // namespace kirlab
