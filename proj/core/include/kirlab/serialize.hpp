#pragma once

#include <ostream>
#include <span>
#include <string>

#include "kirlab/dyadic.hpp"
#include "kirlab/graph.hpp"
#include "kirlab/metric.hpp"

namespace kirlab {

/// JSON object {"nodes":[[...],...], "weights":[...]}. Unknown keys are
/// rejected; parse problems raise ValidationError.
NodeMeasure node_measure_from_json(const std::string& text);
std::string to_json(const NodeMeasure& m);

/// JSON object {"entries":[[k,j,w],...]} with optional "symmetric": bool.
CouplingWeights coupling_from_json(const std::string& text);
std::string to_json(const CouplingWeights& w);

/// JSON object {"delta":..., "j":..., "C":..., "points":[...], "masses":[...]}
/// with optional "metric": "euclidean" (default) or "dyadic". The ball-mass
/// callable of the dyadic metric is the 1-Ahlfors |B_ρ|; euclidean nets get
/// interval length.
MetricMeasureNet net_from_json(const std::string& text);

/// JSON array [{"j":0,"k":0,"coef":1.0}, ...].
HaarExpansion haar_expansion_from_json(const std::string& text);

/// Same array form with optional "j2"/"k2" per entry (default: the diagonal
/// tensor term h^j_k ⊗ h^j_k).
TwoVarHaarExpansion two_var_haar_from_json(const std::string& text);

/// Fixed numeric formatting shared by all CSV output ('.' decimal, %.12g).
std::string format_number(double v);

/// One RFC-4180 row, LF terminated.
void write_csv_row(std::ostream& out, std::span<const std::string> cells);

} // namespace kirlab
