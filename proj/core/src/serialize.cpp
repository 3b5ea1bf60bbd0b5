#include "kirlab/serialize.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace kirlab {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ValidationError("malformed JSON");
    return j;
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok) throw ValidationError("unknown field '" + key + "'");
    }
}

Point point_from(const json& arr) {
    if (!arr.is_array() || arr.empty())
        throw ValidationError("point must be a non-empty array");
    std::vector<double> c;
    for (const auto& v : arr) {
        if (!v.is_number()) throw ValidationError("point coordinates must be numbers");
        c.push_back(v.get<double>());
    }
    return Point(std::move(c));
}

} // namespace

NodeMeasure node_measure_from_json(const std::string& text) {
    const json j = parse(text);
    if (!j.is_object()) throw ValidationError("node measure: expected an object");
    reject_unknown(j, {"nodes", "weights"});
    if (!j.contains("nodes") || !j.contains("weights"))
        throw ValidationError("node measure: need 'nodes' and 'weights'");
    std::vector<Point> nodes;
    for (const auto& n : j["nodes"]) nodes.push_back(point_from(n));
    std::vector<double> weights = j["weights"].get<std::vector<double>>();
    return NodeMeasure(std::move(nodes), std::move(weights));
}

std::string to_json(const NodeMeasure& m) {
    json j;
    j["nodes"] = json::array();
    for (const Point& p : m.nodes()) j["nodes"].push_back(p.coords());
    j["weights"] = m.weights();
    return j.dump();
}

CouplingWeights coupling_from_json(const std::string& text) {
    const json j = parse(text);
    if (!j.is_object()) throw ValidationError("coupling: expected an object");
    reject_unknown(j, {"entries", "symmetric"});
    if (!j.contains("entries")) throw ValidationError("coupling: need 'entries'");
    CouplingWeights w(j.value("symmetric", false));
    for (const auto& e : j["entries"]) {
        if (!e.is_array() || e.size() != 3)
            throw ValidationError("coupling: entries are [k, j, w] triples");
        w.add(e[0].get<std::size_t>(), e[1].get<std::size_t>(), e[2].get<double>());
    }
    return w;
}

std::string to_json(const CouplingWeights& w) {
    json j;
    j["entries"] = json::array();
    for (const auto& [kj, v] : w.entries())
        j["entries"].push_back(json::array({kj.first, kj.second, v}));
    if (w.symmetric()) j["symmetric"] = true;
    return j.dump();
}

MetricMeasureNet net_from_json(const std::string& text) {
    const json j = parse(text);
    if (!j.is_object()) throw ValidationError("net: expected an object");
    reject_unknown(j, {"delta", "j", "C", "points", "masses", "metric"});
    for (const char* key : {"delta", "j", "C", "points", "masses"})
        if (!j.contains(key))
            throw ValidationError(std::string("net: missing field '") + key + "'");

    MetricMeasureNet net;
    net.delta = j["delta"].get<double>();
    net.level = j["j"].get<int>();
    net.range_constant = j["C"].get<double>();
    for (const auto& p : j["points"]) net.points.push_back(point_from(p));
    net.masses = j["masses"].get<std::vector<double>>();

    const std::string metric = j.value("metric", std::string("euclidean"));
    if (metric == "euclidean") {
        net.metric = euclidean_metric();
        net.ball_mass = [](const Point&, double r) { return 2.0 * r; };
    } else if (metric == "dyadic") {
        net.metric = dyadic_metric();
        // |B_ρ(x,r)| is the largest dyadic interval containing x with length < r.
        net.ball_mass = [](const Point&, double r) {
            if (!(r > 0.0)) return 0.0;
            return std::ldexp(1.0, static_cast<int>(std::ceil(std::log2(r))) - 1);
        };
    } else {
        throw ValidationError("net: metric must be 'euclidean' or 'dyadic'");
    }
    net.validate();
    return net;
}

HaarExpansion haar_expansion_from_json(const std::string& text) {
    const json j = parse(text);
    if (!j.is_array()) throw ValidationError("haar expansion: expected an array");
    HaarExpansion e;
    for (const auto& term : j) {
        reject_unknown(term, {"j", "k", "coef"});
        if (!term.contains("j") || !term.contains("k") || !term.contains("coef"))
            throw ValidationError("haar expansion: terms are {j, k, coef}");
        e.add(term["j"].get<int>(), term["k"].get<std::int64_t>(),
              term["coef"].get<double>());
    }
    return e;
}

TwoVarHaarExpansion two_var_haar_from_json(const std::string& text) {
    const json j = parse(text);
    if (!j.is_array()) throw ValidationError("haar expansion: expected an array");
    TwoVarHaarExpansion e;
    for (const auto& term : j) {
        reject_unknown(term, {"j", "k", "j2", "k2", "coef"});
        if (!term.contains("j") || !term.contains("k") || !term.contains("coef"))
            throw ValidationError("haar expansion: terms are {j, k, [j2, k2,] coef}");
        const int jx = term["j"].get<int>();
        const auto kx = term["k"].get<std::int64_t>();
        const int jy = term.value("j2", jx);
        const auto ky = term.contains("k2") ? term["k2"].get<std::int64_t>() : kx;
        e.add(jx, kx, jy, ky, term["coef"].get<double>());
    }
    return e;
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_csv_row(std::ostream& out, std::span<const std::string> cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out << ',';
        const std::string& c = cells[i];
        if (c.find_first_of(",\"\n") != std::string::npos) {
            out << '"';
            for (char ch : c) {
                if (ch == '"') out << '"';
                out << ch;
            }
            out << '"';
        } else {
            out << c;
        }
    }
    out << '\n';
}

} // namespace kirlab
