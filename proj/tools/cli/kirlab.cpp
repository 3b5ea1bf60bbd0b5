#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "builtins.hpp"
#include "kirlab/continuum.hpp"
#include "kirlab/convergence.hpp"
#include "kirlab/coupling.hpp"
#include "kirlab/dyadic.hpp"
#include "kirlab/graph.hpp"
#include "kirlab/lattice.hpp"
#include "kirlab/metric.hpp"
#include "kirlab/serialize.hpp"
#include "reproduce.hpp"

namespace {

using namespace kirlab;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitContract = 3;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// All artifact output funnels through one sink so a given config writes
/// byte-identical bytes run after run.
class OutputSink {
public:
    explicit OutputSink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw ValidationError("cannot write '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

void emit_row(std::ostream& out, const std::vector<std::string>& cells) {
    write_csv_row(out, cells);
}

// ------------------------------------------------------------------ commands

struct GraphArgs {
    std::string graph_file;
    std::string op = "laplacian";
    std::string func = "grad0:square";
    std::string phi = "sqdiff";
    double tol = 1e-9;
    std::string out;
};

int run_graph(const GraphArgs& a) {
    const json doc = json::parse(slurp(a.graph_file), nullptr, false);
    if (doc.is_discarded() || !doc.is_object() || !doc.contains("measure") ||
        !doc.contains("coupling"))
        throw ValidationError("graph file must be {\"measure\":..., \"coupling\":...}");
    GraphSystem sys(node_measure_from_json(doc["measure"].dump()),
                    coupling_from_json(doc["coupling"].dump()));
    OutputSink sink(a.out);
    std::ostream& out = sink.stream();

    if (a.op == "harmonic") {
        const auto rep = is_harmonic(sys, tools::builtin_scalar(a.func), a.tol);
        emit_row(out, {"harmonic", "max_deviation"});
        emit_row(out, {rep.harmonic ? "true" : "false",
                       format_number(rep.max_deviation)});
        return kExitOk;
    }

    const std::size_t dim = sys.measure().node(0).dim();
    std::vector<std::string> header{"node_index"};
    for (std::size_t d = 0; d < dim; ++d) header.push_back("x" + std::to_string(d));
    header.push_back("value");
    emit_row(out, header);

    std::vector<double> values;
    if (a.op == "kir") {
        values = kirchhoff(sys, tools::builtin_two_point(a.phi));
    } else if (a.op == "laplacian") {
        values = laplacian(sys, tools::builtin_scalar(a.func));
    } else {
        throw ValidationError("graph: unknown op '" + a.op + "'");
    }
    for (std::size_t k = 0; k < values.size(); ++k) {
        std::vector<std::string> row{std::to_string(k)};
        for (std::size_t d = 0; d < dim; ++d)
            row.push_back(format_number(sys.measure().node(k)[d]));
        row.push_back(format_number(values[k]));
        emit_row(out, row);
    }
    return kExitOk;
}

struct LatticeArgs {
    int dim = 1;
    double h = 0.5;
    int window = 4;
    double alpha = 0.0; // 0 = finite differences
    int radius = 64;
    std::string func = "square";
    std::string out;
};

int run_lattice(const LatticeArgs& a) {
    const LatticeSpec spec(a.dim, a.h, a.window);
    const ScalarField f = tools::builtin_scalar(a.func);
    OutputSink sink(a.out);
    std::ostream& out = sink.stream();

    std::vector<std::string> header;
    for (int d = 0; d < a.dim; ++d) header.push_back("k" + std::to_string(d));
    for (int d = 0; d < a.dim; ++d) header.push_back("x" + std::to_string(d));
    header.push_back("value");
    header.push_back("bound");
    emit_row(out, header);

    std::optional<FracSpec> fspec;
    if (a.alpha > 0.0) fspec = FracSpec::make(a.dim, a.alpha, a.radius);

    for (const LatticeIndex& k : spec.indices()) {
        bool interior = true;
        for (int d = 0; d < a.dim; ++d)
            if (std::abs(k[d]) >= a.window) interior = false;
        if (!interior && !fspec) continue;

        double value, bound = 0.0;
        if (fspec) {
            const auto vb = frac_laplacian(spec, *fspec, f, k);
            value = vb.value;
            bound = vb.bound;
        } else {
            value = fd_laplacian(spec, f, k);
        }
        std::vector<std::string> row;
        for (int d = 0; d < a.dim; ++d) row.push_back(std::to_string(k[d]));
        const Point p = spec.point(k);
        for (int d = 0; d < a.dim; ++d) row.push_back(format_number(p[d]));
        row.push_back(format_number(value));
        row.push_back(format_number(bound));
        emit_row(out, row);
    }
    return kExitOk;
}

struct DyadicArgs {
    std::string op = "spectral";
    double s = 0.25;
    double alpha = 1.0;
    int j = 0;
    std::int64_t k = 0;
    std::int64_t window = 4096;
    double x = 0.0;
    double y = 0.0;
    std::string coef = "[]";
    std::string func = "indicator0";
    std::string out;
};

int run_dyadic(const DyadicArgs& a) {
    OutputSink sink(a.out);
    std::ostream& out = sink.stream();
    char buf[64];
    if (a.op == "rho") {
        std::snprintf(buf, sizeof buf, "%.6f", rho(a.x, a.y));
        out << buf << "\n";
    } else if (a.op == "laplacian") {
        std::snprintf(buf, sizeof buf, "%.6f",
                      dyadic_laplacian(a.j, tools::builtin_scalar(a.func), a.k));
        out << buf << "\n";
    } else if (a.op == "frac") {
        const auto vb = dyadic_frac_laplacian(a.j, a.alpha,
                                              tools::builtin_scalar(a.func), a.k,
                                              a.window);
        emit_row(out, {"value", "bound"});
        emit_row(out, {format_number(vb.value), format_number(vb.bound)});
    } else if (a.op == "spectral") {
        const TwoVarHaarExpansion phi = two_var_haar_from_json(a.coef);
        std::snprintf(buf, sizeof buf, "%.6f", spectral_kirchhoff(a.s, phi, a.x));
        out << buf << "\n";
    } else {
        throw ValidationError("dyadic: unknown op '" + a.op + "'");
    }
    return kExitOk;
}

struct MetricArgs {
    std::string net_file;
    std::string op = "laplacian";
    std::string func = "square";
    std::string phi = "sqdiff";
    double alpha = 1.0;
    double H = 1.0;
    std::string out;
};

int run_metric(const MetricArgs& a) {
    const MetricMeasureNet net = net_from_json(slurp(a.net_file));
    const Matrix H(net.size(), Vector(net.size(), a.H));
    OutputSink sink(a.out);
    std::ostream& out = sink.stream();
    emit_row(out, {"node_index", "value"});
    for (std::size_t k = 0; k < net.size(); ++k) {
        double value;
        if (a.op == "kir")
            value = net_kirchhoff(net, H, tools::builtin_two_point(a.phi), k);
        else if (a.op == "laplacian")
            value = net_laplacian(net, H, tools::builtin_scalar(a.func), k);
        else if (a.op == "frac")
            value = net_frac_laplacian(net, a.alpha, tools::builtin_scalar(a.func), k);
        else
            throw ValidationError("metric: unknown op '" + a.op + "'");
        emit_row(out, {std::to_string(k), format_number(value)});
    }
    return kExitOk;
}

struct FracArgs {
    double s = 0.25;
    int dim = 1;
    std::vector<double> xs{0.0};
    std::string mode = "regular";
    std::string phi = "pairbump";
    std::string out;
};

int run_frac(const FracArgs& a) {
    const FracKernelSpec spec = FracKernelSpec::make(a.dim, a.s);
    const TwoPointField phi = tools::builtin_two_point(a.phi);
    if ((a.mode == "pv") != spec.pv_regime())
        throw ValidationError("frac: mode '" + a.mode + "' does not match s=" +
                              format_number(a.s));
    OutputSink sink(a.out);
    std::ostream& out = sink.stream();
    emit_row(out, {"x", "value", "error_estimate", "rate"});
    for (double x : a.xs) {
        if (spec.pv_regime()) {
            const PvReport rep = frac_kir_pv(spec, phi, Point::scalar(x));
            emit_row(out, {format_number(x), format_number(rep.value),
                           format_number(rep.error), format_number(rep.observed_rate)});
        } else {
            const auto rep = frac_kir_regular(spec, phi, Point::scalar(x));
            emit_row(out, {format_number(x), format_number(rep.value),
                           format_number(rep.error), "0"});
        }
    }
    return kExitOk;
}

struct HilbertArgs {
    std::string phi = "bumpx-cauchyy";
    double x = 1.0;
    double eps_start = 0.4;
    int levels = 6;
    std::string out;
};

int run_hilbert(const HilbertArgs& a) {
    const TwoPointField phi = tools::builtin_two_point(a.phi);
    OutputSink sink(a.out);
    std::ostream& out = sink.stream();
    const double limit = hilbert_kir_limit(phi, a.x);
    emit_row(out, {"eps", "kir_eps", "gap_to_limit"});
    double eps = a.eps_start;
    for (int m = 0; m < a.levels; ++m) {
        const double v = hilbert_kir_eps(PVHilbertSpec(eps), phi, a.x);
        emit_row(out, {format_number(eps), format_number(v),
                       format_number(std::abs(v - limit))});
        eps *= 0.5;
    }
    emit_row(out, {"limit", format_number(limit), "0"});
    return kExitOk;
}

struct CouplingArgs {
    std::string kind = "det";
    std::string F = "double";
    std::string g = "one";
    std::string func = "square";
    std::string phi = "sqdiff";
    std::size_t axis = 0;
    double h = 1.0;
    std::vector<double> xs{1.0};
    std::string out;
};

int run_coupling(const CouplingArgs& a) {
    OutputSink sink(a.out);
    std::ostream& out = sink.stream();
    const ScalarField f = tools::builtin_scalar(a.func);
    const TwoPointField phi = tools::builtin_two_point(a.phi);
    emit_row(out, {"x", "kir", "laplacian"});
    for (double xv : a.xs) {
        const Point x = Point::scalar(xv);
        double kir, lap;
        if (a.kind == "det") {
            DeterministicCoupling c{tools::builtin_map(a.F),
                                    a.g == "one" ? ScalarField()
                                                 : tools::builtin_scalar(a.g),
                                    a.h, 1e-4};
            kir = deterministic_kir(c, phi, x);
            lap = deterministic_laplacian(c, f, x);
        } else if (a.kind == "pos-order") {
            DeterministicCoupling c{tools::builtin_map(a.F),
                                    a.g == "one" ? ScalarField()
                                                 : tools::builtin_scalar(a.g),
                                    a.h, 1e-4};
            kir = positive_order_kir_x(c, a.axis, phi, x);
            lap = positive_order_laplacian_x(c, a.axis, f, x);
        } else if (a.kind == "indep") {
            const IndependentCoupling c(
                tools::builtin_scalar(a.g),
                QuadratureMeasure::box_density(
                    ScalarField([](const Point&) { return 1.0; }), Point{-1.0},
                    Point{1.0}));
            kir = independent_kir(c, phi, x);
            lap = independent_laplacian(c, f, x);
        } else {
            throw ValidationError("coupling: unknown kind '" + a.kind + "'");
        }
        emit_row(out, {format_number(xv), format_number(kir), format_number(lap)});
    }
    return kExitOk;
}

struct ConvergeArgs {
    std::string family = "fd";
    std::string phi;
    std::string F = "pow1ph";
    std::string zeta = "compactbump";
    double alpha = 0.5;
    double x = 0.0;
    double h0 = 0.0; // 0 = per-family default
    int levels = 0;  // 0 = per-family default
    std::string out;
    std::string summary;
};

int run_converge(const ConvergeArgs& a) {
    ConvergenceFamily fam;
    std::string default_phi = "sqdiff";
    double default_h0 = 0.4;
    int default_levels = 8;
    if (a.family == "fd") {
        fam = family_fd();
    } else if (a.family == "frac") {
        fam = family_frac(a.alpha);
        default_phi = "pairbump";
        default_h0 = 0.25;
    } else if (a.family == "poisson") {
        fam = family_poisson_cutoff();
        default_phi = "one";
        default_h0 = 0.5;
    } else if (a.family == "coupling") {
        fam = family_coupling(tools::builtin_family_map(a.F));
        default_phi = "xdiag";
        default_h0 = 0.25;
        default_levels = 12;
    } else if (a.family == "gaussian") {
        fam = family_gaussian_area();
        default_phi = "bump2";
    } else if (a.family == "dichotomy") {
        fam = family_tail_dichotomy(tools::builtin_zeta(a.zeta),
                                    tools::zeta_has_compact_support(a.zeta));
        default_phi = "bump2";
        default_h0 = 0.25;
    } else {
        throw ValidationError("converge: unknown family '" + a.family + "'");
    }
    const TwoPointField phi =
        tools::builtin_two_point(a.phi.empty() ? default_phi : a.phi);
    const double h0 = a.h0 > 0.0 ? a.h0 : default_h0;
    const int levels = a.levels > 0 ? a.levels : default_levels;

    const LimitReport rep = estimate_limit(fam, phi, Point::scalar(a.x), h0, levels);

    OutputSink sink(a.out);
    std::ostream& out = sink.stream();
    emit_row(out, {"h", "Q", "diff", "fitted_order"});
    for (std::size_t m = 0; m < rep.values.size(); ++m) {
        emit_row(out,
                 {format_number(rep.hs[m]), format_number(rep.values[m]),
                  m > 0 ? format_number(rep.diffs[m - 1]) : "",
                  m > 1 && std::isfinite(rep.level_orders[m - 2])
                      ? format_number(rep.level_orders[m - 2])
                      : ""});
    }

    json summary;
    summary["family"] = fam.name;
    summary["x"] = a.x;
    summary["verdict"] = to_string(rep.verdict);
    summary["observed_order"] =
        std::isfinite(rep.observed_order) ? json(rep.observed_order) : json("inf");
    char limbuf[64];
    if (rep.verdict == Verdict::converged) {
        std::snprintf(limbuf, sizeof limbuf, "%.6f", rep.extrapolated);
        summary["limit"] = limbuf;
    }
    if (fam.claimed_limit) {
        const double claimed = fam.claimed_limit(phi, Point::scalar(a.x));
        if (std::isfinite(claimed)) {
            std::snprintf(limbuf, sizeof limbuf, "%.6f", claimed);
            summary["claimed_limit"] = limbuf;
        }
    }
    if (!a.summary.empty()) {
        std::ofstream sout(a.summary);
        sout << summary.dump(2) << "\n";
    } else {
        out << summary.dump() << "\n";
    }
    return kExitOk;
}

int run_cli(int argc, char** argv);

} // namespace

namespace {

int run_cli(int argc, char** argv) {
    CLI::App app{"kirlab: Kirchhoff divergence and Laplace operators at desk scale"};
    app.require_subcommand(1);
    // Long-only help so that --h stays available as the lattice spacing.
    app.set_help_flag("--help", "print help");
    app.option_defaults()->ignore_case(false);

    GraphArgs graph_args;
    auto* graph_cmd = app.add_subcommand("graph", "discrete node-system operators");
    graph_cmd->set_help_flag("--help", "print help");
    graph_cmd->add_option("--graph", graph_args.graph_file, "graph JSON file")->required();
    graph_cmd->add_option("--op", graph_args.op, "kir|laplacian|harmonic");
    graph_cmd->add_option("--func", graph_args.func, "scalar builtin for laplacian/harmonic");
    graph_cmd->add_option("--phi", graph_args.phi, "two-point builtin for kir");
    graph_cmd->add_option("--tol", graph_args.tol, "harmonicity tolerance");
    graph_cmd->add_option("--out", graph_args.out, "CSV output path (default stdout)");

    LatticeArgs lattice_args;
    auto* lattice_cmd = app.add_subcommand("lattice", "finite-difference and fractional lattice operators");
    lattice_cmd->set_help_flag("--help", "print help");
    lattice_cmd->add_option("--dim", lattice_args.dim)->check(CLI::Range(1, 3));
    lattice_cmd->add_option("--h", lattice_args.h, "lattice spacing");
    lattice_cmd->add_option("--window", lattice_args.window, "index window radius");
    lattice_cmd->add_option("--alpha", lattice_args.alpha, "fractional order (0 = plain stencil)");
    lattice_cmd->add_option("--radius", lattice_args.radius, "fractional truncation radius");
    lattice_cmd->add_option("--func", lattice_args.func, "scalar builtin");
    lattice_cmd->add_option("--out", lattice_args.out);

    DyadicArgs dyadic_args;
    auto* dyadic_cmd = app.add_subcommand("dyadic", "dyadic metric, Haar and spectral operators");
    dyadic_cmd->set_help_flag("--help", "print help");
    dyadic_cmd->add_option("--op", dyadic_args.op, "rho|laplacian|frac|spectral");
    dyadic_cmd->add_option("--s", dyadic_args.s, "spectral order in (0, 1/2)");
    dyadic_cmd->add_option("--alpha", dyadic_args.alpha);
    dyadic_cmd->add_option("--j", dyadic_args.j, "scale");
    dyadic_cmd->add_option("--k", dyadic_args.k, "position");
    dyadic_cmd->add_option("--window", dyadic_args.window);
    dyadic_cmd->add_option("--x", dyadic_args.x);
    dyadic_cmd->add_option("--y", dyadic_args.y);
    dyadic_cmd->add_option("--coef", dyadic_args.coef, "Haar expansion JSON");
    dyadic_cmd->add_option("--func", dyadic_args.func);
    dyadic_cmd->add_option("--out", dyadic_args.out);

    MetricArgs metric_args;
    auto* metric_cmd = app.add_subcommand("metric", "metric-measure net operators");
    metric_cmd->set_help_flag("--help", "print help");
    metric_cmd->add_option("--net", metric_args.net_file, "net JSON file")->required();
    metric_cmd->add_option("--op", metric_args.op, "kir|laplacian|frac");
    metric_cmd->add_option("--func", metric_args.func);
    metric_cmd->add_option("--phi", metric_args.phi);
    metric_cmd->add_option("--alpha", metric_args.alpha);
    metric_cmd->add_option("--H", metric_args.H, "uniform H entry");
    metric_cmd->add_option("--out", metric_args.out);

    FracArgs frac_args;
    auto* frac_cmd = app.add_subcommand("frac", "continuum fractional Kirchhoff divergence");
    frac_cmd->set_help_flag("--help", "print help");
    frac_cmd->add_option("--s", frac_args.s)->check(CLI::Range(0.0, 1.0));
    frac_cmd->add_option("--dim", frac_args.dim)->check(CLI::Range(1, 3));
    frac_cmd->add_option("--x", frac_args.xs, "evaluation points");
    frac_cmd->add_option("--mode", frac_args.mode, "regular|pv");
    frac_cmd->add_option("--phi", frac_args.phi);
    frac_cmd->add_option("--out", frac_args.out);

    HilbertArgs hilbert_args;
    auto* hilbert_cmd = app.add_subcommand("hilbert", "Hilbert-kernel Kirchhoff operators");
    hilbert_cmd->set_help_flag("--help", "print help");
    hilbert_cmd->add_option("--phi", hilbert_args.phi);
    hilbert_cmd->add_option("--x", hilbert_args.x);
    hilbert_cmd->add_option("--eps-start", hilbert_args.eps_start);
    hilbert_cmd->add_option("--levels", hilbert_args.levels);
    hilbert_cmd->add_option("--out", hilbert_args.out);

    CouplingArgs coupling_args;
    auto* coupling_cmd = app.add_subcommand("coupling", "coupling-measure operators");
    coupling_cmd->set_help_flag("--help", "print help");
    coupling_cmd->add_option("--kind", coupling_args.kind, "indep|det|pos-order");
    coupling_cmd->add_option("--F", coupling_args.F, "map builtin");
    coupling_cmd->add_option("--g", coupling_args.g, "density builtin");
    coupling_cmd->add_option("--func", coupling_args.func);
    coupling_cmd->add_option("--phi", coupling_args.phi);
    coupling_cmd->add_option("--axis", coupling_args.axis);
    coupling_cmd->add_option("--h", coupling_args.h, "scale of the coupling");
    coupling_cmd->add_option("--x", coupling_args.xs, "evaluation points");
    coupling_cmd->add_option("--out", coupling_args.out);

    ConvergeArgs converge_args;
    auto* converge_cmd = app.add_subcommand("converge", "dS/dT limit estimation");
    converge_cmd->set_help_flag("--help", "print help");
    converge_cmd->add_option("--family", converge_args.family,
                             "fd|frac|poisson|coupling|gaussian|dichotomy");
    converge_cmd->add_option("--phi", converge_args.phi);
    converge_cmd->add_option("--F", converge_args.F);
    converge_cmd->add_option("--zeta", converge_args.zeta, "compactbump|cauchy");
    converge_cmd->add_option("--alpha", converge_args.alpha);
    converge_cmd->add_option("--x", converge_args.x);
    converge_cmd->add_option("--h0", converge_args.h0);
    converge_cmd->add_option("--levels", converge_args.levels);
    converge_cmd->add_option("--out", converge_args.out);
    converge_cmd->add_option("--summary", converge_args.summary, "summary JSON path");

    reproduce::Options repro_options;
    double cs_override = 0.0;
    auto* repro_cmd = app.add_subcommand("reproduce-all", "run every acceptance criterion");
    repro_cmd->set_help_flag("--help", "print help");
    repro_cmd->add_option("--config-dir", repro_options.config_dir,
                          "extra JSON checks (empty: builtins only)");
    auto* mutate = repro_cmd->add_option(
        "--expect-haar-cs", cs_override,
        "self-check hook: expected Haar eigenvalue constant at s=1/4");

    std::string config_path;
    auto* run_cmd = app.add_subcommand("run", "run an experiment config");
    run_cmd->set_help_flag("--help", "print help");
    run_cmd->add_option("--config", config_path, "experiment JSON")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (graph_cmd->parsed()) return run_graph(graph_args);
        if (lattice_cmd->parsed()) return run_lattice(lattice_args);
        if (dyadic_cmd->parsed()) return run_dyadic(dyadic_args);
        if (metric_cmd->parsed()) return run_metric(metric_args);
        if (frac_cmd->parsed()) return run_frac(frac_args);
        if (hilbert_cmd->parsed()) return run_hilbert(hilbert_args);
        if (coupling_cmd->parsed()) return run_coupling(coupling_args);
        if (converge_cmd->parsed()) return run_converge(converge_args);
        if (repro_cmd->parsed()) {
            if (*mutate) repro_options.haar_cs_override = cs_override;
            const auto results = reproduce::run_all(repro_options);
            return reproduce::report(results, std::cout);
        }
        if (run_cmd->parsed()) {
            // ExperimentConfig: {"command": ..., "parameters": {...},
            // "output": ..., "seed": ...}; unknown fields rejected, parameters
            // revalidated through the normal option parser.
            const json doc = json::parse(slurp(config_path), nullptr, false);
            if (doc.is_discarded()) throw ValidationError("malformed config JSON");
            if (!doc.is_object()) throw ValidationError("config must be an object");
            for (const auto& [key, value] : doc.items()) {
                (void)value;
                if (key != "command" && key != "parameters" && key != "output" &&
                    key != "seed")
                    throw ValidationError("config: unknown field '" + key + "'");
            }
            if (!doc.contains("command"))
                throw ValidationError("config: missing 'command'");
            const std::string command = doc["command"].get<std::string>();
            if (command == "run")
                throw ValidationError("config: nested 'run' is not allowed");
            std::vector<std::string> args;
            args.push_back(command);
            if (doc.contains("parameters")) {
                if (!doc["parameters"].is_object())
                    throw ValidationError("config: 'parameters' must be an object");
                for (const auto& [key, value] : doc["parameters"].items()) {
                    args.push_back("--" + key);
                    if (value.is_string())
                        args.push_back(value.get<std::string>());
                    else
                        args.push_back(value.dump());
                }
            }
            if (doc.contains("output")) {
                args.push_back("--out");
                args.push_back(doc["output"].get<std::string>());
            }
            std::vector<char*> argv2;
            std::string prog = "kirlab";
            argv2.push_back(prog.data());
            for (auto& s : args) argv2.push_back(s.data());
            return run_cli(static_cast<int>(argv2.size()), argv2.data());
        }
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const Error& e) {
        std::cerr << "numerical contract failure: " << e.what() << "\n";
        return kExitContract;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitContract;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) { return run_cli(argc, argv); }
