#include "kirlab/lattice.hpp"

#include <cmath>

#include "kirlab/parallel.hpp"

namespace kirlab {

namespace {

double euclid(const LatticeIndex& a, const LatticeIndex& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
        s += d * d;
    }
    return std::sqrt(s);
}

/// Visits all offsets ō with 0 < |ō|_∞ ≤ R in ascending lexicographic order
/// (the fixed summation order; compensated sums absorb the magnitude mix).
template <typename Fn>
void for_each_offset(int dim, int R, Fn&& fn) {
    LatticeIndex o(dim, -R);
    const LatticeIndex zero(dim, 0);
    while (true) {
        if (o != zero) fn(o);
        int d = dim - 1;
        while (d >= 0 && o[d] == R) {
            o[d] = -R;
            --d;
        }
        if (d < 0) break;
        ++o[d];
    }
}

} // namespace

LatticeSpec::LatticeSpec(int n, double h, int N) : dim(n), spacing(h), window(N) {
    if (n < 1) throw ValidationError("LatticeSpec: dim must be >= 1");
    if (!(h > 0.0)) throw ValidationError("LatticeSpec: spacing must be positive");
    if (N < 1) throw ValidationError("LatticeSpec: window must be >= 1");
}

Point LatticeSpec::point(const LatticeIndex& k) const {
    if (static_cast<int>(k.size()) != dim)
        throw ValidationError("LatticeSpec: index dimension mismatch");
    std::vector<double> c(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) c[i] = spacing * k[i];
    return Point(std::move(c));
}

bool LatticeSpec::inside(const LatticeIndex& k) const {
    for (int v : k)
        if (std::abs(v) > window) return false;
    return true;
}

std::vector<LatticeIndex> LatticeSpec::indices() const {
    std::vector<LatticeIndex> out;
    LatticeIndex k(dim, -window);
    while (true) {
        out.push_back(k);
        int d = dim - 1;
        while (d >= 0 && k[d] == window) {
            k[d] = -window;
            --d;
        }
        if (d < 0) break;
        ++k[d];
    }
    return out;
}

double frac_tail_upper(int n, double alpha, int R) {
    if (!(alpha > 0.0)) throw ValidationError("frac_tail_upper: alpha must be positive");
    if (R < 1) throw ValidationError("frac_tail_upper: R must be >= 1");
    // Shell |j|_∞ = m has (2m+1)^n − (2m−1)^n ≤ 2n·3^{n−1} m^{n−1} points,
    // each with |j| ≥ m; then Σ_{m>R} m^{−1−α} ≤ R^{−α}/α.
    const double c = 2.0 * n * std::pow(3.0, n - 1);
    return c * std::pow(static_cast<double>(R), -alpha) / alpha;
}

Bracket frac_lattice_constant(int n, double alpha, int R) {
    if (n < 1) throw ValidationError("frac_lattice_constant: n must be >= 1");
    if (!(alpha > 0.0)) throw ValidationError("frac_lattice_constant: alpha must be positive");
    if (R < 1) throw ValidationError("frac_lattice_constant: R must be >= 1");

    KahanSum partial;
    const LatticeIndex origin(n, 0);
    for_each_offset(n, R, [&](const LatticeIndex& o) {
        partial.add(std::pow(euclid(o, origin), -(n + alpha)));
    });

    // Each shell-m point has m ≤ |j| ≤ √n·m; counts bracketed by
    // 2n·m^{n−1} ≤ (2m+1)^n − (2m−1)^n ≤ 2n·3^{n−1}·m^{n−1}.
    const double lo_c = 2.0 * n * std::pow(static_cast<double>(n), -0.5 * (n + alpha));
    const double tail_lo = lo_c * std::pow(static_cast<double>(R + 1), -alpha) / alpha;
    const double tail_hi = frac_tail_upper(n, alpha, R);

    Bracket b;
    b.lower = partial.value() + tail_lo;
    b.upper = partial.value() + tail_hi;
    return b;
}

FracSpec FracSpec::make(int dim, double alpha, int radius) {
    if (!(alpha > 0.0 && alpha < 2.0))
        throw ValidationError("FracSpec: alpha must lie in (0,2); use make_relaxed for "
                              "series-only use");
    return make_relaxed(dim, alpha, radius);
}

FracSpec FracSpec::make_relaxed(int dim, double alpha, int radius) {
    if (!(alpha > 0.0)) throw ValidationError("FracSpec: alpha must be positive");
    if (radius < 1) throw ValidationError("FracSpec: radius must be >= 1");
    FracSpec s{alpha, radius, 0.0};
    s.tail_bound = frac_tail_upper(dim, alpha, radius);
    return s;
}

double fd_kirchhoff(const LatticeSpec& spec, const TwoPointField& phi, const LatticeIndex& k) {
    if (!spec.inside(k)) throw ValidationError("fd_kirchhoff: index outside window");
    const Point x = spec.point(k);
    KahanSum s;
    for (int m = 0; m < spec.dim; ++m) {
        LatticeIndex kp = k, km = k;
        ++kp[m];
        --km[m];
        if (!spec.inside(kp) || !spec.inside(km))
            throw ValidationError("fd_kirchhoff: neighbor outside window at axis " +
                                  std::to_string(m));
        s.add(phi(x, spec.point(kp)));
        s.add(phi(x, spec.point(km)));
    }
    return s.value() / (spec.spacing * spec.spacing);
}

double fd_laplacian(const LatticeSpec& spec, const ScalarField& f, const LatticeIndex& k) {
    if (!spec.inside(k)) throw ValidationError("fd_laplacian: index outside window");
    const double f0 = f(spec.point(k));
    KahanSum s;
    for (int m = 0; m < spec.dim; ++m) {
        LatticeIndex kp = k, km = k;
        ++kp[m];
        --km[m];
        if (!spec.inside(kp) || !spec.inside(km))
            throw ValidationError("fd_laplacian: neighbor outside window at axis " +
                                  std::to_string(m));
        s.add(f(spec.point(kp)) - 2.0 * f0 + f(spec.point(km)));
    }
    return s.value() / (spec.spacing * spec.spacing);
}

namespace {

/// Shared truncated sum Σ_{0<|j̄−k̄|_∞≤R} g(j̄)/|k̄−j̄|^{n+α}.
double truncated_frac_sum(const LatticeSpec& spec, const FracSpec& fspec,
                          const std::function<double(const LatticeIndex&)>& g,
                          const LatticeIndex& k) {
    KahanSum s;
    const LatticeIndex origin(spec.dim, 0);
    for_each_offset(spec.dim, fspec.radius, [&](const LatticeIndex& o) {
        LatticeIndex j = k;
        for (int d = 0; d < spec.dim; ++d) j[d] += o[d];
        s.add(g(j) * std::pow(euclid(o, origin), -(spec.dim + fspec.alpha)));
    });
    return s.value();
}

double require_sup_bound(const LatticeSpec& spec, const FracSpec& fspec,
                         const ScalarField& f, const LatticeIndex& k) {
    if (f.sup_bound) return *f.sup_bound;
    if (f.support_radius) {
        // Support covered by the truncation window: the unsummed far terms
        // only carry the −f(hk̄) part; sampling the window gives the sup.
        const double reach = fspec.radius * spec.spacing;
        if (reach >= *f.support_radius + norm(spec.point(k))) {
            double sup = 0.0;
            for_each_offset(spec.dim, fspec.radius, [&](const LatticeIndex& o) {
                LatticeIndex j = k;
                for (int d = 0; d < spec.dim; ++d) j[d] += o[d];
                sup = std::max(sup, std::abs(f(spec.point(j))));
            });
            return std::max(sup, std::abs(f(spec.point(k))));
        }
    }
    throw ValidationError("frac_laplacian: f needs a sup bound or a support radius covered "
                          "by the truncation window");
}

} // namespace

ValueWithBound frac_laplacian(const LatticeSpec& spec, const FracSpec& fspec,
                              const ScalarField& f, const LatticeIndex& k) {
    const double sup = require_sup_bound(spec, fspec, f, k);
    const double f0 = f(spec.point(k));
    const double sum = truncated_frac_sum(
        spec, fspec, [&](const LatticeIndex& j) { return f(spec.point(j)) - f0; }, k);
    const double h_alpha = std::pow(spec.spacing, fspec.alpha);

    double amplitude = 2.0 * sup;
    if (f.support_radius &&
        fspec.radius * spec.spacing >= *f.support_radius + norm(spec.point(k)))
        amplitude = std::abs(f0); // far terms reduce to −f(hk̄)
    return {sum / h_alpha, amplitude * fspec.tail_bound / h_alpha};
}

FracHarmonicReport frac_is_harmonic(const LatticeSpec& spec, const FracSpec& fspec,
                                    const ScalarField& f, const LatticeIndex& k, double tol) {
    const double sup = require_sup_bound(spec, fspec, f, k);
    const Bracket c = frac_lattice_constant(spec.dim, fspec.alpha, fspec.radius);
    const double partial = truncated_frac_sum(
        spec, fspec, [&](const LatticeIndex& j) { return f(spec.point(j)); }, k);

    FracHarmonicReport report;
    const double mean = partial / c.midpoint();
    report.deviation = std::abs(f(spec.point(k)) - mean);
    report.bound = sup * fspec.tail_bound / c.midpoint() +
                   std::abs(partial) * c.half_width() / (c.midpoint() * c.midpoint());
    report.harmonic = report.deviation <= tol + report.bound;
    return report;
}

} // namespace kirlab
