#include "kirlab/dyadic.hpp"

#include <bit>
#include <cmath>

#include "kirlab/parallel.hpp"
#include "kirlab/quadrature.hpp"

namespace kirlab {

namespace {

void check_nonneg(double x, const char* who) {
    if (!(x >= 0.0)) throw ValidationError(std::string(who) + ": arguments must be >= 0");
}

/// Index of the level-q dyadic interval containing x (q may be negative).
std::int64_t level_index(double x, int q) {
    return static_cast<std::int64_t>(std::floor(std::ldexp(x, q)));
}

} // namespace

double rho(double x, double y) {
    check_nonneg(x, "rho");
    check_nonneg(y, "rho");
    if (x == y) return 0.0;
    // Start coarse enough that both live in [0, 2^{-j}).
    int j = 0;
    const double m = std::max(x, y);
    if (m >= 1.0) j = -(std::ilogb(m) + 1);
    while (level_index(x, j + 1) == level_index(y, j + 1)) ++j;
    return std::ldexp(1.0, -j);
}

double rho_index(std::int64_t k, std::int64_t i, int j) {
    if (k < 0 || i < 0) throw ValidationError("rho_index: indices must be >= 0");
    if (k == i) return 0.0;
    const auto diff = static_cast<std::uint64_t>(k ^ i);
    const int g = std::bit_width(diff); // generation: separated below scale j-g
    return std::ldexp(1.0, g - j);
}

double DyadicInterval::length() const { return std::ldexp(1.0, -scale); }
double DyadicInterval::left() const { return std::ldexp(static_cast<double>(position), -scale); }
double DyadicInterval::right() const {
    return std::ldexp(static_cast<double>(position + 1), -scale);
}
bool DyadicInterval::contains(double x) const { return x >= left() && x < right(); }

double dyadic_laplacian(int j, const ScalarField& f, std::int64_t k) {
    if (k < 0) throw ValidationError("dyadic_laplacian: k must be >= 0");
    const std::int64_t base = (k >> 2) << 2; // quad block {4l,...,4l+3}
    KahanSum s;
    for (std::int64_t i = base; i < base + 4; ++i) {
        if (i == k) continue;
        s.add(f(std::ldexp(static_cast<double>(i), -j)));
    }
    return s.value() - 3.0 * f(std::ldexp(static_cast<double>(k), -j));
}

ValueWithBound dyadic_frac_laplacian(int j, double alpha, const ScalarField& f,
                                     std::int64_t k, std::int64_t window) {
    if (!(alpha > 0.0)) throw ValidationError("dyadic_frac_laplacian: alpha must be > 0");
    if (k < 0 || window < 1 || k > window)
        throw ValidationError("dyadic_frac_laplacian: need 0 <= k <= window");

    const double xk = std::ldexp(static_cast<double>(k), -j);
    const double fk = f(xk);
    const double w_scale = std::ldexp(1.0, -j); // T_j weight 2^{-j}

    KahanSum s;
    for (std::int64_t i = 0; i <= window; ++i) {
        if (i == k) continue;
        const double r = rho_index(k, i, j);
        s.add((f(std::ldexp(static_cast<double>(i), -j)) - fk) * w_scale /
              std::pow(r, 1.0 + alpha));
    }

    // First generation whose annulus sticks out of [0, window].
    int g_min = 1;
    while ((((k >> g_min) + 1) << g_min) - 1 <= window) ++g_min;

    double amplitude;
    if (f.sup_bound) {
        amplitude = 2.0 * *f.sup_bound;
    } else if (f.support_radius &&
               std::ldexp(static_cast<double>(window), -j) >= *f.support_radius) {
        amplitude = std::abs(fk); // beyond the support only the −f(x^j_k) part remains
    } else {
        throw ValidationError("dyadic_frac_laplacian: f needs a sup bound or a support "
                              "radius inside the window");
    }
    const double tail =
        amplitude * std::pow(2.0, -alpha * (g_min - j)) / (1.0 - std::pow(2.0, -alpha));
    return {s.value(), tail};
}

double HaarFunction::operator()(double x) const { return haar_eval(*this, x); }

double HaarFunction::support_length() const { return std::ldexp(1.0, -scale); }

ScalarField HaarFunction::as_scalar_field() const {
    HaarFunction h = *this;
    ScalarField f([h](const Point& x) { return h(x.x()); });
    f.sup_bound = std::pow(2.0, 0.5 * scale);
    f.support_radius = support().right();
    return f;
}

double haar_eval(const HaarFunction& h, double x) {
    if (!(x >= 0.0)) return 0.0;
    const double t = std::ldexp(x, h.scale) - static_cast<double>(h.position);
    if (t < 0.0 || t >= 1.0) return 0.0;
    const double amp = std::pow(2.0, 0.5 * h.scale);
    return t < 0.5 ? amp : -amp;
}

void HaarExpansion::add(int j, std::int64_t k, double coef) {
    if (k < 0) throw ValidationError("HaarExpansion: position must be >= 0");
    terms_[{j, k}] += coef;
}

double HaarExpansion::eval(double x) const {
    KahanSum s;
    for (const auto& [jk, c] : terms_) s.add(c * haar_eval({jk.first, jk.second}, x));
    return s.value();
}

void TwoVarHaarExpansion::add(int jx, std::int64_t kx, int jy, std::int64_t ky, double coef) {
    if (kx < 0 || ky < 0) throw ValidationError("TwoVarHaarExpansion: positions must be >= 0");
    terms_[{{jx, kx}, {jy, ky}}] += coef;
}

double TwoVarHaarExpansion::eval(double x, double y) const {
    KahanSum s;
    for (const auto& [key, c] : terms_)
        s.add(c * haar_eval({key.first.first, key.first.second}, x) *
              haar_eval({key.second.first, key.second.second}, y));
    return s.value();
}

HaarExpansion TwoVarHaarExpansion::section_at(double x) const {
    HaarExpansion section;
    for (const auto& [key, c] : terms_) {
        const double hx = haar_eval({key.first.first, key.first.second}, x);
        if (hx != 0.0) section.add(key.second.first, key.second.second, c * hx);
    }
    return section;
}

double haar_cs(double s) {
    const double p = std::pow(2.0, 2.0 * s);
    return p / (p - 1.0);
}

double haar_integral_over_dyadic(const HaarFunction& h, const DyadicInterval& I) {
    const int J = h.scale;
    const std::int64_t K = h.position;
    const int q = I.scale;
    const std::int64_t i = I.position;
    // I at least as coarse as supp h: either contains it (mean zero) or is
    // disjoint from it; both integrate to 0.
    if (q <= J) return 0.0;
    if ((i >> (q - J)) != K) return 0.0; // disjoint
    const bool right_half = ((i >> (q - J - 1)) & 1) != 0;
    const double amp = std::pow(2.0, 0.5 * J);
    const double len = std::ldexp(1.0, -q);
    return right_half ? -amp * len : amp * len;
}

namespace {

constexpr double kHalfRange = 0.5; // s must lie in (0, 1/2) for absolute convergence

void check_s(double s) {
    if (!(s > 0.0 && s < kHalfRange))
        throw ValidationError("delta_s: s must lie in (0, 1/2)");
}

/// The sibling annulus A_m(x) = I_m(x) ∖ I_{m+1}(x): a dyadic interval of
/// scale m+1 adjacent to the one containing x.
DyadicInterval annulus_at(double x, int m) {
    const std::int64_t i = level_index(x, m + 1);
    return {m + 1, i ^ 1};
}

/// Coarse geometric remainder Σ_{m < m_lo} 2^{m(1+2s)}·2^{−m−1}
///                           = 2^{2s(m_lo−1)} / (2(1 − 2^{−2s})).
double coarse_geometric(double s, int m_lo) {
    return std::pow(2.0, 2.0 * s * (m_lo - 1)) / (2.0 * (1.0 - std::pow(2.0, -2.0 * s)));
}

/// Coarse cutoff: for m < m_lo the annulus A_m(x) lies beyond both x and the
/// reach value, so supported integrands vanish there.
int coarse_cutoff(double x, double reach) {
    const double v = std::max({x, reach, 1.0});
    const int bits = std::ilogb(v) + 1; // 2^bits > v
    return -(bits + 1);
}

double ancestor_norm(double s) { return 1.0 / (1.0 - std::pow(2.0, -(1.0 + 2.0 * s))); }

} // namespace

double delta_s_apply(double s, const HaarFunction& h, double x) {
    check_s(s);
    check_nonneg(x, "delta_s_apply");
    const double fx = haar_eval(h, x);
    const DyadicInterval supp = h.support();
    const int m_lo = coarse_cutoff(x, supp.right());
    const int m_hi = h.scale; // terms vanish once I_m(x) sits inside a constancy piece

    KahanSum sum;
    for (int m = m_lo; m <= m_hi; ++m) {
        const DyadicInterval A = annulus_at(x, m);
        const double integral = haar_integral_over_dyadic(h, A);
        const double measure = std::ldexp(1.0, -m - 1);
        sum.add(std::pow(2.0, m * (1.0 + 2.0 * s)) * (fx * measure - integral));
    }
    sum.add(fx * coarse_geometric(s, m_lo));
    return ancestor_norm(s) * sum.value();
}

double delta_s_apply(double s, const HaarExpansion& f, double x) {
    check_s(s);
    KahanSum total;
    for (const auto& [jk, c] : f.terms())
        total.add(c * delta_s_apply(s, HaarFunction{jk.first, jk.second}, x));
    return total.value();
}

ValueWithBound delta_s_apply(double s, const ScalarField& f, double x,
                             const DyadicQuadSpec& spec) {
    check_s(s);
    check_nonneg(x, "delta_s_apply");
    if (!f.support_radius)
        throw ValidationError("delta_s_apply: general fields need a support radius");

    const double fx = f(Point::scalar(x));
    const int m_lo = coarse_cutoff(x, *f.support_radius);
    const int m_hi = spec.fine_scale;

    KahanSum sum;
    for (int m = m_lo; m <= m_hi; ++m) {
        const DyadicInterval A = annulus_at(x, m);
        // Integrate the difference directly: on annuli where f is constant
        // the integrand vanishes pointwise, so the 2^{m(1+2s)} weight has no
        // rounding residue to amplify.
        const double integral = integrate_composite(
            [&](double y) { return fx - f(Point::scalar(y)); }, A.left(), A.right(),
            spec.panels, spec.gauss_order);
        sum.add(std::pow(2.0, m * (1.0 + 2.0 * s)) * integral);
    }
    sum.add(fx * coarse_geometric(s, m_lo));

    // |f(x)−f(y)| ≤ L·ρ = L·2^{−m} on A_m gives the fine-scale tail.
    const double q = std::pow(2.0, 2.0 * s - 1.0);
    const double tail = ancestor_norm(s) * 0.5 * spec.lipschitz *
                        std::pow(2.0, (m_hi + 1) * (2.0 * s - 1.0)) / (1.0 - q);
    return {ancestor_norm(s) * sum.value(), tail};
}

double spectral_kirchhoff(double s, const TwoVarHaarExpansion& phi, double x) {
    check_s(s);
    if (phi.empty()) return 0.0;
    const double cs = haar_cs(s);
    KahanSum sum;
    for (const auto& [key, c] : phi.terms()) {
        const HaarFunction hx{key.first.first, key.first.second};
        const HaarFunction hy{key.second.first, key.second.second};
        const double lambda = std::pow(hy.support_length(), -2.0 * s);
        sum.add(c * lambda * haar_eval(hx, x) * haar_eval(hy, x));
    }
    return cs * sum.value();
}

} // namespace kirlab
