#include "kirlab/metric.hpp"

#include <cmath>

#include "kirlab/dyadic.hpp"
#include "kirlab/parallel.hpp"
#include "kirlab/quadrature.hpp"

namespace kirlab {

void MetricMeasureNet::validate() const {
    if (points.empty()) throw ValidationError("MetricMeasureNet: empty net");
    if (points.size() != masses.size())
        throw ValidationError("MetricMeasureNet: points/masses size mismatch");
    for (double m : masses)
        if (!(m > 0.0)) throw ValidationError("MetricMeasureNet: masses must be positive");
    if (!(delta > 0.0 && delta < 1.0))
        throw ValidationError("MetricMeasureNet: delta must lie in (0,1)");
    if (!metric) throw ValidationError("MetricMeasureNet: metric not set");
}

double MetricMeasureNet::coupling_range() const {
    return range_constant * std::pow(delta, level);
}

namespace {

double h_entry(const Matrix& H, std::size_t k, std::size_t i) {
    if (k >= H.size() || i >= H[k].size() || i >= H.size() || k >= H[i].size())
        throw ValidationError("net operator: H too small for the coupled pair (" +
                              std::to_string(k) + "," + std::to_string(i) + ")");
    const double v = H[k][i];
    if (v != H[i][k])
        throw ContractError("net operator: H must be symmetric at (" + std::to_string(k) +
                            "," + std::to_string(i) + ")");
    if (!(v > 0.0))
        throw ContractError("net operator: H must be positive where coupled");
    return v;
}

} // namespace

double net_kirchhoff(const MetricMeasureNet& net, const Matrix& H, const TwoPointField& phi,
                     std::size_t k) {
    net.validate();
    if (k >= net.size()) throw ValidationError("net_kirchhoff: index out of range");
    const double range = net.coupling_range();
    KahanSum s;
    for (std::size_t i = 0; i < net.size(); ++i) {
        if (i == k) continue;
        if (net.metric(net.points[k], net.points[i]) >= range) continue;
        s.add(phi(net.points[k], net.points[i]) * (net.masses[k] + net.masses[i]) *
              h_entry(H, k, i));
    }
    return s.value() / net.masses[k];
}

double net_laplacian(const MetricMeasureNet& net, const Matrix& H, const ScalarField& f,
                     std::size_t k) {
    net.validate();
    if (k >= net.size()) throw ValidationError("net_laplacian: index out of range");
    const double range = net.coupling_range();
    const double fk = f(net.points[k]);
    KahanSum s;
    for (std::size_t i = 0; i < net.size(); ++i) {
        if (i == k) continue;
        if (net.metric(net.points[k], net.points[i]) >= range) continue;
        s.add((f(net.points[i]) - fk) * (1.0 + net.masses[i] / net.masses[k]) *
              h_entry(H, k, i));
    }
    return s.value();
}

double net_frac_laplacian(const MetricMeasureNet& net, double alpha, const ScalarField& f,
                          std::size_t k) {
    net.validate();
    if (!(alpha > 0.0)) throw ValidationError("net_frac_laplacian: alpha must be positive");
    if (!net.ball_mass) throw ValidationError("net_frac_laplacian: ball_mass not set");
    if (k >= net.size()) throw ValidationError("net_frac_laplacian: index out of range");
    const double fk = f(net.points[k]);
    KahanSum s;
    for (std::size_t i = 0; i < net.size(); ++i) {
        if (i == k) continue;
        const double d = net.metric(net.points[k], net.points[i]);
        const double balls =
            net.ball_mass(net.points[k], d) + net.ball_mass(net.points[i], d);
        if (!(balls > 0.0))
            throw EvaluationError("net_frac_laplacian: zero ball mass at pair (" +
                                  std::to_string(k) + "," + std::to_string(i) + ")");
        s.add(net.masses[i] * (f(net.points[i]) - fk) / (std::pow(d, alpha) * balls));
    }
    return s.value();
}

TPairing net_t_pairing(const MetricMeasureNet& net) {
    net.validate();
    return atomic_t_pairing(net.points, net.masses);
}

SPairing net_s_pairing(const MetricMeasureNet& net, const Matrix& H) {
    net.validate();
    const double range = net.coupling_range();
    std::vector<std::tuple<std::size_t, std::size_t, double>> entries;
    for (std::size_t k = 0; k < net.size(); ++k)
        for (std::size_t i = 0; i < net.size(); ++i) {
            if (i == k) continue;
            if (net.metric(net.points[k], net.points[i]) >= range) continue;
            entries.emplace_back(k, i, (net.masses[k] + net.masses[i]) * h_entry(H, k, i));
        }
    return atomic_s_pairing(net.points, std::move(entries));
}

void check_metric_axioms(const Metric& metric, std::span<const Point> samples) {
    if (!metric) throw ValidationError("check_metric_axioms: metric not set");
    const double slack = 1e-12;
    for (std::size_t a = 0; a < samples.size(); ++a) {
        if (metric(samples[a], samples[a]) != 0.0)
            throw ContractError("metric: d(x,x) != 0 at sample " + std::to_string(a));
        for (std::size_t b = a + 1; b < samples.size(); ++b) {
            const double dab = metric(samples[a], samples[b]);
            const double dba = metric(samples[b], samples[a]);
            if (dab != dba)
                throw ContractError("metric: asymmetric at samples (" +
                                    std::to_string(a) + "," + std::to_string(b) + ")");
            if (!(dab > 0.0))
                throw ContractError("metric: zero distance between distinct samples (" +
                                    std::to_string(a) + "," + std::to_string(b) + ")");
            for (std::size_t c = 0; c < samples.size(); ++c) {
                const double dac = metric(samples[a], samples[c]);
                const double dcb = metric(samples[c], samples[b]);
                if (dab > dac + dcb + slack * (dac + dcb))
                    throw ContractError("metric: triangle inequality fails at samples (" +
                                        std::to_string(a) + "," + std::to_string(b) +
                                        "," + std::to_string(c) + ")");
            }
        }
    }
}

MasterKernel MasterKernel::pure_power(double gamma, double s) {
    if (!(s > 0.0 && s < 0.5))
        throw ValidationError("MasterKernel::pure_power: s must lie in (0,1/2)");
    MasterKernel k;
    k.sigma = 2.0 * s;
    k.gamma = gamma;
    k.upper_c = 1.0;
    k.lower_c = 1.0;
    const double expo = gamma + 2.0 * s;
    k.eval = [expo](double d, const Point&, const Point&) { return std::pow(d, -expo); };
    return k;
}

void check_kernel_bounds(const MasterKernel& kernel, const Metric& metric,
                         std::span<const std::pair<Point, Point>> samples) {
    for (std::size_t idx = 0; idx < samples.size(); ++idx) {
        const auto& [x, y] = samples[idx];
        const double d = metric(x, y);
        if (!(d > 0.0)) continue;
        const double power = std::pow(d, -(kernel.gamma + kernel.sigma));
        const double v = kernel.eval(d, x, y);
        const double slack = 1.0 + 1e-12;
        if (v > kernel.upper_c * power * slack)
            throw ContractError("master kernel exceeds the upper comparison bound at "
                                "sample " + std::to_string(idx));
        if (kernel.lower_c && d < 1.0 && v * slack < *kernel.lower_c * power)
            throw ContractError("master kernel falls below the near-field comparison "
                                "bound at sample " + std::to_string(idx));
    }
}

ValueWithBound ahlfors_kirchhoff(const AhlforsSpace& space, const MasterKernel& kernel,
                                 const TwoPointField& phi, const Point& x,
                                 const AhlforsQuadSpec& spec) {
    if (!space.metric || !space.integrate)
        throw ValidationError("ahlfors_kirchhoff: space is missing metric or integrator");
    const double phi_xx = phi(x, x);
    const auto integrand = [&](const Point& y) {
        const double d = space.metric(x, y);
        if (!(d > 0.0)) return 0.0;
        return (phi(x, y) - phi_xx) * kernel.eval(d, x, y);
    };

    KahanSum value;
    for (int m = -spec.far_levels; m <= spec.near_levels; ++m) {
        const double r_hi = std::ldexp(1.0, -m);
        const double r_lo = 0.5 * r_hi;
        value.add(space.integrate(x, r_lo, r_hi, integrand));
    }

    // Near field: |Φ(x,y)−Φ(x,x)|·K ≤ L·c₂·d^{1−γ−σ}; with μ(B(x,r)) ≤ c₂' r^γ the
    // annulus at scale m contributes at most L·c₂·c₂'·2^σ·2^{−m(1−σ)}.
    const double sigma = kernel.sigma;
    const double near_ratio = std::pow(2.0, -(1.0 - sigma));
    const double near_tail = spec.lipschitz * kernel.upper_c * space.mass_upper *
                             std::pow(2.0, sigma) *
                             std::pow(2.0, -(spec.near_levels + 1) * (1.0 - sigma)) /
                             (1.0 - near_ratio);

    // Far field: |Φ(x,y)−Φ(x,x)|·K ≤ 2‖Φ‖·c₂·d^{−γ−σ}: annulus m ≤ −M gives a
    // geometric series with ratio 2^{−σ}.
    double sup = spec.sup ? *spec.sup
                          : (phi.sup_bound ? *phi.sup_bound
                                           : throw ValidationError(
                                                 "ahlfors_kirchhoff: need ‖Φ‖_∞ (declare "
                                                 "sup_bound or pass spec.sup)"));
    const double far_ratio = std::pow(2.0, -sigma);
    const double far_m = static_cast<double>(spec.far_levels + 1);
    const double far_tail = 2.0 * sup * kernel.upper_c * space.mass_upper *
                            std::pow(2.0, kernel.gamma + sigma) *
                            std::pow(2.0, -far_m * sigma) / (1.0 - far_ratio);

    return {value.value(), near_tail + far_tail};
}

AnnulusIntegrator euclidean_1d_integrator(int panels, int gauss_order) {
    return [panels, gauss_order](const Point& x, double r_lo, double r_hi,
                                 const std::function<double(const Point&)>& g) {
        const double c = x.x();
        const auto g1 = [&](double t) { return g(Point::scalar(t)); };
        double s = integrate_composite(g1, c + r_lo, c + r_hi, panels, gauss_order);
        s += integrate_composite(g1, c - r_hi, c - r_lo, panels, gauss_order);
        return s;
    };
}

AnnulusIntegrator dyadic_annulus_integrator(int panels, int gauss_order) {
    return [panels, gauss_order](const Point& x, double r_lo, double r_hi,
                                 const std::function<double(const Point&)>& g) {
        // ρ takes the value 2^{−q}; collect the sibling intervals with
        // r_lo ≤ 2^{−q} < r_hi.
        const double c = x.x();
        if (!(c >= 0.0))
            throw ValidationError("dyadic annulus integrator: x must be >= 0");
        KahanSum s;
        const int q_lo = static_cast<int>(std::ceil(-std::log2(r_hi) - 1e-12)) ;
        for (int q = q_lo;; ++q) {
            const double rho_val = std::ldexp(1.0, -q);
            if (rho_val >= r_hi) continue;
            if (rho_val < r_lo) break;
            // Annulus {ρ(x,·)=2^{−q}} = I_q(x) ∖ I_{q+1}(x), a sibling interval.
            const auto idx = static_cast<std::int64_t>(std::floor(std::ldexp(c, q + 1)));
            const DyadicInterval sibling{q + 1, idx ^ 1};
            s.add(integrate_composite([&](double t) { return g(Point::scalar(t)); },
                                      sibling.left(), sibling.right(), panels,
                                      gauss_order));
        }
        return s.value();
    };
}

Metric dyadic_metric() {
    return [](const Point& a, const Point& b) { return rho(a.x(), b.x()); };
}

Metric euclidean_metric() {
    return [](const Point& a, const Point& b) { return distance(a, b); };
}

} // namespace kirlab
