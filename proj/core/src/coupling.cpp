#include "kirlab/coupling.hpp"

#include <cmath>

#include "kirlab/numdiff.hpp"
#include "kirlab/parallel.hpp"
#include "kirlab/quadrature.hpp"

namespace kirlab {

QuadratureMeasure QuadratureMeasure::atoms(std::vector<Point> points,
                                           std::vector<double> weights) {
    if (points.size() != weights.size())
        throw ValidationError("QuadratureMeasure::atoms: size mismatch");
    for (double w : weights)
        if (!(w >= 0.0) || !std::isfinite(w))
            throw ValidationError("QuadratureMeasure::atoms: weights must be >= 0");
    QuadratureMeasure m;
    m.is_atoms_ = true;
    m.points_ = std::move(points);
    m.weights_ = std::move(weights);
    return m;
}

QuadratureMeasure QuadratureMeasure::box_density(ScalarField density, Point lo, Point hi,
                                                 int panels_per_axis, int gauss_order) {
    if (lo.dim() != hi.dim() || lo.dim() == 0)
        throw ValidationError("QuadratureMeasure::box_density: bad box");
    if (lo.dim() > 3)
        throw ValidationError("QuadratureMeasure::box_density: boxes up to dim 3");
    for (std::size_t i = 0; i < lo.dim(); ++i)
        if (!(lo[i] < hi[i]))
            throw ValidationError("QuadratureMeasure::box_density: empty box");
    QuadratureMeasure m;
    m.is_atoms_ = false;
    m.density_ = std::move(density);
    m.lo_ = std::move(lo);
    m.hi_ = std::move(hi);
    m.panels_ = panels_per_axis;
    m.order_ = gauss_order;
    return m;
}

double QuadratureMeasure::integrate(const std::function<double(const Point&)>& g) const {
    if (is_atoms_) {
        KahanSum s;
        for (std::size_t k = 0; k < points_.size(); ++k) s.add(weights_[k] * g(points_[k]));
        return s.value();
    }
    const std::size_t n = lo_.dim();
    // Tensor composite Gauss; innermost axis varies fastest.
    std::function<double(std::size_t, Point&)> nest = [&](std::size_t d, Point& y) {
        if (d == n) return density_(y) * g(y);
        return integrate_composite(
            [&](double t) {
                Point z = y;
                z[d] = t;
                return nest(d + 1, z);
            },
            lo_[d], hi_[d], panels_, order_);
    };
    Point cursor = lo_;
    return nest(0, cursor);
}

double QuadratureMeasure::mass() const {
    return integrate([](const Point&) { return 1.0; });
}

double independent_kir(const IndependentCoupling& c, const TwoPointField& phi,
                       const Point& x) {
    const double dens = c.density(x);
    if (dens == 0.0) return 0.0;
    return dens * c.pi2.integrate([&](const Point& y) { return phi(x, y); });
}

double independent_laplacian(const IndependentCoupling& c, const ScalarField& f,
                             const Point& x) {
    const double total = c.pi2.mass();
    if (!std::isfinite(total))
        throw ValidationError("independent_laplacian: pi2 must have finite mass");
    const double dens = c.density(x);
    if (dens == 0.0) return 0.0;
    return dens * (c.pi2.integrate([&](const Point& y) { return f(y); }) - f(x) * total);
}

double deterministic_kir(const DeterministicCoupling& c, const TwoPointField& phi,
                         const Point& x) {
    return phi(x, c.map(x));
}

double deterministic_laplacian(const DeterministicCoupling& c, const ScalarField& f,
                               const Point& x) {
    if (!(c.scale > 0.0)) throw ValidationError("deterministic_laplacian: h must be > 0");
    return (f(c.map(x)) - f(x)) / c.scale;
}

namespace {

void check_density(const DeterministicCoupling& c, const Point& x) {
    if (!(c.g(x) > 0.0))
        throw ValidationError("positive-order operators: g must be positive at x");
}

/// Column i of the Jacobian of F, analytic or central-difference.
Vector map_partial(const DeterministicCoupling& c, std::size_t i, const Point& x) {
    if (c.map.has_jacobian()) {
        const Matrix J = c.map.jacobian(x);
        Vector col(J.size());
        for (std::size_t r = 0; r < J.size(); ++r) col[r] = J[r][i];
        return col;
    }
    const Point fp = c.map(shifted(x, i, +c.deriv_step));
    const Point fm = c.map(shifted(x, i, -c.deriv_step));
    Vector col(fp.dim());
    for (std::size_t r = 0; r < fp.dim(); ++r)
        col[r] = (fp[r] - fm[r]) / (2.0 * c.deriv_step);
    return col;
}

Vector field_gradient(const ScalarField& f, const Point& x, double step) {
    return f.has_gradient() ? f.gradient(x) : num_gradient(f, x, step);
}

} // namespace

double positive_order_kir_x(const DeterministicCoupling& c, std::size_t i,
                            const TwoPointField& phi, const Point& x) {
    check_density(c, x);
    const double h = c.deriv_step;

    // d/dx_i [ g · (Φ∘G) ] by central differences along axis i.
    const auto composed = [&](const Point& z) { return c.g(z) * phi(z, c.map(z)); };
    const double d_composed =
        (composed(shifted(x, i, +h)) - composed(shifted(x, i, -h))) / (2.0 * h);

    // ∂Φ/∂x_i at (x, F(x)) with the second slot held fixed.
    const Point Fx = c.map(x);
    const double d_phi_x =
        (phi(shifted(x, i, +h), Fx) - phi(shifted(x, i, -h), Fx)) / (2.0 * h);

    return d_composed / c.g(x) - d_phi_x;
}

double positive_order_laplacian_x(const DeterministicCoupling& c, std::size_t i,
                                  const ScalarField& f, const Point& x) {
    check_density(c, x);
    const Point Fx = c.map(x);
    const Vector dF = map_partial(c, i, x);
    const Vector grad_f = field_gradient(f, Fx, c.deriv_step);

    double advect = 0.0;
    for (std::size_t r = 0; r < dF.size(); ++r) advect += dF[r] * grad_f[r];

    double dlog_g = 0.0;
    if (c.density.valid()) {
        const double gx = c.g(x);
        const double dg = c.density.has_gradient()
                              ? c.density.gradient(x)[i]
                              : num_partial(c.density, x, i, c.deriv_step);
        dlog_g = dg / gx;
    }
    return advect + (f(Fx) - f(x)) * dlog_g;
}

double positive_order_kir_y(const DeterministicCoupling& c, std::size_t j,
                            const TwoPointField& phi, const Point& x) {
    const Point Fx = c.map(x);
    if (phi.has_y_gradient()) return phi.y_gradient(x, Fx)[j];
    const double h = c.deriv_step;
    return (phi(x, shifted(Fx, j, +h)) - phi(x, shifted(Fx, j, -h))) / (2.0 * h);
}

double positive_order_laplacian_y(const DeterministicCoupling& c, std::size_t j,
                                  const ScalarField& f, const Point& x) {
    const Point Fx = c.map(x);
    return field_gradient(f, Fx, c.deriv_step)[j];
}

TPairing measure_t_pairing(QuadratureMeasure mu) {
    return [mu = std::move(mu)](const ScalarField& g) {
        return mu.integrate([&](const Point& x) { return g(x); });
    };
}

SPairing independent_s_pairing(IndependentCoupling c, QuadratureMeasure mu) {
    return [c = std::move(c), mu = std::move(mu)](const ScalarField& test,
                                                  const TwoPointField& phi) {
        return mu.integrate([&](const Point& x) {
            const double d = c.density(x);
            if (d == 0.0) return 0.0;
            return test(x) * d * c.pi2.integrate([&](const Point& y) { return phi(x, y); });
        });
    };
}

SPairing deterministic_s_pairing(DeterministicCoupling c, QuadratureMeasure mu) {
    return [c = std::move(c), mu = std::move(mu)](const ScalarField& test,
                                                  const TwoPointField& phi) {
        return mu.integrate([&](const Point& x) { return test(x) * phi(x, c.map(x)); }) /
               c.scale;
    };
}

} // namespace kirlab
