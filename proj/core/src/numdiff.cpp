#include "kirlab/numdiff.hpp"

namespace kirlab {

namespace {
void check_step(double h) {
    if (!(h > 0.0)) throw ValidationError("numdiff: step h must be positive");
}
} // namespace

Vector num_y_gradient(const TwoPointField& phi, const Point& x, double h) {
    check_step(h);
    const std::size_t n = x.dim();
    Vector g(n);
    for (std::size_t m = 0; m < n; ++m) {
        const double fp = phi(x, shifted(x, m, +h));
        const double fm = phi(x, shifted(x, m, -h));
        g[m] = (fp - fm) / (2.0 * h);
    }
    return g;
}

Matrix num_y_hessian(const TwoPointField& phi, const Point& x, double h) {
    check_step(h);
    const std::size_t n = x.dim();
    Matrix H(n, Vector(n, 0.0));
    const double f0 = phi(x, x);
    for (std::size_t m = 0; m < n; ++m) {
        const double fp = phi(x, shifted(x, m, +h));
        const double fm = phi(x, shifted(x, m, -h));
        H[m][m] = (fp - 2.0 * f0 + fm) / (h * h);
    }
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            Point pp = shifted(shifted(x, a, +h), b, +h);
            Point pm = shifted(shifted(x, a, +h), b, -h);
            Point mp = shifted(shifted(x, a, -h), b, +h);
            Point mm = shifted(shifted(x, a, -h), b, -h);
            const double v = (phi(x, pp) - phi(x, pm) - phi(x, mp) + phi(x, mm)) / (4.0 * h * h);
            H[a][b] = v;
            H[b][a] = v;
        }
    }
    return H;
}

Vector num_gradient(const ScalarField& f, const Point& x, double h) {
    check_step(h);
    const std::size_t n = x.dim();
    Vector g(n);
    for (std::size_t m = 0; m < n; ++m)
        g[m] = (f(shifted(x, m, +h)) - f(shifted(x, m, -h))) / (2.0 * h);
    return g;
}

double num_partial(const ScalarField& f, const Point& x, std::size_t i, double h) {
    check_step(h);
    return (f(shifted(x, i, +h)) - f(shifted(x, i, -h))) / (2.0 * h);
}

} // namespace kirlab
