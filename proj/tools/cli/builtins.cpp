#include "builtins.hpp"

#include <cmath>
#include <numbers>

namespace kirlab::tools {

namespace {

double cube_bump(double t) {
    const double u = 1.0 - t * t;
    if (u <= 0.0) return 0.0;
    return u * u * u;
}

double mollifier(double t) {
    const double u = 1.0 - t * t;
    if (u <= 0.0) return 0.0;
    return std::exp(1.0 - 1.0 / u);
}

double sqnorm(const Point& p) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.dim(); ++i) s += p[i] * p[i];
    return s;
}

[[noreturn]] void unknown(const std::string& kind, const std::string& name) {
    throw ValidationError("unknown " + kind + " builtin '" + name + "'");
}

} // namespace

ScalarField builtin_scalar(const std::string& name) {
    if (name == "one") {
        ScalarField f([](const Point&) { return 1.0; });
        f.sup_bound = 1.0;
        return f;
    }
    if (name == "identity") return ScalarField([](const Point& x) { return x[0]; });
    if (name == "square") {
        ScalarField f([](const Point& x) { return sqnorm(x); });
        f.with_gradient([](const Point& x) {
            Vector g(x.dim());
            for (std::size_t i = 0; i < x.dim(); ++i) g[i] = 2.0 * x[i];
            return g;
        });
        return f;
    }
    if (name == "cube") return ScalarField([](const Point& x) { return x[0] * x[0] * x[0]; });
    if (name == "sin") return ScalarField([](const Point& x) { return std::sin(x[0]); });
    if (name == "gauss") {
        ScalarField f([](const Point& x) { return std::exp(-sqnorm(x)); });
        f.sup_bound = 1.0;
        return f;
    }
    if (name == "bump") {
        ScalarField f([](const Point& x) { return cube_bump(std::sqrt(sqnorm(x))); });
        f.sup_bound = 1.0;
        f.support_radius = 1.0;
        return f;
    }
    if (name == "smoothbump") {
        ScalarField f([](const Point& x) { return mollifier(std::sqrt(sqnorm(x))); });
        f.sup_bound = 1.0;
        f.support_radius = 1.0;
        return f;
    }
    if (name == "cauchy") {
        ScalarField f([](const Point& x) { return 1.0 / (1.0 + x[0] * x[0]); });
        f.sup_bound = 1.0;
        return f;
    }
    if (name == "indicator0") {
        ScalarField f([](const Point& x) { return sqnorm(x) == 0.0 ? 1.0 : 0.0; });
        f.sup_bound = 1.0;
        f.support_radius = 0.5;
        return f;
    }
    unknown("scalar", name);
}

TwoPointField builtin_two_point(const std::string& name) {
    if (name.rfind("grad0:", 0) == 0) return grad0(builtin_scalar(name.substr(6)));
    if (name == "one") {
        TwoPointField p([](const Point&, const Point&) { return 1.0; });
        p.sup_bound = 1.0;
        return p;
    }
    if (name == "ydiff")
        return TwoPointField([](const Point& x, const Point& y) { return y[0] - x[0]; });
    if (name == "sqdiff")
        return TwoPointField([](const Point& x, const Point& y) {
            double s = 0.0;
            for (std::size_t i = 0; i < x.dim(); ++i) s += (y[i] - x[i]) * (y[i] - x[i]);
            return s;
        });
    if (name == "xdiag")
        return TwoPointField(
            [](const Point& x, const Point& y) { return x[0] * (y[0] - x[0]); });
    if (name == "bumpx-cauchyy") {
        TwoPointField p([](const Point& x, const Point& y) {
            return std::exp(-x[0] * x[0] / 4.0) / (1.0 + y[0] * y[0]);
        });
        p.sup_bound = 1.0;
        return p;
    }
    if (name == "pairbump") {
        TwoPointField p([](const Point& x, const Point& y) {
            return cube_bump(x[0]) * (mollifier(y[0]) - mollifier(x[0]));
        });
        p.sup_bound = 2.0;
        p.support_radius = 2.0;
        return p;
    }
    if (name == "bump2") {
        TwoPointField p([](const Point& x, const Point& y) {
            return cube_bump(x[0]) * cube_bump(y[0]);
        });
        p.sup_bound = 1.0;
        p.support_radius = 1.0;
        return p;
    }
    unknown("two-point", name);
}

VectorMap builtin_map(const std::string& name) {
    VectorMap m;
    if (name == "identity") {
        m.eval = [](const Point& x) { return x; };
        m.jacobian = [](const Point& x) {
            Matrix J(x.dim(), Vector(x.dim(), 0.0));
            for (std::size_t i = 0; i < x.dim(); ++i) J[i][i] = 1.0;
            return J;
        };
        return m;
    }
    if (name == "double") {
        m.eval = [](const Point& x) { return 2.0 * x; };
        m.jacobian = [](const Point& x) {
            Matrix J(x.dim(), Vector(x.dim(), 0.0));
            for (std::size_t i = 0; i < x.dim(); ++i) J[i][i] = 2.0;
            return J;
        };
        return m;
    }
    if (name == "square") {
        m.eval = [](const Point& x) { return Point::scalar(x[0] * x[0]); };
        m.jacobian = [](const Point& x) { return Matrix{{2.0 * x[0]}}; };
        return m;
    }
    unknown("map", name);
}

std::function<double(double, double)> builtin_family_map(const std::string& name) {
    if (name == "identity") return [](double, double x) { return x; };
    if (name == "pow1ph") return [](double h, double x) { return std::pow(x, 1.0 + h); };
    if (name == "drift")
        return [](double h, double x) { return x + h * (0.5 + std::sin(x)); };
    unknown("family map", name);
}

ScalarField builtin_zeta(const std::string& name) {
    if (name == "compactbump") {
        // ∫(1−t²)³ over [−1,1] is 32/35; normalize to a probability density.
        ScalarField z = ScalarField::of_1d(
            [](double t) { return (35.0 / 32.0) * cube_bump(t); });
        z.sup_bound = 35.0 / 32.0;
        z.support_radius = 1.0;
        return z;
    }
    if (name == "cauchy") {
        ScalarField z = ScalarField::of_1d(
            [](double t) { return (1.0 / std::numbers::pi) / (1.0 + t * t); });
        z.sup_bound = 1.0 / std::numbers::pi;
        return z;
    }
    unknown("zeta", name);
}

bool zeta_has_compact_support(const std::string& name) {
    if (name == "compactbump") return true;
    if (name == "cauchy") return false;
    unknown("zeta", name);
}

} // namespace kirlab::tools
