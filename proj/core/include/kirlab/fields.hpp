#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "kirlab/point.hpp"

namespace kirlab {

using Vector = std::vector<double>;
using Matrix = std::vector<std::vector<double>>;

/// A real function f on X. Evaluation is deterministic; if support_radius is
/// set, points with |x| beyond it evaluate to 0 without calling eval.
/// Analytic derivatives and sup bounds are optional declarations used by the
/// operators that can exploit them.
class ScalarField {
public:
    using Eval = std::function<double(const Point&)>;
    using Grad = std::function<Vector(const Point&)>;
    using Hess = std::function<Matrix(const Point&)>;

    ScalarField() = default;
    explicit ScalarField(Eval f) : eval_(std::move(f)) {}
    ScalarField(Eval f, Grad g) : eval_(std::move(f)), gradient_(std::move(g)) {}

    /// Build from a 1D callable.
    static ScalarField of_1d(std::function<double(double)> f) {
        return ScalarField([f = std::move(f)](const Point& x) { return f(x.x()); });
    }

    double operator()(const Point& x) const {
        if (support_radius && norm(x) > *support_radius) return 0.0;
        return eval_(x);
    }
    double operator()(double x) const { return (*this)(Point::scalar(x)); }

    bool valid() const { return static_cast<bool>(eval_); }
    bool has_gradient() const { return static_cast<bool>(gradient_); }
    bool has_hessian() const { return static_cast<bool>(hessian_); }
    Vector gradient(const Point& x) const { return gradient_(x); }
    Matrix hessian(const Point& x) const { return hessian_(x); }

    ScalarField& with_support_radius(double r) { support_radius = r; return *this; }
    ScalarField& with_sup_bound(double b) { sup_bound = b; return *this; }
    ScalarField& with_gradient(Grad g) { gradient_ = std::move(g); return *this; }
    ScalarField& with_hessian(Hess h) { hessian_ = std::move(h); return *this; }

    std::optional<double> support_radius; ///< eval is 0 beyond |x| > r
    std::optional<double> sup_bound;      ///< declared ‖f‖_∞

private:
    Eval eval_;
    Grad gradient_;
    Hess hessian_;
};

/// A real function Φ on X×X, the test object of the Kirchhoff divergence.
/// Declared y-derivatives must match finite differences to order h² where
/// sampled (checked by the test suite, not at runtime).
class TwoPointField {
public:
    using Eval = std::function<double(const Point&, const Point&)>;
    using YGrad = std::function<Vector(const Point&, const Point&)>;
    using YHess = std::function<Matrix(const Point&, const Point&)>;

    TwoPointField() = default;
    explicit TwoPointField(Eval f) : eval_(std::move(f)) {}

    double operator()(const Point& x, const Point& y) const {
        if (support_radius && (norm(x) > *support_radius || norm(y) > *support_radius))
            return 0.0;
        return eval_(x, y);
    }
    double operator()(double x, double y) const {
        return (*this)(Point::scalar(x), Point::scalar(y));
    }

    bool valid() const { return static_cast<bool>(eval_); }
    bool has_y_gradient() const { return static_cast<bool>(y_gradient_); }
    bool has_y_hessian() const { return static_cast<bool>(y_hessian_); }
    Vector y_gradient(const Point& x, const Point& y) const { return y_gradient_(x, y); }
    Matrix y_hessian(const Point& x, const Point& y) const { return y_hessian_(x, y); }

    TwoPointField& with_support_radius(double r) { support_radius = r; return *this; }
    TwoPointField& with_sup_bound(double b) { sup_bound = b; return *this; }
    TwoPointField& with_y_grad_bound(double b) { y_grad_bound = b; return *this; }
    TwoPointField& with_y_hess_bound(double b) { y_hess_bound = b; return *this; }
    TwoPointField& with_y_gradient(YGrad g) { y_gradient_ = std::move(g); return *this; }
    TwoPointField& with_y_hessian(YHess h) { y_hessian_ = std::move(h); return *this; }

    std::optional<double> support_radius; ///< Φ(x,y)=0 when |x| or |y| exceeds it
    std::optional<double> sup_bound;      ///< declared ‖Φ‖_∞
    std::optional<double> y_grad_bound;   ///< declared ‖∇_yΦ‖_∞
    std::optional<double> y_hess_bound;   ///< declared sup_{|α|=2}‖∂^α_yΦ‖_∞

private:
    Eval eval_;
    YGrad y_gradient_;
    YHess y_hessian_;
};

/// The order-zero gradient ∇f(x,y) = f(y) − f(x). Declared derivatives of f
/// propagate to y-derivatives of the result.
inline TwoPointField grad0(const ScalarField& f) {
    TwoPointField g([f](const Point& x, const Point& y) { return f(y) - f(x); });
    if (f.has_gradient())
        g.with_y_gradient([f](const Point&, const Point& y) { return f.gradient(y); });
    if (f.has_hessian())
        g.with_y_hessian([f](const Point&, const Point& y) { return f.hessian(y); });
    if (f.sup_bound) g.sup_bound = 2.0 * *f.sup_bound;
    return g;
}

/// Pointwise product φ·f of two scalar fields.
inline ScalarField product(const ScalarField& a, const ScalarField& b) {
    return ScalarField([a, b](const Point& x) { return a(x) * b(x); });
}

} // namespace kirlab
