#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "kirlab/errors.hpp"

namespace kirlab {

/// A point of the working space X ⊆ ℝⁿ. Coordinates must stay finite;
/// the dimension is fixed by the context that created the point.
class Point {
public:
    Point() = default;
    Point(std::initializer_list<double> coords) : c_(coords) { validate(); }
    explicit Point(std::vector<double> coords) : c_(std::move(coords)) { validate(); }

    /// 1D convenience.
    static Point scalar(double x) { return Point{x}; }

    std::size_t dim() const { return c_.size(); }
    double operator[](std::size_t i) const { return c_[i]; }
    double& operator[](std::size_t i) { return c_[i]; }
    const std::vector<double>& coords() const { return c_; }

    /// Value of a 1D point.
    double x() const {
        if (c_.size() != 1) throw ValidationError("Point::x() requires dimension 1");
        return c_[0];
    }

    bool operator==(const Point& other) const { return c_ == other.c_; }

private:
    void validate() const {
        for (double v : c_)
            if (!std::isfinite(v)) throw ValidationError("Point with non-finite coordinate");
    }

    std::vector<double> c_;
};

inline Point operator+(const Point& a, const Point& b) {
    std::vector<double> r(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i] + b[i];
    return Point(std::move(r));
}

inline Point operator-(const Point& a, const Point& b) {
    std::vector<double> r(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i] - b[i];
    return Point(std::move(r));
}

inline Point operator*(double s, const Point& a) {
    std::vector<double> r(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) r[i] = s * a[i];
    return Point(std::move(r));
}

/// Euclidean norm.
inline double norm(const Point& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * a[i];
    return std::sqrt(s);
}

inline double sup_norm(const Point& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) s = std::max(s, std::abs(a[i]));
    return s;
}

inline double distance(const Point& a, const Point& b) { return norm(a - b); }

/// Point shifted along coordinate axis m by step t.
inline Point shifted(const Point& a, std::size_t m, double t) {
    Point r = a;
    r[m] += t;
    return r;
}

} // namespace kirlab
