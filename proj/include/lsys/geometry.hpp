#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "lsys/error.hpp"

namespace lsys {

// Tolerance on the sum of affine coefficients.
inline constexpr double kAffineSumTolerance = 1e-9;
// Smallest |z| accepted by the perspective projection onto z = 1.
inline constexpr double kProjectionEpsilon = 1e-12;

/// A position in 2 or 3 dimensions. Coordinates are always finite.
class Point {
public:
    Point(double x, double y);
    Point(double x, double y, double z);
    explicit Point(std::span<const double> coords);

    int dim() const noexcept { return dim_; }
    double operator[](std::size_t i) const { return coords_[i]; }
    double x() const noexcept { return coords_[0]; }
    double y() const noexcept { return coords_[1]; }
    double z() const noexcept { return coords_[2]; }
    std::span<const double> coords() const noexcept { return {coords_.data(), static_cast<std::size_t>(dim_)}; }

    friend bool operator==(const Point& a, const Point& b) noexcept;

private:
    void check_finite() const;

    std::array<double, 3> coords_{};
    int dim_ = 2;
};

/// Coefficients of an affine combination; they sum to 1 within kAffineSumTolerance.
class AffineCoefficients {
public:
    AffineCoefficients(std::initializer_list<double> alphas);
    explicit AffineCoefficients(std::vector<double> alphas);

    std::span<const double> alphas() const noexcept { return alphas_; }
    std::size_t size() const noexcept { return alphas_.size(); }

private:
    std::vector<double> alphas_;
};

/// A 2-D point paired with a positive weight.
class WeightedPoint {
public:
    WeightedPoint(Point base, double weight);

    const Point& base() const noexcept { return base_; }
    double weight() const noexcept { return weight_; }

private:
    Point base_;
    double weight_;
};

// v = v1 + sum_{i>=2} alpha_i (v_i - v1): anchored at the first point so the
// result does not depend on the coordinate origin.
Point affine_combine(const AffineCoefficients& coeffs, std::span<const Point> points);

// Perspective projection from the origin onto the plane z = 1.
Point project_to_plane(const Point& p);

// (w*x, w*y, w); the inverse of project_to_plane for the base point.
Point lift_with_weight(const WeightedPoint& wp);

double distance(const Point& a, const Point& b);

}  // namespace lsys
