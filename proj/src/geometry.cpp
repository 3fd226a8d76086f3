#include "lsys/geometry.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace lsys {

Point::Point(double x, double y) : coords_{x, y, 0.0}, dim_(2) { check_finite(); }

Point::Point(double x, double y, double z) : coords_{x, y, z}, dim_(3) { check_finite(); }

Point::Point(std::span<const double> coords) {
    if (coords.size() != 2 && coords.size() != 3)
        throw DimensionError("point must have 2 or 3 coordinates, got " + std::to_string(coords.size()));
    dim_ = static_cast<int>(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) coords_[i] = coords[i];
    check_finite();
}

void Point::check_finite() const {
    for (int i = 0; i < dim_; ++i)
        if (!std::isfinite(coords_[i])) throw DomainError("point coordinate is not finite");
}

bool operator==(const Point& a, const Point& b) noexcept {
    if (a.dim_ != b.dim_) return false;
    for (int i = 0; i < a.dim_; ++i)
        if (a.coords_[i] != b.coords_[i]) return false;
    return true;
}

AffineCoefficients::AffineCoefficients(std::initializer_list<double> alphas)
    : AffineCoefficients(std::vector<double>(alphas)) {}

AffineCoefficients::AffineCoefficients(std::vector<double> alphas) : alphas_(std::move(alphas)) {
    if (alphas_.empty()) throw DimensionError("affine combination needs at least one coefficient");
    const double sum = std::accumulate(alphas_.begin(), alphas_.end(), 0.0);
    if (!std::isfinite(sum) || std::abs(sum - 1.0) > kAffineSumTolerance)
        throw AffineError("affine coefficients sum to " + std::to_string(sum) + ", expected 1");
}

WeightedPoint::WeightedPoint(Point base, double weight) : base_(base), weight_(weight) {
    if (base_.dim() != 2) throw DimensionError("weighted point base must be 2-D");
    if (!(weight_ > 0.0) || !std::isfinite(weight_))
        throw WeightError("weight must be positive, got " + std::to_string(weight_));
}

Point affine_combine(const AffineCoefficients& coeffs, std::span<const Point> points) {
    if (coeffs.size() != points.size())
        throw DimensionError("affine combination of " + std::to_string(points.size()) + " points with " +
                             std::to_string(coeffs.size()) + " coefficients");
    const int dim = points.front().dim();
    for (const Point& p : points)
        if (p.dim() != dim) throw DimensionError("affine combination of points with mixed dimensions");

    const auto alphas = coeffs.alphas();
    const Point& anchor = points.front();
    std::array<double, 3> acc{anchor[0], anchor[1], dim == 3 ? anchor[2] : 0.0};
    for (std::size_t i = 1; i < points.size(); ++i)
        for (int k = 0; k < dim; ++k) acc[k] += alphas[i] * (points[i][k] - anchor[k]);
    return Point(std::span<const double>(acc.data(), static_cast<std::size_t>(dim)));
}

Point project_to_plane(const Point& p) {
    if (p.dim() != 3) throw DimensionError("projection requires a 3-D point");
    if (std::abs(p.z()) <= kProjectionEpsilon)
        throw ProjectionError("cannot project a point with z = " + std::to_string(p.z()) + " onto z = 1");
    return Point(p.x() / p.z(), p.y() / p.z());
}

Point lift_with_weight(const WeightedPoint& wp) {
    const double w = wp.weight();
    return Point(w * wp.base().x(), w * wp.base().y(), w);
}

double distance(const Point& a, const Point& b) {
    if (a.dim() != b.dim()) throw DimensionError("distance between points of different dimension");
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

}  // namespace lsys
