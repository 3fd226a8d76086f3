// Closed-form references used to cross-check the L-system catalog. None of
// these call into the rewriting engine.

#include <algorithm>
#include <cmath>

#include "lsys/curves.hpp"

namespace lsys {

namespace {

std::vector<double> pascal_row(std::size_t n) {
    std::vector<double> row{1.0};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> next(row.size() + 1, 1.0);
        for (std::size_t k = 1; k < row.size(); ++k) next[k] = row[k - 1] + row[k];
        row = std::move(next);
    }
    return row;
}

std::vector<double> bernstein(std::size_t degree, double t) {
    const std::vector<double> binom = pascal_row(degree);
    std::vector<double> b(degree + 1);
    for (std::size_t i = 0; i <= degree; ++i)
        b[i] = binom[i] * std::pow(t, static_cast<double>(i)) * std::pow(1.0 - t, static_cast<double>(degree - i));
    return b;
}

// Uniform B-spline basis of the given degree with knots j, j+1, ..., j+degree+1.
double basis(long long j, int degree, double u) {
    const double x = u - static_cast<double>(j);
    if (degree == 0) return (x >= 0.0 && x < 1.0) ? 1.0 : 0.0;
    const double d = static_cast<double>(degree);
    return x / d * basis(j, degree - 1, u) + (d + 1.0 - x) / d * basis(j + 1, degree - 1, u);
}

double cross(const Point& o, const Point& a, const Point& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

}  // namespace

Point bezier_oracle(std::span<const Point> ctrl, double t) {
    if (ctrl.size() < 2) throw ArityError("Bezier oracle needs at least two control points");
    const std::vector<double> b = bernstein(ctrl.size() - 1, t);
    const int dim = ctrl.front().dim();
    std::array<double, 3> acc{};
    for (std::size_t i = 0; i < ctrl.size(); ++i)
        for (int k = 0; k < dim; ++k) acc[k] += b[i] * ctrl[i][k];
    return Point(std::span<const double>(acc.data(), static_cast<std::size_t>(dim)));
}

Point rational_bezier_oracle(std::span<const WeightedPoint> ctrl, double t) {
    if (ctrl.size() < 2) throw ArityError("rational Bezier oracle needs at least two control points");
    const std::vector<double> b = bernstein(ctrl.size() - 1, t);
    double x = 0.0, y = 0.0, w = 0.0;
    for (std::size_t i = 0; i < ctrl.size(); ++i) {
        const double bw = b[i] * ctrl[i].weight();
        x += bw * ctrl[i].base().x();
        y += bw * ctrl[i].base().y();
        w += bw;
    }
    return Point(x / w, y / w);
}

Point bspline_oracle(std::span<const Point> ctrl, int degree, double u) {
    if (degree < 1) throw DomainError("B-spline degree must be at least 1");
    const auto m = static_cast<long long>(ctrl.size());
    if (m <= degree) throw ArityError("closed B-spline of degree " + std::to_string(degree) + " needs more than " +
                                      std::to_string(degree) + " control points");
    if (!(u >= 0.0 && u <= static_cast<double>(m)))
        throw DomainError("B-spline parameter outside [0, " + std::to_string(m) + "]");
    if (u == static_cast<double>(m)) u = 0.0;

    const int dim = ctrl.front().dim();
    std::array<double, 3> acc{};
    const auto span = static_cast<long long>(std::floor(u));
    for (long long j = span - degree; j <= span; ++j) {
        const double w = basis(j, degree, u);
        const Point& p = ctrl[static_cast<std::size_t>(((j % m) + m) % m)];
        for (int k = 0; k < dim; ++k) acc[k] += w * p[k];
    }
    return Point(std::span<const double>(acc.data(), static_cast<std::size_t>(dim)));
}

double distance_to_bspline(std::span<const Point> ctrl, int degree, const Point& p) {
    const double m = static_cast<double>(ctrl.size());
    const int samples = 256 * static_cast<int>(ctrl.size());
    const double h = m / samples;
    auto dist = [&](double u) {
        u = std::fmod(u, m);
        if (u < 0) u += m;
        return distance(bspline_oracle(ctrl, degree, u), p);
    };
    double best_u = 0.0, best = dist(0.0);
    for (int i = 1; i < samples; ++i) {
        const double d = dist(i * h);
        if (d < best) {
            best = d;
            best_u = i * h;
        }
    }
    // Golden-section refinement around the best sample.
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = best_u - h, b = best_u + h;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = dist(c), fd = dist(d);
    for (int it = 0; it < 100; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = dist(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = dist(d);
        }
    }
    return std::min({best, fc, fd});
}

std::vector<Point> convex_hull(std::span<const Point> pts) {
    std::vector<Point> sorted(pts.begin(), pts.end());
    std::sort(sorted.begin(), sorted.end(), [](const Point& a, const Point& b) {
        return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
    });
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted.size() < 3) return sorted;
    std::vector<Point> hull;
    for (int pass = 0; pass < 2; ++pass) {
        const std::size_t base = hull.size();
        for (const Point& p : sorted) {
            while (hull.size() >= base + 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0.0) hull.pop_back();
            hull.push_back(p);
        }
        hull.pop_back();
        std::reverse(sorted.begin(), sorted.end());
    }
    return hull;
}

bool inside_convex_hull(std::span<const Point> hull, const Point& p, double slack) {
    if (hull.empty()) return false;
    if (hull.size() == 1) return distance(hull[0], p) <= slack;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Point& a = hull[i];
        const Point& b = hull[(i + 1) % hull.size()];
        const double len = distance(a, b);
        const double scale = std::max({1.0, std::abs(p.x()), std::abs(p.y())});
        if (cross(a, b, p) / len < -slack * scale) return false;
        if (hull.size() == 2) {
            // Segment hull: also require the point between the endpoints.
            const double along = ((p.x() - a.x()) * (b.x() - a.x()) + (p.y() - a.y()) * (b.y() - a.y())) / (len * len);
            return std::abs(cross(a, b, p)) / len <= slack * scale && along >= -slack && along <= 1.0 + slack;
        }
    }
    return true;
}

std::vector<Point> random_polygon(std::mt19937_64& rng, std::size_t count, double lo, double hi) {
    std::uniform_real_distribution<double> coord(lo, hi);
    std::vector<Point> pts;
    pts.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double x = coord(rng);
        const double y = coord(rng);
        pts.emplace_back(x, y);
    }
    return pts;
}

}  // namespace lsys
