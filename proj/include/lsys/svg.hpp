#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lsys/geometry.hpp"

namespace lsys {

// Stroke roles. Hues are fixed so output is reproducible; the roles follow
// the usual convention of an initial polygon distinct from derived ones.
enum class SvgRole {
    control,       // initial polygon
    intermediate,  // polygons of earlier derivation steps
    result,        // final curve or points
    state_other,   // subdivision vertex with s = 0
    state_interior,
    state_endpoint,
};

/// A 512x512 plot. Model coordinates are fitted with a 5% margin and the
/// y axis points up.
class SvgDocument {
public:
    static constexpr double kSize = 512.0;
    static constexpr double kMargin = 0.05;

    void add_polyline(std::vector<Point> pts, bool closed, SvgRole role);
    void add_points(std::vector<Point> pts, SvgRole role);
    void add_segments(const std::vector<std::pair<Point, Point>>& segments, SvgRole role);

    // Well-formed SVG 1.1 with coordinates at 12 significant digits.
    std::string str() const;

private:
    struct Item {
        enum class Kind { polyline, polygon, points } kind;
        std::vector<Point> pts;
        SvgRole role;
    };
    std::vector<Item> items_;
};

}  // namespace lsys
