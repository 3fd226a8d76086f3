#include "lsys/svg.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <cmath>
#include <cstdio>
#include <limits>

namespace lsys {

namespace {

struct Style {
    const char* stroke;
    double width;
    const char* dash;
    double radius;
};

Style style(SvgRole r) {
    switch (r) {
        case SvgRole::control: return {"#1f4fd1", 1.5, "6,3", 3.5};
        case SvgRole::intermediate: return {"#555555", 0.75, nullptr, 2.0};
        case SvgRole::result: return {"#d62728", 1.5, nullptr, 2.5};
        case SvgRole::state_other: return {"#2ca02c", 1.0, nullptr, 3.0};
        case SvgRole::state_interior: return {"#000000", 1.0, nullptr, 3.0};
        case SvgRole::state_endpoint: return {"#d62728", 1.0, nullptr, 3.0};
    }
    return {"#000000", 1.0, nullptr, 2.0};
}

const char* role_name(SvgRole r) {
    switch (r) {
        case SvgRole::control: return "control";
        case SvgRole::intermediate: return "intermediate";
        case SvgRole::result: return "result";
        case SvgRole::state_other: return "state-0";
        case SvgRole::state_interior: return "state-1";
        case SvgRole::state_endpoint: return "state-2";
    }
    return "";
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

void SvgDocument::add_polyline(std::vector<Point> pts, bool closed, SvgRole role) {
    items_.push_back({closed ? Item::Kind::polygon : Item::Kind::polyline, std::move(pts), role});
}

void SvgDocument::add_points(std::vector<Point> pts, SvgRole role) {
    items_.push_back({Item::Kind::points, std::move(pts), role});
}

void SvgDocument::add_segments(const std::vector<std::pair<Point, Point>>& segments, SvgRole role) {
    for (const auto& [a, b] : segments) items_.push_back({Item::Kind::polyline, {a, b}, role});
}

std::string SvgDocument::str() const {
    double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x;
    double hi_x = -lo_x, hi_y = -lo_x;
    for (const Item& it : items_)
        for (const Point& p : it.pts) {
            lo_x = std::min(lo_x, p.x());
            hi_x = std::max(hi_x, p.x());
            lo_y = std::min(lo_y, p.y());
            hi_y = std::max(hi_y, p.y());
        }
    if (lo_x > hi_x) lo_x = hi_x = lo_y = hi_y = 0.0;
    const double extent = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
    const double usable = kSize * (1.0 - 2.0 * kMargin);
    const double scale = usable / extent;
    // Center the content in the viewport.
    const double off_x = kSize * kMargin + (usable - (hi_x - lo_x) * scale) / 2.0;
    const double off_y = kSize * kMargin + (usable - (hi_y - lo_y) * scale) / 2.0;
    auto sx = [&](const Point& p) { return num(off_x + (p.x() - lo_x) * scale); };
    auto sy = [&](const Point& p) { return num(kSize - (off_y + (p.y() - lo_y) * scale)); };

    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(kSize) + "\" height=\"" +
           num(kSize) + "\" viewBox=\"0 0 " + num(kSize) + " " + num(kSize) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    for (const Item& it : items_) {
        const Style s = style(it.role);
        if (it.kind == Item::Kind::points) {
            out += "<g class=\"" + std::string(role_name(it.role)) + "\" fill=\"" + s.stroke + "\">\n";
            for (const Point& p : it.pts)
                out += "<circle cx=\"" + sx(p) + "\" cy=\"" + sy(p) + "\" r=\"" + num(s.radius) + "\"/>\n";
            out += "</g>\n";
            continue;
        }
        out += it.kind == Item::Kind::polygon ? "<polygon" : "<polyline";
        out += " class=\"" + std::string(role_name(it.role)) + "\" fill=\"none\" stroke=\"" + s.stroke +
               "\" stroke-width=\"" + num(s.width) + "\"";
        if (s.dash) out += " stroke-dasharray=\"" + std::string(s.dash) + "\"";
        out += " points=\"";
        for (std::size_t i = 0; i < it.pts.size(); ++i) {
            if (i) out += ' ';
            out += sx(it.pts[i]) + "," + sy(it.pts[i]);
        }
        out += "\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace lsys
