#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "lsys/curves.hpp"
#include "lsys/error.hpp"

using namespace lsys;

namespace {

bool near(const Point& a, const Point& b, double tol) {
    if (a.dim() != b.dim()) return false;
    for (int k = 0; k < a.dim(); ++k)
        if (std::abs(a[k] - b[k]) > tol) return false;
    return true;
}

}  // namespace

TEST_CASE("catalog has ten entries with round-tripping names") {
    CHECK(kAllCurves.size() == 10);
    for (CurveId id : kAllCurves) {
        CHECK(curve_from_string(to_string(id)) == id);
        CHECK(info(id).id == id);
    }
    CHECK_FALSE(curve_from_string("koch"));
}

TEST_CASE("state transition") {
    CHECK(state_transition(VertexState::endpoint, VertexState::other) == VertexState::interior);
    CHECK(state_transition(VertexState::interior, VertexState::interior) == VertexState::endpoint);
    CHECK(state_transition(VertexState::other, VertexState::other) == VertexState::other);
    CHECK(state_transition(VertexState::endpoint, VertexState::endpoint) == VertexState::endpoint);
    CHECK_THROWS_AS(vertex_state(3), StateError);
    CHECK_THROWS_AS(vertex_state(-1), StateError);
}

TEST_CASE("Bezier oracle") {
    const std::vector<Point> line{{0, 0}, {1, 0}};
    CHECK(bezier_oracle(line, 0.5) == Point(0.5, 0));
    const std::vector<Point> quad{{0, 0}, {1, 2}, {2, 0}};
    CHECK(bezier_oracle(quad, 0.5) == Point(1, 1));
    const std::vector<Point> cubic{{0, 0}, {1, 3}, {4, 3}, {5, 0}};
    CHECK(near(bezier_oracle(cubic, 1.0), Point(5, 0), 1e-15));
    CHECK(near(bezier_oracle(cubic, 0.0), Point(0, 0), 1e-15));
}

TEST_CASE("rational Bezier oracle") {
    const std::vector<Point> tri{{0, 0}, {2, 4}, {4, 0}};
    auto at = [&](double w) {
        const std::vector<WeightedPoint> c{{tri[0], 1}, {tri[1], w}, {tri[2], 1}};
        return rational_bezier_oracle(c, 0.5);
    };
    CHECK(near(at(1.0), bezier_oracle(tri, 0.5), 1e-15));
    CHECK(distance(at(2.5), tri[1]) < distance(at(1.0), tri[1]));
    CHECK(distance(at(0.5), tri[1]) > distance(at(1.0), tri[1]));
}

TEST_CASE("B-spline oracle at knots") {
    const std::vector<Point> sq{{0, 0}, {4, 0}, {4, 4}, {0, 4}};
    // degree 1 interpolates; the basis starting at knot j peaks at j+1
    for (int j = 0; j < 4; ++j) CHECK(near(bspline_oracle(sq, 1, j), sq[(j + 3) % 4], 1e-15));
    // degree 2 hits edge midpoints
    for (int j = 0; j < 4; ++j) {
        const Point& a = sq[(j + 2) % 4];
        const Point& b = sq[(j + 3) % 4];
        CHECK(near(bspline_oracle(sq, 2, j), Point((a.x() + b.x()) / 2, (a.y() + b.y()) / 2), 1e-15));
    }
    // degree 3 weights three consecutive vertices by 1/6, 4/6, 1/6
    for (int j = 0; j < 4; ++j) {
        const Point& a = sq[(j + 1) % 4];
        const Point& b = sq[(j + 2) % 4];
        const Point& c = sq[(j + 3) % 4];
        const Point want((a.x() + 4 * b.x() + c.x()) / 6, (a.y() + 4 * b.y() + c.y()) / 6);
        CHECK(near(bspline_oracle(sq, 3, j), want, 1e-14));
    }
    CHECK(bspline_oracle(sq, 3, 4.0) == bspline_oracle(sq, 3, 0.0));
    CHECK_THROWS_AS(bspline_oracle(sq, 3, -0.1), DomainError);
    CHECK_THROWS_AS(bspline_oracle(sq, 3, 4.1), DomainError);
    CHECK_THROWS_AS(bspline_oracle(sq, 0, 1.0), DomainError);
}

TEST_CASE("convex hull") {
    const std::vector<Point> pts{{0, 0}, {4, 0}, {2, 1}, {4, 4}, {0, 4}, {2, 2}};
    const std::vector<Point> hull = convex_hull(pts);
    CHECK(hull.size() == 4);
    CHECK(inside_convex_hull(hull, Point(2, 2), 1e-12));
    CHECK(inside_convex_hull(hull, Point(4, 2), 1e-12));
    CHECK_FALSE(inside_convex_hull(hull, Point(4.001, 2), 1e-12));
}

TEST_CASE("de Casteljau point entries") {
    const std::vector<Point> ctrl = default_control_polygon(CurveId::decasteljau_point);
    for (CurveId id : {CurveId::decasteljau_point, CurveId::decasteljau_point_left, CurveId::decasteljau_edges}) {
        CAPTURE(to_string(id));
        CurveParams p;
        p.t = 0.0;
        CatalogRun r = run_catalog(id, p);
        REQUIRE(r.final_word.size() == 1);
        CHECK(r.points[0] == ctrl.front());
        p.t = 0.3;
        r = run_catalog(id, p);
        CHECK(near(r.points[0], bezier_oracle(ctrl, 0.3), 1e-12));
    }
}

TEST_CASE("subdivision cycle splits the polygon") {
    CurveParams p;
    p.cycles = 1;
    p.t = 0.4;
    const CatalogRun sub = run_catalog(CurveId::decasteljau_subdivision, p);
    REQUIRE(sub.points.size() == 9);
    const CatalogRun pt = run_catalog(CurveId::decasteljau_point, p);
    CHECK(near(sub.points[4], pt.points[0], 1e-12));
    CHECK(format(sub.final_word).find("I") == std::string::npos);
    // states after re-initialization: endpoints at both ends and in the middle
    int endpoints = 0;
    for (const Module& m : sub.final_word.modules)
        if (m.symbol == "P" && std::get<double>(m.params[1]) == 2) ++endpoints;
    CHECK(endpoints == 3);

    p.cycles = 2;
    CHECK(run_catalog(CurveId::decasteljau_subdivision, p).points.size() == 17);
}

TEST_CASE("subdivision schedule grows an n+1 point polygon to 2n+1") {
    for (int n = 1; n <= 6; ++n) {
        std::mt19937_64 rng(n);
        CurveParams p;
        p.cycles = 1;
        p.control = random_polygon(rng, n + 1, -10, 10);
        CHECK(run_catalog(CurveId::decasteljau_subdivision, p).points.size() == static_cast<std::size_t>(2 * n + 1));
    }
}

TEST_CASE("Lane-Riesenfeld with n = 1 matches edge Chaikin on the square") {
    CurveParams p;
    p.cycles = 1;
    CHECK(run_catalog(CurveId::lane_riesenfeld, p).final_word == run_catalog(CurveId::chaikin_edges, p).final_word);
}

TEST_CASE("polylines") {
    CurveParams p;
    p.cycles = 0;
    const CatalogRun sq = run_catalog(CurveId::chaikin_edges, p);
    CHECK(sq.polyline.closed);
    REQUIRE(sq.polyline.segments.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(sq.polyline.segments[i].second == sq.polyline.segments[(i + 1) % 4].first);

    p.cycles = 4;
    CHECK(run_catalog(CurveId::chaikin, p).polyline.segments.size() == 64);

    CHECK(extract_polyline(parse_word("A B C")).segments.empty());
    CHECK_THROWS_AS(extract_polyline(parse_word("L(1,2)")), ExtractionError);
}

TEST_CASE("rational pipeline draws between projected points") {
    CurveParams p;
    p.cycles = 1;
    p.weights = std::vector<double>{1, 2.5, 1};
    const CatalogRun r = run_catalog(CurveId::bezier_quadratic, p);
    for (const auto& [a, b] : r.polyline.segments) {
        CHECK(a.dim() == 2);
        CHECK(b.dim() == 2);
    }
    CHECK(r.polyline.segments.front().first == Point(0, 0));
    CHECK(r.polyline.segments.back().second == Point(4, 0));
    // the curve point sits on the rational curve at t = 1/2
    const std::vector<WeightedPoint> wc{{{0, 0}, 1}, {{2, 4}, 2.5}, {{4, 0}, 1}};
    bool found = false;
    for (const Point& q : r.points) found = found || near(q, rational_bezier_oracle(wc, 0.5), 1e-12);
    CHECK(found);
}

TEST_CASE("parameter validation") {
    CurveParams p;
    p.control = {{0, 0}, {1, 1}};
    CHECK_THROWS_AS(run_catalog(CurveId::chaikin, p), ArityError);
    CHECK_THROWS_AS(run_catalog(CurveId::bezier_quadratic, p), ArityError);
    CHECK_THROWS_AS(run_catalog(CurveId::bezier_cubic_pseudo, p), ArityError);
    CHECK_NOTHROW(run_catalog(CurveId::decasteljau_point, p));
    p.control = {{0, 0}};
    CHECK_THROWS_AS(run_catalog(CurveId::decasteljau_point, p), ArityError);

    CurveParams q;
    q.n = -1;
    CHECK_THROWS_AS(run_catalog(CurveId::lane_riesenfeld, q), DomainError);
    q = {};
    q.cycles = -1;
    CHECK_THROWS_AS(run_catalog(CurveId::chaikin, q), DomainError);
    q = {};
    q.weights = std::vector<double>{1, 2};
    CHECK_THROWS_AS(run_catalog(CurveId::chaikin, q), ArityError);
    q.weights = std::vector<double>{1, 0, 1, 1};
    CHECK_THROWS_AS(run_catalog(CurveId::chaikin, q), WeightError);

    CurveParams t;
    t.t = 1.5;
    const CatalogRun r = run_catalog(CurveId::decasteljau_point, t);
    REQUIRE(r.warnings.size() == 1);
    CHECK(r.warnings[0].find("outside") != std::string::npos);
}

TEST_CASE("sweeps") {
    const std::vector<Point> locus = sweep(CurveId::decasteljau_point, {}, 0.01);
    const std::vector<Point> ctrl = default_control_polygon(CurveId::decasteljau_point);
    REQUIRE(locus.size() == 101);
    CHECK(locus.front() == ctrl.front());
    CHECK(near(locus.back(), ctrl.back(), 1e-12));
    CHECK_THROWS_AS(sweep(CurveId::chaikin, {}, 0.1), DomainError);
    CHECK_THROWS_AS(sweep(CurveId::decasteljau_point, {}, 0.0), DomainError);
}

TEST_CASE("catalog files match the built-in definitions") {
    for (CurveId id : kAllCurves) {
        CAPTURE(to_string(id));
        const LSystemDefinition file = parse_file(std::string(LSYS_CATALOG_DIR "/") + catalog_file_name(id));
        CHECK(file.warnings.empty());
        CHECK(builtin_definition(id, {}).warnings.empty());
        CHECK(run_definition(instantiate(file, id, {})).final_word == run_catalog(id, {}).final_word);
    }
}
