#pragma once

#include <array>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lsys/dsl.hpp"
#include "lsys/geometry.hpp"

namespace lsys {

// ---- catalog ----------------------------------------------------------------

enum class CurveId {
    chaikin,
    chaikin_edges,
    lane_riesenfeld,
    decasteljau_point,
    decasteljau_point_left,
    decasteljau_edges,
    decasteljau_subdivision,
    bezier_quadratic,
    bezier_cubic_pseudo,
    bezier_cubic_proper,
};

inline constexpr std::array<CurveId, 10> kAllCurves = {
    CurveId::chaikin,           CurveId::chaikin_edges,          CurveId::lane_riesenfeld,
    CurveId::decasteljau_point, CurveId::decasteljau_point_left, CurveId::decasteljau_edges,
    CurveId::decasteljau_subdivision, CurveId::bezier_quadratic, CurveId::bezier_cubic_pseudo,
    CurveId::bezier_cubic_proper,
};

std::string_view to_string(CurveId id) noexcept;
std::optional<CurveId> curve_from_string(std::string_view name) noexcept;

struct CatalogInfo {
    CurveId id;
    std::string_view summary;
    std::string_view parameters;  // which of t, n, cycles apply
    std::size_t min_points;
    std::size_t max_points;       // 0 = unbounded
    bool closed;
    bool sweeps_t;                // the result is a single curve point
};

const CatalogInfo& info(CurveId id);

/// Parameters for instantiating a catalog entry.
struct CurveParams {
    std::vector<Point> control;             // empty = the entry's default polygon
    double t = 0.5;
    int n = 1;                              // Lane-Riesenfeld averaging steps
    int cycles = 4;
    std::optional<std::vector<double>> weights;  // enables the rational pipeline
};

std::vector<Point> default_control_polygon(CurveId id);

// The definition built directly from C++ production objects.
LSystemDefinition builtin_definition(CurveId id, const CurveParams& params);

// Replaces the axiom and constants of a parsed catalog file with those the
// parameters describe, so the file and the built-in run the same input.
LSystemDefinition instantiate(LSystemDefinition parsed, CurveId id, const CurveParams& params);

// File name of the entry's twin in the catalog directory, e.g. "chaikin.lsys".
std::string catalog_file_name(CurveId id);

/// Segments gathered from L(v_l, v_r) modules.
struct Polyline {
    std::vector<std::pair<Point, Point>> segments;
    bool closed = false;
};

Polyline extract_polyline(const ModuleString& interpreted);

// First point parameter of every module that has one, in order.
std::vector<Point> points_of(const ModuleString& s);

struct CatalogRun {
    ModuleString final_word;
    ModuleString interpreted;
    Polyline polyline;
    std::vector<Point> points;          // points of the final word, projected when rational
    std::vector<TraceEntry> trace;
    std::vector<std::string> warnings;  // e.g. t outside [0, 1]
};

CatalogRun run_catalog(CurveId id, const CurveParams& params, bool keep_trace = false);
CatalogRun run_definition(const LSystemDefinition& def, bool keep_trace = false);

// Curve points for t = 0, grid, 2*grid, ..., 1 (entries that sweep t only).
std::vector<Point> sweep(CurveId id, const CurveParams& params, double grid);

// ---- vertex states of the subdivision system --------------------------------

enum class VertexState : int { other = 0, interior = 1, endpoint = 2 };

VertexState vertex_state(int s);
VertexState state_transition(VertexState left, VertexState right);

// ---- oracles -------------------------------------------------------------------

// Bernstein form with Pascal-triangle binomials.
Point bezier_oracle(std::span<const Point> ctrl, double t);
Point rational_bezier_oracle(std::span<const WeightedPoint> ctrl, double t);

// Uniform periodic B-spline over a closed polygon by Cox-de Boor recursion;
// u ranges over [0, ctrl.size()).
Point bspline_oracle(std::span<const Point> ctrl, int degree, double u);

// Distance from p to the closed uniform B-spline curve.
double distance_to_bspline(std::span<const Point> ctrl, int degree, const Point& p);

std::vector<Point> convex_hull(std::span<const Point> pts);
bool inside_convex_hull(std::span<const Point> hull, const Point& p, double slack);

std::vector<Point> random_polygon(std::mt19937_64& rng, std::size_t count, double lo, double hi);

}  // namespace lsys
