#include <cmath>
#include <map>

#include "lsys/curves.hpp"

namespace lsys {

namespace {

// ---- construction helpers ---------------------------------------------------

PatternModule pat(std::string symbol, std::vector<std::string> vars = {}) {
    return PatternModule{std::move(symbol), std::move(vars)};
}

TemplateModule out(std::string symbol, std::vector<Expr> params = {}) {
    return TemplateModule{std::move(symbol), std::move(params)};
}

Expr frac(double num_, double den) { return num(num_) / num(den); }

Production rule(std::string label, PatternWord left, PatternWord pred, PatternWord right, TemplateWord succ,
                Expr condition = {}) {
    Production p;
    p.label = std::move(label);
    p.left_context = std::move(left);
    p.strict_predecessor = std::move(pred);
    p.right_context = std::move(right);
    p.condition = std::move(condition);
    p.successor = std::move(succ);
    return p;
}

// (1 - t)*a + t*b
Expr lerp(const std::string& a, const std::string& b) {
    return (num(1) - var("t")) * var(a) + var("t") * var(b);
}

Expr half(const std::string& a, const std::string& b) { return frac(1, 2) * var(a) + frac(1, 2) * var(b); }

// ---- entry descriptions -------------------------------------------------------

const std::array<CatalogInfo, 10> kInfo = {{
    {CurveId::chaikin, "Chaikin corner cutting on a closed polygon", "cycles", 3, 0, true, false},
    {CurveId::chaikin_edges, "Chaikin corner cutting with explicit edges", "cycles", 3, 0, true, false},
    {CurveId::lane_riesenfeld, "Lane-Riesenfeld uniform B-spline of degree n+1", "n, cycles", 3, 0, true, false},
    {CurveId::decasteljau_point, "de Casteljau curve point, right-context form", "t", 2, 0, false, true},
    {CurveId::decasteljau_point_left, "de Casteljau curve point, left-context form", "t", 2, 0, false, true},
    {CurveId::decasteljau_edges, "de Casteljau curve point on a vertex/edge complex", "t", 2, 0, false, true},
    {CurveId::decasteljau_subdivision, "Bezier curve of any degree by de Casteljau subdivision", "t, cycles", 2, 0,
     false, false},
    {CurveId::bezier_quadratic, "quadratic Bezier curve by fixed-degree subdivision", "cycles", 3, 3, false, false},
    {CurveId::bezier_cubic_pseudo, "cubic Bezier curve, multi-module predecessor", "cycles", 4, 4, false, false},
    {CurveId::bezier_cubic_proper, "cubic Bezier curve, single-module predecessors", "cycles", 4, 4, false, false},
}};

enum class Shape {
    vertices,        // P P P
    vertex_edge,     // P E P E ... (circular, trailing E)
    complex,         // P E P ... E P
    stateful,        // P(v,2) E P(v,0) ... E P(v,2)
    typed,           // P E Q ... Q E P
};

Shape shape_of(CurveId id) {
    switch (id) {
        case CurveId::chaikin:
        case CurveId::decasteljau_point:
        case CurveId::decasteljau_point_left: return Shape::vertices;
        case CurveId::chaikin_edges:
        case CurveId::lane_riesenfeld: return Shape::vertex_edge;
        case CurveId::decasteljau_edges: return Shape::complex;
        case CurveId::decasteljau_subdivision: return Shape::stateful;
        default: return Shape::typed;
    }
}

// Point-carrying symbols and the arity they are written with.
std::vector<std::pair<std::string, std::size_t>> point_symbols(CurveId id) {
    switch (shape_of(id)) {
        case Shape::stateful: return {{"P", 2}};
        case Shape::typed: return {{"P", 1}, {"Q", 1}};
        default: return {{"P", 1}};
    }
}

PatternModule point_pattern(const std::string& symbol, std::size_t arity, const std::string& v, const std::string& s) {
    return arity == 2 ? pat(symbol, {v, s}) : pat(symbol, {v});
}

// Final interpretation: one L(v_l, v_r) per edge, or per consecutive vertex
// pair for edge-free strings.
Table draw_table(CurveId id, bool primed) {
    Table t{"draw", {}};
    const std::string mark = primed ? "'" : "";
    const auto symbols = point_symbols(id);
    if (shape_of(id) == Shape::vertices) {
        const std::string p = "P" + mark;
        t.productions.push_back(rule("h", {}, {pat(p, {"v"})}, {pat(p, {"vr"})},
                                     {out(p, {var("v")}), out("L", {var("v"), var("vr")})}));
        return t;
    }
    std::vector<std::string> edges = {"E"};
    if (shape_of(id) == Shape::stateful) edges.push_back("I");
    int k = 0;
    for (const std::string& e : edges)
        for (const auto& [ls, la] : symbols)
            for (const auto& [rs, ra] : symbols) {
                const std::size_t left_arity = primed ? 1 : la;
                const std::size_t right_arity = primed ? 1 : ra;
                std::string label = "h" + std::to_string(++k);
                t.productions.push_back(rule(label, {point_pattern(ls + mark, left_arity, "vl", "sl")}, {pat(e)},
                                             {point_pattern(rs + mark, right_arity, "vr", "sr")},
                                             {out("L", {var("vl"), var("vr")})}));
            }
    return t;
}

Table projection_table(CurveId id) {
    Table t{"project", {}};
    for (const auto& [sym, arity] : point_symbols(id))
        t.productions.push_back(rule("h" + sym, {}, {point_pattern(sym, arity, "v", "s")}, {},
                                     {out(sym + "'", {call("project", {var("v")})})}));
    return t;
}

std::vector<Table> derivation_tables(CurveId id) {
    switch (id) {
        case CurveId::chaikin:
            return {{"main",
                     {rule("p", {pat("P", {"vl"})}, {pat("P", {"v"})}, {pat("P", {"vr"})},
                           {out("P", {frac(1, 4) * var("vl") + frac(3, 4) * var("v")}),
                            out("P", {frac(3, 4) * var("v") + frac(1, 4) * var("vr")})})}}};
        case CurveId::chaikin_edges:
            return {{"main",
                     {rule("p1", {pat("P", {"vl"})}, {pat("E")}, {pat("P", {"vr"})},
                           {out("P", {frac(3, 4) * var("vl") + frac(1, 4) * var("vr")}), out("E"),
                            out("P", {frac(1, 4) * var("vl") + frac(3, 4) * var("vr")})}),
                      rule("p2", {}, {pat("P", {"v"})}, {}, {out("E")})}}};
        case CurveId::lane_riesenfeld:
            return {{"p",
                     {rule("p", {pat("P", {"vl"})}, {pat("E")}, {pat("P", {"vr"})},
                           {out("E"), out("P", {half("vl", "vr")}), out("E")})}},
                    {"q",
                     {rule("q1", {pat("P", {"vl"})}, {pat("E")}, {pat("P", {"vr"})}, {out("P", {half("vl", "vr")})}),
                      rule("q2", {}, {pat("P", {"v"})}, {}, {out("E")})}}};
        case CurveId::decasteljau_point:
            return {{"main",
                     {rule("p1", {}, {pat("P", {"v"})}, {pat("P", {"vr"})}, {out("P", {lerp("v", "vr")})}),
                      rule("p2", {}, {pat("P", {"v"})}, {}, {})}}};
        case CurveId::decasteljau_point_left:
            return {{"main",
                     {rule("p1", {pat("P", {"vl"})}, {pat("P", {"v"})}, {}, {out("P", {lerp("vl", "v")})}),
                      rule("p2", {}, {pat("P", {"v"})}, {}, {})}}};
        case CurveId::decasteljau_edges:
            return {{"main",
                     {rule("p1", {pat("P", {"vl"})}, {pat("E")}, {pat("P", {"vr"})}, {out("P", {lerp("vl", "vr")})}),
                      rule("p2", {pat("E")}, {pat("P", {"v"})}, {pat("E")}, {out("E")}),
                      rule("p3", {}, {pat("P", {"v"})}, {}, {})}}};
        case CurveId::decasteljau_subdivision: {
            auto nonzero = binary(ExprKind::not_equal, var("s"), num(0));
            return {{"p",
                     {rule("p1", {pat("P", {"vl", "sl"})}, {pat("E")}, {pat("P", {"vr", "sr"})},
                           {out("P", {lerp("vl", "vr"), call("f", {var("sl"), var("sr")})})}),
                      rule("p2", {pat("E")}, {pat("P", {"v", "s"})}, {pat("E")}, {out("E")},
                           binary(ExprKind::equal, var("s"), num(0))),
                      rule("p3", {pat("E")}, {pat("P", {"v", "s"})}, {pat("E")},
                           {out("I"), out("P", {var("v"), var("s")}), out("I")}, nonzero),
                      rule("p4", {}, {pat("P", {"v", "s"})}, {pat("E")}, {out("P", {var("v"), var("s")}), out("I")},
                           nonzero),
                      rule("p5", {pat("E")}, {pat("P", {"v", "s"})}, {}, {out("I"), out("P", {var("v"), var("s")})},
                           nonzero)}},
                    {"q",
                     {rule("q1", {}, {pat("P", {"v", "s"})}, {}, {out("P", {var("v"), num(0)})},
                           binary(ExprKind::equal, var("s"), num(1))),
                      rule("q2", {}, {pat("I")}, {}, {out("E")})}}};
        }
        case CurveId::bezier_quadratic:
            return {{"main",
                     {rule("p", {pat("P", {"vl"}), pat("E")}, {pat("Q", {"v"})}, {pat("E"), pat("P", {"vr"})},
                           {out("Q", {half("vl", "v")}), out("E"),
                            out("P", {frac(1, 4) * var("vl") + frac(1, 2) * var("v") + frac(1, 4) * var("vr")}),
                            out("E"), out("Q", {half("v", "vr")})})}}};
        case CurveId::bezier_cubic_pseudo:
        case CurveId::bezier_cubic_proper: {
            const TemplateWord first = {
                out("Q", {half("vll", "vl")}), out("E"),
                out("Q", {frac(1, 4) * var("vll") + frac(1, 2) * var("vl") + frac(1, 4) * var("vr")})};
            const TemplateWord middle = {
                out("E"),
                out("P", {frac(1, 8) * var("vll") + frac(3, 8) * var("vl") + frac(3, 8) * var("vr") +
                          frac(1, 8) * var("vrr")}),
                out("E")};
            const TemplateWord last = {
                out("Q", {frac(1, 4) * var("vl") + frac(1, 2) * var("vr") + frac(1, 4) * var("vrr")}), out("E"),
                out("Q", {half("vr", "vrr")})};
            if (id == CurveId::bezier_cubic_pseudo) {
                TemplateWord all = first;
                all.insert(all.end(), middle.begin(), middle.end());
                all.insert(all.end(), last.begin(), last.end());
                return {{"main",
                         {rule("p", {pat("P", {"vll"}), pat("E")}, {pat("Q", {"vl"}), pat("E"), pat("Q", {"vr"})},
                               {pat("E"), pat("P", {"vrr"})}, all)}}};
            }
            return {{"main",
                     {rule("p1", {pat("P", {"vll"}), pat("E")}, {pat("Q", {"vl"})},
                           {pat("E"), pat("Q", {"vr"}), pat("E"), pat("P", {"vrr"})}, first),
                      rule("p2", {pat("P", {"vll"}), pat("E"), pat("Q", {"vl"})}, {pat("E")},
                           {pat("Q", {"vr"}), pat("E"), pat("P", {"vrr"})}, middle),
                      rule("p3", {pat("P", {"vll"}), pat("E"), pat("Q", {"vl"}), pat("E")}, {pat("Q", {"vr"})},
                           {pat("E"), pat("P", {"vrr"})}, last)}}};
        }
    }
    return {};
}

ScheduleSpec schedule_of(CurveId id) {
    switch (id) {
        case CurveId::lane_riesenfeld: return {{{"p", num(1)}, {"q", var("n")}}, var("cycles")};
        case CurveId::decasteljau_point:
        case CurveId::decasteljau_point_left:
        case CurveId::decasteljau_edges: return {{{"main", var("degree")}}, num(1)};
        case CurveId::decasteljau_subdivision: return {{{"p", var("degree")}, {"q", num(1)}}, var("cycles")};
        default: return {{{"main", num(1)}}, var("cycles")};
    }
}

std::vector<FunctionDef> functions_of(CurveId id) {
    if (id != CurveId::decasteljau_subdivision) return {};
    return {FunctionDef{"f", {"sl", "sr"}, call("min", {var("sl"), num(1)}) + call("min", {var("sr"), num(1)})}};
}

void check_params(CurveId id, const CurveParams& params, const std::vector<Point>& control) {
    const CatalogInfo& ci = info(id);
    if (control.size() < ci.min_points || (ci.max_points && control.size() > ci.max_points)) {
        std::string want = ci.max_points == ci.min_points ? "exactly " + std::to_string(ci.min_points)
                                                          : "at least " + std::to_string(ci.min_points);
        throw ArityError(std::string(to_string(id)) + " needs " + want + " control points, got " +
                         std::to_string(control.size()));
    }
    for (const Point& p : control)
        if (p.dim() != control.front().dim()) throw DimensionError("control points mix 2-D and 3-D");
    if (params.n < 0) throw DomainError("n must be non-negative");
    if (params.cycles < 0) throw DomainError("cycles must be non-negative");
    if (!std::isfinite(params.t)) throw DomainError("t must be finite");
    if (params.weights) {
        if (params.weights->size() != control.size())
            throw ArityError("expected " + std::to_string(control.size()) + " weights, got " +
                             std::to_string(params.weights->size()));
        if (control.front().dim() != 2) throw DimensionError("rational curves need 2-D control points");
    }
}

std::vector<Point> effective_control(CurveId id, const CurveParams& params) {
    std::vector<Point> control = params.control.empty() ? default_control_polygon(id) : params.control;
    check_params(id, params, control);
    if (params.weights) {
        for (std::size_t i = 0; i < control.size(); ++i)
            control[i] = lift_with_weight(WeightedPoint(control[i], (*params.weights)[i]));
    }
    return control;
}

ModuleString build_axiom(CurveId id, const std::vector<Point>& pts) {
    ModuleString s;
    s.topology = info(id).closed ? Topology::circular : Topology::linear;
    const Shape shape = shape_of(id);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const bool last = i + 1 == pts.size();
        if (shape == Shape::stateful) {
            const double state = (i == 0 || last) ? 2.0 : 0.0;
            s.modules.emplace_back("P", std::vector<ParamValue>{pts[i], state});
        } else if (shape == Shape::typed) {
            s.modules.emplace_back((i == 0 || last) ? "P" : "Q", std::vector<ParamValue>{pts[i]});
        } else {
            s.modules.emplace_back("P", std::vector<ParamValue>{pts[i]});
        }
        if (shape == Shape::vertex_edge || (shape != Shape::vertices && !last)) s.modules.emplace_back("E");
    }
    return s;
}

ConstantMap constants_of(CurveId id, const CurveParams& params, std::size_t points) {
    const double degree = static_cast<double>(points) - 1.0;
    switch (id) {
        case CurveId::chaikin:
        case CurveId::chaikin_edges:
        case CurveId::bezier_quadratic:
        case CurveId::bezier_cubic_pseudo:
        case CurveId::bezier_cubic_proper: return {{"cycles", params.cycles}};
        case CurveId::lane_riesenfeld: return {{"cycles", params.cycles}, {"n", params.n}};
        case CurveId::decasteljau_point:
        case CurveId::decasteljau_point_left:
        case CurveId::decasteljau_edges: return {{"degree", degree}, {"t", params.t}};
        case CurveId::decasteljau_subdivision: return {{"cycles", params.cycles}, {"degree", degree}, {"t", params.t}};
    }
    return {};
}

}  // namespace

std::string_view to_string(CurveId id) noexcept {
    switch (id) {
        case CurveId::chaikin: return "chaikin";
        case CurveId::chaikin_edges: return "chaikin_edges";
        case CurveId::lane_riesenfeld: return "lane_riesenfeld";
        case CurveId::decasteljau_point: return "decasteljau_point";
        case CurveId::decasteljau_point_left: return "decasteljau_point_left";
        case CurveId::decasteljau_edges: return "decasteljau_edges";
        case CurveId::decasteljau_subdivision: return "decasteljau_subdivision";
        case CurveId::bezier_quadratic: return "bezier_quadratic";
        case CurveId::bezier_cubic_pseudo: return "bezier_cubic_pseudo";
        case CurveId::bezier_cubic_proper: return "bezier_cubic_proper";
    }
    return "";
}

std::optional<CurveId> curve_from_string(std::string_view name) noexcept {
    for (CurveId id : kAllCurves)
        if (to_string(id) == name) return id;
    return std::nullopt;
}

const CatalogInfo& info(CurveId id) { return kInfo[static_cast<std::size_t>(id)]; }

std::string catalog_file_name(CurveId id) { return std::string(to_string(id)) + ".lsys"; }

std::vector<Point> default_control_polygon(CurveId id) {
    switch (shape_of(id)) {
        case Shape::vertex_edge: return {{0, 0}, {4, 0}, {4, 4}, {0, 4}};
        case Shape::typed:
            if (id == CurveId::bezier_quadratic) return {{0, 0}, {2, 4}, {4, 0}};
            return {{0, 0}, {1, 3}, {4, 3}, {5, 0}};
        default:
            if (id == CurveId::chaikin) return {{0, 0}, {4, 0}, {4, 4}, {0, 4}};
            return {{0, 0}, {1, 3}, {3, 4}, {5, 1}, {6, 3}};
    }
}

LSystemDefinition builtin_definition(CurveId id, const CurveParams& params) {
    const std::vector<Point> control = effective_control(id, params);
    LSystemDefinition def;
    def.name = std::string(to_string(id));
    def.topology = info(id).closed ? Topology::circular : Topology::linear;
    def.constants = constants_of(id, params, control.size());
    def.functions = functions_of(id);
    def.axiom = build_axiom(id, control);
    def.tables = derivation_tables(id);
    if (params.weights) {
        def.tables.push_back(projection_table(id));
        def.tables.push_back(draw_table(id, true));
        def.interpretation = {"project", "draw"};
    } else {
        def.tables.push_back(draw_table(id, false));
        def.interpretation = {"draw"};
    }
    def.schedule = schedule_of(id);
    def.warnings = check_definition(def);
    return def;
}

LSystemDefinition instantiate(LSystemDefinition parsed, CurveId id, const CurveParams& params) {
    const std::vector<Point> control = effective_control(id, params);
    for (const auto& [name, value] : constants_of(id, params, control.size())) parsed.constants[name] = value;
    parsed.axiom = build_axiom(id, control);
    parsed.axiom.topology = parsed.topology;
    parsed.warnings = check_definition(parsed);
    return parsed;
}

std::vector<Point> points_of(const ModuleString& s) {
    std::vector<Point> pts;
    for (const Module& m : s.modules)
        for (const ParamValue& v : m.params)
            if (const auto* p = std::get_if<Point>(&v)) {
                pts.push_back(*p);
                break;
            }
    return pts;
}

Polyline extract_polyline(const ModuleString& interpreted) {
    Polyline line;
    line.closed = interpreted.topology == Topology::circular;
    for (const Module& m : interpreted.modules) {
        if (m.symbol != "L") continue;
        if (m.arity() != 2 || !is_point(m.params[0]) || !is_point(m.params[1]))
            throw ExtractionError("module " + format(m) + " does not carry two points");
        line.segments.emplace_back(std::get<Point>(m.params[0]), std::get<Point>(m.params[1]));
    }
    return line;
}

CatalogRun run_definition(const LSystemDefinition& def, bool keep_trace) {
    ExecuteOptions opts;
    opts.trace = keep_trace;
    Execution ex = execute(def, opts);
    CatalogRun run;
    run.final_word = std::move(ex.derivation.result);
    run.interpreted = std::move(ex.interpreted);
    run.trace = std::move(ex.derivation.trace);
    run.polyline = extract_polyline(run.interpreted);
    run.points = points_of(run.final_word);
    run.warnings = def.warnings;
    return run;
}

CatalogRun run_catalog(CurveId id, const CurveParams& params, bool keep_trace) {
    const LSystemDefinition def = builtin_definition(id, params);
    CatalogRun run = run_definition(def, keep_trace);
    if (params.weights)
        for (Point& p : run.points) p = project_to_plane(p);
    if (params.t < 0.0 || params.t > 1.0)
        run.warnings.push_back("t = " + format(ParamValue(params.t)) + " lies outside [0, 1]");
    return run;
}

std::vector<Point> sweep(CurveId id, const CurveParams& params, double grid) {
    if (!info(id).sweeps_t) throw DomainError(std::string(to_string(id)) + " does not produce a single curve point");
    if (!(grid > 0.0) || grid > 1.0) throw DomainError("grid spacing must lie in (0, 1]");
    const auto steps = static_cast<long long>(std::llround(1.0 / grid));
    std::vector<Point> locus;
    locus.reserve(static_cast<std::size_t>(steps) + 1);
    CurveParams p = params;
    for (long long k = 0; k <= steps; ++k) {
        p.t = k == steps ? 1.0 : static_cast<double>(k) * grid;
        CatalogRun run = run_catalog(id, p);
        if (run.points.size() != 1) throw Error("sweep expected a single point, got " + std::to_string(run.points.size()));
        locus.push_back(run.points.front());
    }
    return locus;
}

VertexState vertex_state(int s) {
    if (s < 0 || s > 2) throw StateError("vertex state must be 0, 1 or 2, got " + std::to_string(s));
    return static_cast<VertexState>(s);
}

VertexState state_transition(VertexState left, VertexState right) {
    const int l = static_cast<int>(left), r = static_cast<int>(right);
    if (l < 0 || l > 2 || r < 0 || r > 2) throw StateError("vertex state out of range");
    return static_cast<VertexState>(std::min(l, 1) + std::min(r, 1));
}

}  // namespace lsys
