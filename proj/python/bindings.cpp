#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "lsys/curves.hpp"
#include "lsys/dsl.hpp"
#include "lsys/error.hpp"
#include "lsys/svg.hpp"
#include "lsys/verify.hpp"

namespace py = pybind11;
using namespace lsys;

namespace {

Point to_point(const std::vector<double>& c) { return Point(std::span<const double>(c)); }

std::vector<double> from_point(const Point& p) { return {p.coords().begin(), p.coords().end()}; }

std::vector<Point> to_points(const std::vector<std::vector<double>>& cs) {
    std::vector<Point> pts;
    for (const auto& c : cs) pts.push_back(to_point(c));
    return pts;
}

std::vector<std::vector<double>> from_points(const std::vector<Point>& pts) {
    std::vector<std::vector<double>> out;
    for (const Point& p : pts) out.push_back(from_point(p));
    return out;
}

CurveId curve(const std::string& name) {
    const auto id = curve_from_string(name);
    if (!id) throw py::value_error("unknown catalog entry '" + name + "'");
    return *id;
}

CurveParams make_params(const std::optional<std::vector<std::vector<double>>>& control, double t, int n, int cycles,
                        const std::optional<std::vector<double>>& weights) {
    CurveParams p;
    if (control) p.control = to_points(*control);
    p.t = t;
    p.n = n;
    p.cycles = cycles;
    p.weights = weights;
    return p;
}

py::dict run_dict(const CatalogRun& r) {
    py::dict d;
    d["word"] = format(r.final_word);
    d["interpreted"] = format(r.interpreted);
    d["points"] = from_points(r.points);
    py::list segs;
    for (const auto& [a, b] : r.polyline.segments) segs.append(py::make_tuple(from_point(a), from_point(b)));
    d["segments"] = segs;
    d["closed"] = r.polyline.closed;
    d["warnings"] = r.warnings;
    py::list trace;
    for (const TraceEntry& e : r.trace) trace.append(py::make_tuple(e.step, e.table, format(e.word)));
    d["trace"] = trace;
    return d;
}

}  // namespace

PYBIND11_MODULE(_lsys, m) {
    m.doc() = "Parametric L-systems with affine geometry and a verified curve catalog";

    auto base = py::register_exception<Error>(m, "LsysError");
    py::register_exception<ParseError>(m, "ParseError", base);
    py::register_exception<AffineError>(m, "AffineError", base);
    py::register_exception<DomainError>(m, "DomainError", base);
    py::register_exception<ArityError>(m, "ArityError", base);

    m.attr("CATALOG_DIR") = LSYS_CATALOG_DIR;

    m.def("affine_combine",
          [](const std::vector<double>& coeffs, const std::vector<std::vector<double>>& pts) {
              return from_point(affine_combine(AffineCoefficients(coeffs), to_points(pts)));
          },
          py::arg("coeffs"), py::arg("points"));
    m.def("project_to_plane", [](const std::vector<double>& p) { return from_point(project_to_plane(to_point(p))); });
    m.def("lift_with_weight", [](const std::vector<double>& base, double w) {
        return from_point(lift_with_weight(WeightedPoint(to_point(base), w)));
    });

    m.def("derive",
          [](const std::string& text, std::optional<int> steps) {
              ExecuteOptions opts;
              opts.steps = steps;
              return format(execute(parse(text), opts).derivation.result);
          },
          py::arg("text"), py::arg("steps") = py::none(),
          "Parse a definition and return the final word.");
    m.def("check", [](const std::string& text) { return parse(text).warnings; },
          "Parse a definition and return its warnings.");
    m.def("format_definition", [](const std::string& text) { return format_definition(parse(text)); });

    m.def("catalog", [] {
        std::vector<std::string> names;
        for (CurveId id : kAllCurves) names.emplace_back(to_string(id));
        return names;
    });
    m.def("run_catalog",
          [](const std::string& name, std::optional<std::vector<std::vector<double>>> control, double t, int n,
             int cycles, std::optional<std::vector<double>> weights, bool trace) {
              return run_dict(run_catalog(curve(name), make_params(control, t, n, cycles, weights), trace));
          },
          py::arg("name"), py::arg("control") = py::none(), py::arg("t") = 0.5, py::arg("n") = 1,
          py::arg("cycles") = 4, py::arg("weights") = py::none(), py::arg("trace") = false);
    m.def("sweep",
          [](const std::string& name, std::optional<std::vector<std::vector<double>>> control, double grid,
             std::optional<std::vector<double>> weights) {
              return from_points(sweep(curve(name), make_params(control, 0.5, 1, 4, weights), grid));
          },
          py::arg("name"), py::arg("control") = py::none(), py::arg("grid") = 0.01, py::arg("weights") = py::none());

    m.def("bezier_oracle", [](const std::vector<std::vector<double>>& ctrl, double t) {
        return from_point(bezier_oracle(to_points(ctrl), t));
    });
    m.def("bspline_oracle", [](const std::vector<std::vector<double>>& ctrl, int degree, double u) {
        return from_point(bspline_oracle(to_points(ctrl), degree, u));
    });

    m.def("verify",
          [](const std::string& only, const std::string& catalog_dir, std::uint64_t seed) {
              VerifyOptions opts;
              opts.only = only;
              opts.catalog_dir = catalog_dir;
              opts.seed = seed;
              py::list out;
              for (const PropertyResult& r : run_verification(opts)) {
                  py::dict d;
                  d["name"] = r.name;
                  d["passed"] = r.passed;
                  d["max_error"] = r.max_error;
                  d["tolerance"] = r.tolerance;
                  d["detail"] = r.detail;
                  out.append(d);
              }
              return out;
          },
          py::arg("only") = "", py::arg("catalog_dir") = LSYS_CATALOG_DIR, py::arg("seed") = 20080601);

    m.def("svg_polyline",
          [](const std::vector<std::vector<double>>& control, const std::vector<std::vector<double>>& result,
             bool closed) {
              SvgDocument doc;
              doc.add_polyline(to_points(control), closed, SvgRole::control);
              doc.add_polyline(to_points(result), closed, SvgRole::result);
              return doc.str();
          },
          py::arg("control"), py::arg("result"), py::arg("closed") = false);
}
