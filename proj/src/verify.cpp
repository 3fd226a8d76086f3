#include "lsys/verify.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>

#include "lsys/curves.hpp"

namespace lsys {

namespace {

double max_coord_error(const Point& a, const Point& b) {
    if (a.dim() != b.dim()) return INFINITY;
    double e = 0.0;
    for (int k = 0; k < a.dim(); ++k) e = std::max(e, std::abs(a[k] - b[k]));
    return e;
}

double max_sequence_error(const std::vector<Point>& a, const std::vector<Point>& b) {
    if (a.size() != b.size()) return INFINITY;
    double e = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, max_coord_error(a[i], b[i]));
    return e;
}

bool same_structure(const ModuleString& a, const ModuleString& b) {
    if (a.size() != b.size() || a.topology != b.topology) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].symbol != b[i].symbol || a[i].arity() != b[i].arity()) return false;
    return true;
}

// Integer coordinates keep every corner-cutting and midpoint step exact.
std::vector<Point> dyadic_polygon(std::mt19937_64& rng, std::size_t count) {
    std::uniform_int_distribution<int> coord(-16, 16);
    std::vector<Point> pts;
    for (std::size_t i = 0; i < count; ++i) {
        const double x = coord(rng);
        const double y = coord(rng);
        pts.emplace_back(x, y);
    }
    return pts;
}

using Check = std::function<void(PropertyResult&, std::mt19937_64&)>;

void decasteljau_bernstein(PropertyResult& r, std::mt19937_64& rng) {
    r.tolerance = 1e-10;
    for (int degree = 1; degree <= 8; ++degree)
        for (int poly = 0; poly < 20; ++poly) {
            CurveParams p;
            p.control = random_polygon(rng, static_cast<std::size_t>(degree) + 1, -10, 10);
            for (int k = 0; k <= 100; ++k) {
                p.t = k / 100.0;
                const CatalogRun run = run_catalog(CurveId::decasteljau_point, p);
                if (run.points.size() != 1) {
                    r.max_error = INFINITY;
                    r.detail = "derivation did not collapse to one point";
                    return;
                }
                r.max_error = std::max(r.max_error, max_coord_error(run.points[0], bezier_oracle(p.control, p.t)));
            }
        }
}

void decasteljau_variants(PropertyResult& r, std::mt19937_64& rng) {
    r.tolerance = 1e-12;
    for (int degree = 1; degree <= 8; ++degree)
        for (int poly = 0; poly < 5; ++poly) {
            CurveParams p;
            p.control = random_polygon(rng, static_cast<std::size_t>(degree) + 1, -10, 10);
            for (int k = 0; k <= 20; ++k) {
                p.t = k / 20.0;
                const auto right = run_catalog(CurveId::decasteljau_point, p).points;
                const auto left = run_catalog(CurveId::decasteljau_point_left, p).points;
                const auto edges = run_catalog(CurveId::decasteljau_edges, p).points;
                r.max_error = std::max({r.max_error, max_sequence_error(right, left), max_sequence_error(right, edges)});
            }
        }
}

void cubic_pseudo_proper(PropertyResult& r, std::mt19937_64& rng) {
    r.tolerance = 1e-12;
    for (int poly = 0; poly < 10; ++poly) {
        CurveParams p;
        p.control = random_polygon(rng, 4, -10, 10);
        for (int cycles = 1; cycles <= 4; ++cycles) {
            p.cycles = cycles;
            const CatalogRun a = run_catalog(CurveId::bezier_cubic_pseudo, p);
            const CatalogRun b = run_catalog(CurveId::bezier_cubic_proper, p);
            if (!same_structure(a.final_word, b.final_word)) {
                r.max_error = INFINITY;
                r.detail = "module structure differs after " + std::to_string(cycles) + " cycles";
                return;
            }
            r.max_error = std::max(r.max_error, max_sequence_error(a.points, b.points));
        }
    }
}

void decasteljau_subdivision(PropertyResult& r, std::mt19937_64& rng) {
    r.tolerance = 1e-10;
    std::uniform_real_distribution<double> param(0.05, 0.95);
    for (int poly = 0; poly < 5; ++poly) {
        CurveParams p;
        p.control = random_polygon(rng, 5, -10, 10);
        p.cycles = 1;
        p.t = poly == 0 ? 0.5 : param(rng);
        const CatalogRun run = run_catalog(CurveId::decasteljau_subdivision, p);
        if (run.points.size() != 9) {
            r.max_error = INFINITY;
            r.detail = "expected 9 vertices, got " + std::to_string(run.points.size());
            return;
        }
        const std::vector<Point> left(run.points.begin(), run.points.begin() + 5);
        const std::vector<Point> right(run.points.begin() + 4, run.points.end());
        for (int k = 0; k <= 20; ++k) {
            const double u = k / 20.0;
            r.max_error = std::max(r.max_error, max_coord_error(bezier_oracle(left, u), bezier_oracle(p.control, p.t * u)));
            r.max_error = std::max(r.max_error, max_coord_error(bezier_oracle(right, u),
                                                                bezier_oracle(p.control, p.t + (1.0 - p.t) * u)));
        }
    }
}

void fixed_degree_shortcut(PropertyResult& r, std::mt19937_64& rng) {
    r.tolerance = 1e-12;
    for (int poly = 0; poly < 10; ++poly) {
        CurveParams p;
        p.control = random_polygon(rng, 3, -10, 10);
        p.t = 0.5;
        p.cycles = 1;
        const auto shortcut = run_catalog(CurveId::bezier_quadratic, p).points;
        const auto generic = run_catalog(CurveId::decasteljau_subdivision, p).points;
        r.max_error = std::max(r.max_error, max_sequence_error(shortcut, generic));
    }
}

void chaikin_lane_riesenfeld(PropertyResult& r, std::mt19937_64& rng) {
    r.tolerance = 0.0;
    for (int poly = 0; poly < 10; ++poly) {
        CurveParams p;
        p.control = dyadic_polygon(rng, 3 + static_cast<std::size_t>(poly % 5));
        p.n = 1;
        for (int cycles = 1; cycles <= 4; ++cycles) {
            p.cycles = cycles;
            const CatalogRun c = run_catalog(CurveId::chaikin_edges, p);
            const CatalogRun lr = run_catalog(CurveId::lane_riesenfeld, p);
            if (!(c.final_word == lr.final_word)) {
                r.max_error = std::max(r.max_error, std::max(max_sequence_error(c.points, lr.points), 1e-300));
                r.detail = "words differ after " + std::to_string(cycles) + " cycles";
            }
        }
    }
}

void bspline_convergence(PropertyResult& r, std::mt19937_64&) {
    const std::vector<Point> square = {{0, 0}, {4, 0}, {4, 4}, {0, 4}};
    const double diag = std::sqrt(32.0);
    r.tolerance = 1e-3;
    std::ostringstream detail;
    for (int degree = 2; degree <= 3; ++degree) {
        double previous = INFINITY;
        for (int cycles = 1; cycles <= 5; ++cycles) {
            CurveParams p;
            p.control = square;
            p.n = degree - 1;
            p.cycles = cycles;
            double worst = 0.0;
            for (const Point& v : run_catalog(CurveId::lane_riesenfeld, p).points)
                worst = std::max(worst, distance_to_bspline(square, degree, v));
            if (!(worst < previous)) detail << "degree " << degree << " not decreasing at cycle " << cycles << "; ";
            previous = worst;
        }
        r.max_error = std::max(r.max_error, previous / diag);
    }
    r.detail = detail.str();
}

void rational_weights(PropertyResult& r, std::mt19937_64&) {
    const std::vector<Point> polygon = {{0, 0}, {2, 4}, {4, 0}};
    r.tolerance = 1e-12;
    double previous = INFINITY;
    for (double w : {0.5, 1.0, 2.5}) {
        CurveParams p;
        p.control = polygon;
        p.t = 0.5;
        p.weights = std::vector<double>{1.0, w, 1.0};
        const Point mid = run_catalog(CurveId::decasteljau_edges, p).points.at(0);
        const std::vector<WeightedPoint> wp = {{polygon[0], 1.0}, {polygon[1], w}, {polygon[2], 1.0}};
        r.max_error = std::max(r.max_error, max_coord_error(mid, rational_bezier_oracle(wp, 0.5)));
        const double d = distance(mid, polygon[1]);
        if (!(d < previous)) r.detail = "distance to the interior point does not decrease at weight " + format(ParamValue(w));
        previous = d;
    }
    for (int k = 0; k <= 100; ++k) {
        CurveParams p;
        p.control = polygon;
        p.t = k / 100.0;
        const Point plain = run_catalog(CurveId::decasteljau_edges, p).points.at(0);
        p.weights = std::vector<double>{1.0, 1.0, 1.0};
        const Point unit = run_catalog(CurveId::decasteljau_edges, p).points.at(0);
        r.max_error = std::max(r.max_error, max_coord_error(plain, unit));
    }
}

void corner_cutting(PropertyResult& r, std::mt19937_64& rng) {
    r.tolerance = 1e-12;
    for (int poly = 0; poly < 10; ++poly) {
        CurveParams p;
        p.control = random_polygon(rng, 3 + static_cast<std::size_t>(poly % 6), -10, 10);
        std::vector<Point> previous = p.control;
        for (int cycles = 1; cycles <= 4; ++cycles) {
            p.cycles = cycles;
            const auto current = run_catalog(CurveId::chaikin, p).points;
            const auto hull = convex_hull(previous);
            for (const Point& v : current)
                if (!inside_convex_hull(hull, v, r.tolerance)) {
                    r.max_error = INFINITY;
                    r.detail = "vertex escapes the hull at cycle " + std::to_string(cycles);
                }
            previous = current;
        }
    }
}

Check catalog_files(const std::string& dir) {
    return [dir](PropertyResult& r, std::mt19937_64& rng) {
        r.tolerance = 0.0;
        std::ostringstream problems;
        for (CurveId id : kAllCurves) {
            const std::string path = (std::filesystem::path(dir) / catalog_file_name(id)).string();
            try {
                const LSystemDefinition parsed = parse_file(path);
                if (!parsed.warnings.empty()) problems << catalog_file_name(id) << ": " << parsed.warnings.front() << "; ";
                if (!(parse(format_definition(parsed)) == parsed))
                    problems << catalog_file_name(id) << ": format/parse round trip differs; ";
                for (int trial = 0; trial < 3; ++trial) {
                    CurveParams p;
                    if (trial > 0) {
                        const CatalogInfo& ci = info(id);
                        std::size_t count = ci.max_points ? ci.max_points : ci.min_points + 2 + static_cast<std::size_t>(trial);
                        p.control = random_polygon(rng, count, -10, 10);
                        p.t = 0.3 * trial;
                        p.n = trial;
                        p.cycles = trial + 1;
                    }
                    const CatalogRun file = run_definition(instantiate(parsed, id, p));
                    const CatalogRun builtin = run_definition(builtin_definition(id, p));
                    if (!(file.final_word == builtin.final_word) || !(file.interpreted == builtin.interpreted)) {
                        problems << catalog_file_name(id) << ": derivation differs from the built-in; ";
                        break;
                    }
                }
            } catch (const Error& e) {
                problems << catalog_file_name(id) << ": " << e.what() << "; ";
            }
        }
        r.detail = problems.str();
        if (!r.detail.empty()) r.max_error = INFINITY;
    };
}

struct Property {
    std::string name;
    Check check;
};

std::vector<Property> properties(const VerifyOptions& opts) {
    std::vector<Property> all = {
        {"decasteljau_bernstein", decasteljau_bernstein},
        {"decasteljau_variants", decasteljau_variants},
        {"decasteljau_subdivision", decasteljau_subdivision},
        {"decasteljau_fixed_degree", fixed_degree_shortcut},
        {"cubic_pseudo_proper", cubic_pseudo_proper},
        {"chaikin_lane_riesenfeld", chaikin_lane_riesenfeld},
        {"bspline_convergence", bspline_convergence},
        {"rational_weights", rational_weights},
        {"corner_cutting", corner_cutting},
    };
    if (!opts.catalog_dir.empty()) all.push_back({"catalog_files", catalog_files(opts.catalog_dir)});
    return all;
}

}  // namespace

std::vector<std::string> property_names() {
    VerifyOptions opts;
    opts.catalog_dir = ".";
    std::vector<std::string> names;
    for (const Property& p : properties(opts)) names.push_back(p.name);
    return names;
}

std::vector<PropertyResult> run_verification(const VerifyOptions& opts) {
    std::vector<PropertyResult> results;
    for (const Property& prop : properties(opts)) {
        if (!opts.only.empty() && prop.name.find(opts.only) == std::string::npos) continue;
        std::mt19937_64 rng(opts.seed);
        PropertyResult r;
        r.name = prop.name;
        try {
            prop.check(r, rng);
            r.passed = r.detail.empty() && r.max_error <= r.tolerance;
        } catch (const Error& e) {
            r.passed = false;
            r.max_error = INFINITY;
            r.detail = e.what();
        }
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace lsys
