// Command-line front end: list | derive | render | verify.
// Exit codes: 0 success, 1 runtime or verification failure, 2 usage error.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lsys/curves.hpp"
#include "lsys/dsl.hpp"
#include "lsys/error.hpp"
#include "lsys/svg.hpp"
#include "lsys/verify.hpp"

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string source;
    std::optional<int> steps;
    std::optional<int> cycles;
    std::optional<int> n;
    std::optional<double> t;
    double grid = 0.01;
    std::vector<double> weights;
    std::string points;
    std::string format = "string";
    std::string out;
    bool intermediate = false;
};

std::vector<lsys::Point> parse_points(const std::string& text) {
    // "x,y;x,y;..." or "x,y x,y ...", with an optional third coordinate per point
    std::vector<lsys::Point> pts;
    std::string spaced = text;
    std::replace(spaced.begin(), spaced.end(), ';', ' ');
    std::stringstream all(spaced);
    std::string item;
    while (all >> item) {
        std::vector<double> c;
        std::stringstream one(item);
        std::string num;
        while (std::getline(one, num, ',')) {
            try {
                std::size_t used = 0;
                c.push_back(std::stod(num, &used));
                if (num.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(num);
            } catch (const std::logic_error&) {
                throw UsageError("--points: cannot read '" + item + "'");
            }
        }
        if (c.size() != 2 && c.size() != 3) throw UsageError("--points: '" + item + "' needs 2 or 3 coordinates");
        pts.push_back(lsys::Point(std::span<const double>(c)));
    }
    return pts;
}

// A loaded source: a catalog entry with its parameters or a parsed file.
struct Source {
    std::optional<lsys::CurveId> id;
    lsys::CurveParams params;
    lsys::LSystemDefinition def;
};

Source load(const RunConfig& cfg) {
    Source src;
    src.id = lsys::curve_from_string(cfg.source);
    if (src.id) {
        if (!cfg.points.empty()) src.params.control = parse_points(cfg.points);
        if (cfg.t) src.params.t = *cfg.t;
        if (cfg.n) src.params.n = *cfg.n;
        if (cfg.cycles) src.params.cycles = *cfg.cycles;
        if (!cfg.weights.empty()) src.params.weights = cfg.weights;
        src.def = lsys::builtin_definition(*src.id, src.params);
        return src;
    }
    if (!std::filesystem::exists(cfg.source))
        throw UsageError("'" + cfg.source + "' is neither a catalog entry nor an existing file");
    if (!cfg.points.empty() || !cfg.weights.empty())
        throw UsageError("--points and --weights apply to catalog entries only");
    src.def = lsys::parse_file(cfg.source);
    auto set_constant = [&](const char* name, double value) {
        auto it = src.def.constants.find(name);
        if (it == src.def.constants.end())
            throw lsys::DefinitionError(std::string("definition has no constant '") + name + "' to override");
        it->second = value;
    };
    if (cfg.t) set_constant("t", *cfg.t);
    if (cfg.n) set_constant("n", *cfg.n);
    if (cfg.cycles) set_constant("cycles", *cfg.cycles);
    return src;
}

lsys::CatalogRun run(const Source& src, const RunConfig& cfg, bool trace) {
    lsys::CatalogRun r;
    if (src.id && !cfg.steps) {
        r = lsys::run_catalog(*src.id, src.params, trace);
    } else {
        lsys::ExecuteOptions opts;
        opts.steps = cfg.steps;
        opts.trace = trace;
        lsys::Execution ex = lsys::execute(src.def, opts);
        r.final_word = std::move(ex.derivation.result);
        r.interpreted = std::move(ex.interpreted);
        r.trace = std::move(ex.derivation.trace);
        r.polyline = lsys::extract_polyline(r.interpreted);
        r.points = lsys::points_of(r.final_word);
        if (src.params.weights)
            for (lsys::Point& p : r.points) p = lsys::project_to_plane(p);
        r.warnings = src.def.warnings;
    }
    return r;
}

std::vector<lsys::Point> planar(std::vector<lsys::Point> pts) {
    for (lsys::Point& p : pts)
        if (p.dim() == 3) p = lsys::project_to_plane(p);
    return pts;
}

std::string point_text(const lsys::Point& p) {
    std::string s;
    for (int k = 0; k < p.dim(); ++k) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12g", p[k]);
        if (k) s += ' ';
        s += buf;
    }
    return s;
}

std::string render_svg(const Source& src, const RunConfig& cfg) {
    lsys::SvgDocument doc;
    const std::vector<lsys::Point> control =
        src.id ? (src.params.control.empty() ? lsys::default_control_polygon(*src.id) : src.params.control)
               : planar(lsys::points_of(src.def.axiom));
    const bool closed = src.def.topology == lsys::Topology::circular;
    doc.add_polyline(control, closed, lsys::SvgRole::control);
    doc.add_points(control, lsys::SvgRole::control);

    if (src.id && lsys::info(*src.id).sweeps_t && !cfg.steps) {
        const std::vector<lsys::Point> locus = lsys::sweep(*src.id, src.params, cfg.grid);
        doc.add_polyline(locus, false, lsys::SvgRole::result);
        doc.add_points(locus, lsys::SvgRole::result);
        return doc.str();
    }

    const lsys::CatalogRun r = run(src, cfg, cfg.intermediate);
    if (cfg.intermediate)
        for (std::size_t i = 1; i + 1 < r.trace.size(); ++i)
            doc.add_polyline(planar(lsys::points_of(r.trace[i].word)), closed, lsys::SvgRole::intermediate);
    doc.add_segments(r.polyline.segments, lsys::SvgRole::result);

    // Vertices of the stateful subdivision system are colored by their state.
    const bool stateful = src.id == lsys::CurveId::decasteljau_subdivision;
    std::vector<lsys::Point> by_state[3];
    for (const lsys::Module& m : r.final_word.modules) {
        if (m.params.empty() || !lsys::is_point(m.params[0])) continue;
        lsys::Point p = std::get<lsys::Point>(m.params[0]);
        if (p.dim() == 3) p = lsys::project_to_plane(p);
        int s = 1;
        if (stateful && m.arity() == 2) s = static_cast<int>(lsys::vertex_state(static_cast<int>(std::get<double>(m.params[1]))));
        by_state[s].push_back(p);
    }
    if (stateful) {
        doc.add_points(by_state[0], lsys::SvgRole::state_other);
        doc.add_points(by_state[1], lsys::SvgRole::state_interior);
        doc.add_points(by_state[2], lsys::SvgRole::state_endpoint);
    } else {
        doc.add_points(by_state[1], lsys::SvgRole::result);
    }
    return doc.str();
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw lsys::Error("cannot open '" + out + "' for writing");
    f << text;
    if (!f.flush()) throw lsys::Error("failed writing '" + out + "'");
}

std::string derive_text(const Source& src, const RunConfig& cfg) {
    if (cfg.format == "svg") return render_svg(src, cfg);
    const bool trace = cfg.format == "trace";
    const lsys::CatalogRun r = run(src, cfg, trace);
    for (const std::string& w : r.warnings) std::cerr << "warning: " << w << "\n";
    std::string text;
    if (cfg.format == "string") {
        text = lsys::format(r.final_word) + "\n";
    } else if (trace) {
        for (const lsys::TraceEntry& e : r.trace)
            text += std::to_string(e.step) + " " + (e.table.empty() ? std::string("axiom") : e.table) + " " +
                    lsys::format(e.word) + "\n";
    } else {
        // polyline: one segment per line, or the points when nothing was drawn
        if (r.polyline.segments.empty())
            for (const lsys::Point& p : planar(r.points)) text += point_text(p) + "\n";
        for (const auto& [a, b] : r.polyline.segments)
            text += point_text(planar({a})[0]) + "  " + point_text(planar({b})[0]) + "\n";
    }
    return text;
}

int cmd_list(bool as_json) {
    if (as_json) {
        json entries = json::array();
        for (lsys::CurveId id : lsys::kAllCurves) {
            const lsys::CatalogInfo& i = lsys::info(id);
            entries.push_back({{"id", lsys::to_string(id)},
                               {"summary", i.summary},
                               {"parameters", i.parameters},
                               {"min_points", i.min_points},
                               {"max_points", i.max_points},
                               {"closed", i.closed},
                               {"sweeps_t", i.sweeps_t}});
        }
        std::cout << entries.dump(2) << "\n";
        return 0;
    }
    for (lsys::CurveId id : lsys::kAllCurves) {
        const lsys::CatalogInfo& i = lsys::info(id);
        std::printf("%-24s %-16s %s\n", std::string(lsys::to_string(id)).c_str(), std::string(i.parameters).c_str(),
                    std::string(i.summary).c_str());
    }
    return 0;
}

int cmd_verify(const std::string& only, const std::string& catalog_dir, std::uint64_t seed, bool as_json) {
    lsys::VerifyOptions opts;
    opts.only = only;
    opts.catalog_dir = catalog_dir;
    opts.seed = seed;
    const std::vector<lsys::PropertyResult> results = lsys::run_verification(opts);
    if (results.empty()) throw UsageError("--only '" + only + "' selects no property");
    bool ok = true;
    json report = json::array();
    for (const lsys::PropertyResult& r : results) {
        ok = ok && r.passed;
        if (as_json) {
            report.push_back({{"name", r.name},
                              {"passed", r.passed},
                              {"max_error", r.max_error},
                              {"tolerance", r.tolerance},
                              {"detail", r.detail}});
            continue;
        }
        std::printf("%s %-26s max_error=%.3e tolerance=%.1e%s%s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                    r.max_error, r.tolerance, r.detail.empty() ? "" : "  ", r.detail.c_str());
    }
    if (as_json) std::cout << report.dump(2) << "\n";
    return ok ? 0 : 1;
}

void add_run_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("source", cfg.source, "catalog entry or .lsys file")->required();
    sub->add_option("--steps", cfg.steps, "run this many derivation steps instead of the schedule")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--cycles", cfg.cycles, "schedule repetitions")->check(CLI::NonNegativeNumber);
    sub->add_option("--n", cfg.n, "Lane-Riesenfeld averaging steps")->check(CLI::NonNegativeNumber);
    sub->add_option("--t", cfg.t, "de Casteljau parameter");
    sub->add_option("--weights", cfg.weights, "control point weights w1,w2,...")->delimiter(',');
    sub->add_option("--points", cfg.points, "control polygon as x,y;x,y;... or x,y x,y ...");
    sub->add_option("--out", cfg.out, "output file (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Parametric L-systems for subdivision curves"};
    app.require_subcommand(1);

    bool list_json = false;
    auto* list = app.add_subcommand("list", "list catalog entries");
    list->add_flag("--json", list_json, "machine-readable output");

    RunConfig derive_cfg;
    auto* derive = app.add_subcommand("derive", "run a derivation and print the result");
    add_run_options(derive, derive_cfg);
    derive->add_option("--format", derive_cfg.format, "output format")
        ->check(CLI::IsMember({"string", "trace", "polyline", "svg"}));
    derive->add_option("--grid", derive_cfg.grid, "t spacing for svg sweeps")->check(CLI::Range(1e-6, 1.0));

    RunConfig render_cfg;
    render_cfg.format = "svg";
    auto* render = app.add_subcommand("render", "write an SVG plot");
    add_run_options(render, render_cfg);
    render->add_option("--grid", render_cfg.grid, "t spacing for point sweeps")->check(CLI::Range(1e-6, 1.0));
    render->add_flag("--intermediate", render_cfg.intermediate, "also draw the polygons of earlier steps");

    std::string only;
    std::string catalog_dir = LSYS_CATALOG_DIR;
    std::uint64_t seed = 20080601;
    bool verify_json = false;
    auto* verify = app.add_subcommand("verify", "check the catalog against closed-form oracles");
    verify->add_option("--only", only, "run properties whose name contains this text");
    verify->add_option("--catalog-dir", catalog_dir, "directory of .lsys twins (empty to skip)");
    verify->add_option("--seed", seed, "seed for random control polygons");
    verify->add_flag("--json", verify_json, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*list) return cmd_list(list_json);
        if (*verify) return cmd_verify(only, catalog_dir, seed, verify_json);
        const RunConfig& cfg = *derive ? derive_cfg : render_cfg;
        const Source src = load(cfg);
        emit(*derive ? derive_text(src, cfg) : render_svg(src, cfg), cfg.out);
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const lsys::ParseError& e) {
        std::cerr << (*derive ? derive_cfg.source : render_cfg.source) << ":" << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
