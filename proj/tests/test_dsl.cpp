#include <doctest.h>

#include <string>

#include "lsys/curves.hpp"
#include "lsys/dsl.hpp"
#include "lsys/error.hpp"

using namespace lsys;

namespace {

const char* kEq2 = R"(
lsystem eq2 {
  axiom: A(1.5) B(2.0, 3.0) A(4.5) C(1);
  table main {
    p1: A(x) : x <= 2 -> A(2*x + 1);
    p2: A(x) : x > 2 -> B(2*x + 1);
    p3: A(w) < B(x, y) > A(z) -> A(w + x) A(y + z);
  }
  schedule: main;
}
)";

ParseError parse_error(const std::string& text) {
    try {
        parse(text);
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("expected a parse error");
    return ParseError(0, 0, "", "");
}

std::string wrap(const std::string& body, const std::string& header = "") {
    return "lsystem t {\n" + header + "  axiom: P((0,0)) E P((1,0));\n" + body + "\n}\n";
}

}  // namespace

TEST_CASE("the conditional example parses") {
    const LSystemDefinition def = parse(kEq2);
    CHECK(def.name == "eq2");
    CHECK(def.topology == Topology::linear);
    REQUIRE(def.tables.size() == 1);
    const auto& ps = def.tables[0].productions;
    REQUIRE(ps.size() == 3);
    CHECK(ps[0].label == "p1");
    CHECK(to_string(ps[0].condition) == "x <= 2");
    CHECK(to_string(ps[1].condition) == "x > 2");
    CHECK(ps[2].left_context.size() == 1);
    CHECK(ps[2].right_context.size() == 1);
    CHECK_FALSE(ps[2].condition.valid());
    CHECK(def.warnings.empty());
    CHECK(format(execute(def, {1, false}).derivation.result) == "A(4) A(3.5) A(7.5) B(10) C(1)");
}

TEST_CASE("corner cutting parses as one circular table") {
    const LSystemDefinition def = parse_file(LSYS_CATALOG_DIR "/chaikin.lsys");
    CHECK(def.topology == Topology::circular);
    REQUIRE(def.tables.size() == 2);
    CHECK(def.tables[0].productions.size() == 1);
    CHECK(to_string(def.tables[0].productions[0].successor[0].params[0]) == "1/4*vl + 3/4*v");
}

TEST_CASE("eps is erasure") {
    const LSystemDefinition def = parse_file(LSYS_CATALOG_DIR "/decasteljau_point.lsys");
    CHECK(def.tables[0].productions[1].successor.empty());
}

TEST_CASE("format") {
    CHECK(format(parse_word("A(4) A(3.5)")) == "A(4) A(3.5)");
    CHECK(format(ModuleString({Module("P", {Point(1, 0)}), Module("E")}, Topology::linear)) == "P((1,0)) E");
    CHECK(format(ParamValue(0.1)) == "0.1");
    CHECK(format(ParamValue(1e-20)) == "1e-20");
    CHECK(format(ParamValue(Point(1, 2, 3))) == "(1,2,3)");
}

TEST_CASE("format and parse_word round trip") {
    const ModuleString s = parse_word("P((0.1,-2.5)) E Q((1e-7,3)) A(0.3333333333333333) C");
    CHECK(parse_word(format(s)) == s);
}

TEST_CASE("syntax errors carry a location") {
    const ParseError e = parse_error("lsystem t {\n  axiom: A;\n  table main {\n    p: A -> B\n  }\n}\n");
    CHECK(e.line() == 5);
    CHECK(e.column() == 3);
    CHECK(e.token() == "}");
    CHECK(std::string(e.what()).rfind("5:3:", 0) == 0);
}

TEST_CASE("unbound variables") {
    const ParseError e = parse_error(wrap("  table m {\n    p: P(v) -> P(w);\n  }\n  schedule: m;"));
    CHECK(e.line() == 4);
    CHECK(e.token() == "w");
}

TEST_CASE("unknown tables") {
    CHECK_THROWS_AS(parse(wrap("  table m { p: P(v) -> P(v); }\n  schedule: nope;")), ParseError);
    CHECK_THROWS_AS(parse(wrap("  table m { p: P(v) -> P(v); }\n  interpretation: nope;\n  schedule: m;")),
                    ParseError);
}

TEST_CASE("arity-inconsistent patterns") {
    const ParseError e = parse_error(wrap("  table m { p: P(v, s) -> E; }\n  schedule: m;"));
    CHECK(e.token() == "P");
}

TEST_CASE("other definition errors") {
    CHECK_THROWS_AS(parse(wrap("  table m { p: P(v) -> P(v); p: E -> E; }\n  schedule: m;")), ParseError);
    CHECK_THROWS_AS(parse(wrap("  table m { p: P(v) E(v) -> P(v); }\n  schedule: m;")), ParseError);
    CHECK_THROWS_AS(parse(wrap("  table m { p: P(v) -> P(g(v)); }\n  schedule: m;")), ParseError);
    CHECK_THROWS_AS(parse(wrap("  table m { p: P(v) -> P(project(v, v)); }\n  schedule: m;")), ParseError);
    CHECK_THROWS_AS(parse(wrap("  table m { p: P(v) -> P(v); }\n  table m { q: E -> E; }\n  schedule: m;")),
                    ParseError);
    CHECK_THROWS_AS(parse(wrap("  table m { p: P(v) -> P(v); }\n  schedule: m * 1.5;")), ParseError);
    CHECK_THROWS_AS(parse(wrap("  table m { p: P(v) -> P(v); }\n  schedule: m * -1;")), ParseError);
    CHECK_THROWS_AS(parse("lsystem t { axiom: ; table m { } schedule: m; }"), ParseError);
    CHECK_THROWS_AS(parse("lsystem t { axiom: P((0,0)) P((1,1,1)); table m { } schedule: m; }"), ParseError);
    CHECK_THROWS_AS(parse("lsystem t { const a = 1; const a = 2; axiom: A; table m { } schedule: m; }"),
                    ParseError);
}

TEST_CASE("unproven affine sums warn and are checked when run") {
    const LSystemDefinition def =
        parse(wrap("  table m { p: P(v) > E P(w) -> P(a*v + a*a*w); }\n  schedule: m;", "  const a = 0.5;\n"));
    REQUIRE(def.warnings.size() == 1);
    CHECK(def.warnings[0].find("run time") != std::string::npos);
    CHECK_THROWS_AS(execute(def), AffineError);
}

TEST_CASE("wrong affine sums and point products warn") {
    const LSystemDefinition a = parse(wrap("  table m { p: P(v) > E P(w) -> P(1/2*v + 1/4*w); }\n  schedule: m;"));
    REQUIRE(a.warnings.size() == 1);
    CHECK(a.warnings[0].find("sum to 0.75") != std::string::npos);
    CHECK_THROWS_AS(execute(a), AffineError);
    const LSystemDefinition b = parse(wrap("  table m { p: P(v) -> P(v*v); }\n  schedule: m;"));
    REQUIRE_FALSE(b.warnings.empty());
    CHECK(b.warnings[0].find("multiplies two points") != std::string::npos);
    CHECK_THROWS_AS(execute(b), TypeError);
}

TEST_CASE("symbolic coefficients that cancel are accepted") {
    const LSystemDefinition def =
        parse(wrap("  table m { p: P(v) > E P(w) -> P((1 - t)*v + t*w); }\n  schedule: m;", "  const t = 0.3;\n"));
    CHECK(def.warnings.empty());
}

TEST_CASE("patterns that never occur warn") {
    const LSystemDefinition def = parse(wrap("  table m { p: Z -> E; q: P(v) -> P(v); }\n  schedule: m;"));
    REQUIRE(def.warnings.size() == 1);
    CHECK(def.warnings[0].find("Z") != std::string::npos);
}

TEST_CASE("comments, primes and defaults") {
    const LSystemDefinition def = parse(R"(
// leading comment
lsystem x {
  circular;
  const k = 2;          // trailing comment
  fn g(a, b) = max(a, b) / k;
  axiom: A(1) A(3);
  table m { p: A(x) -> A'(g(x, 2)); }
  schedule: m * k repeat 1;
}
)");
    CHECK(def.topology == Topology::circular);
    CHECK(def.resolved_schedule().items[0].count == 2);
    CHECK(format(execute(def).derivation.result) == "A'(1) A'(1.5)");
}

TEST_CASE("definitions survive a format round trip") {
    for (CurveId id : kAllCurves) {
        CAPTURE(to_string(id));
        const LSystemDefinition def = parse_file(std::string(LSYS_CATALOG_DIR "/") + catalog_file_name(id));
        CHECK(def.warnings.empty());
        CHECK(parse(format_definition(def)) == def);
        const LSystemDefinition built = builtin_definition(id, {});
        CHECK(parse(format_definition(built)) == built);
    }
    const LSystemDefinition eq2 = parse(kEq2);
    CHECK(parse(format_definition(eq2)) == eq2);
}

TEST_CASE("productions keep source order") {
    const LSystemDefinition def = parse(wrap("  table m { b: P(v) -> A; a: P(v) -> B; }\n  schedule: m;"));
    CHECK(def.tables[0].productions[0].label == "b");
    CHECK(format(execute(def).derivation.result) == "A E A");
}
