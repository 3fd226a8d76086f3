#include <doctest.h>

#include <vector>

#include "lsys/dsl.hpp"
#include "lsys/error.hpp"
#include "lsys/rewriting.hpp"

using namespace lsys;

namespace {

PatternModule pm(std::string sym, std::vector<std::string> vars = {}) { return {std::move(sym), std::move(vars)}; }
TemplateModule tmod(std::string sym, std::vector<Expr> params = {}) { return {std::move(sym), std::move(params)}; }

Table eq2_table() {
    Production p1{"p1", {}, {pm("A", {"x"})}, {}, binary(ExprKind::less_equal, var("x"), num(2)),
                  {tmod("A", {num(2) * var("x") + num(1)})}};
    Production p2{"p2", {}, {pm("A", {"x"})}, {}, binary(ExprKind::greater, var("x"), num(2)),
                  {tmod("B", {num(2) * var("x") + num(1)})}};
    Production p3{"p3", {pm("A", {"w"})}, {pm("B", {"x", "y"})}, {pm("A", {"z"})}, {},
                  {tmod("A", {var("w") + var("x")}), tmod("A", {var("y") + var("z")})}};
    return {"main", {p1, p2, p3}};
}

Production edge_rule() {
    return {"h", {pm("P", {"vl"})}, {pm("E")}, {pm("P", {"vr"})}, {}, {tmod("L", {var("vl"), var("vr")})}};
}

Production chaikin_rule() {
    return {"p",
            {pm("P", {"vl"})},
            {pm("P", {"v"})},
            {pm("P", {"vr"})},
            {},
            {tmod("P", {num(1) / num(4) * var("vl") + num(3) / num(4) * var("v")}),
             tmod("P", {num(3) / num(4) * var("v") + num(1) / num(4) * var("vr")})}};
}

ModuleString square() { return parse_word("P((0,0)) P((4,0)) P((4,4)) P((0,4))", Topology::circular); }

ModuleString rotate(const ModuleString& s, std::size_t r) {
    ModuleString out = s;
    for (std::size_t i = 0; i < s.size(); ++i) out.modules[i] = s.modules[(i + r) % s.size()];
    return out;
}

}  // namespace

TEST_CASE("match binds context and predecessor variables") {
    const ModuleString s = parse_word("A(1.5) B(2.0,3.0) A(4.5) C(1)");
    const auto b = match_at(s, 1, eq2_table().productions[2]);
    REQUIRE(b);
    CHECK(std::get<double>(*b->find("w")) == 1.5);
    CHECK(std::get<double>(*b->find("x")) == 2.0);
    CHECK(std::get<double>(*b->find("y")) == 3.0);
    CHECK(std::get<double>(*b->find("z")) == 4.5);
    CHECK(b->start == 1);
    CHECK(b->length == 1);
}

TEST_CASE("linear boundary truncates a context") {
    const ModuleString s = parse_word("P((0,0)) P((1,1))");
    const Production right{"p", {}, {pm("P", {"v"})}, {pm("P", {"vr"})}, {}, {}};
    CHECK(match_at(s, 0, right));
    CHECK_FALSE(match_at(s, 1, right));
    const Production left{"p", {pm("P", {"vl"})}, {pm("P", {"v"})}, {}, {}, {}};
    CHECK_FALSE(match_at(s, 0, left));
    CHECK(match_at(s, 1, left));
}

TEST_CASE("circular words wrap contexts") {
    const ModuleString s = parse_word("P((1,1)) E P((2,2)) E", Topology::circular);
    const auto b = match_at(s, 3, edge_rule());
    REQUIRE(b);
    CHECK(std::get<Point>(*b->find("vl")) == Point(2, 2));
    CHECK(std::get<Point>(*b->find("vr")) == Point(1, 1));
}

TEST_CASE("arity mismatch is a silent no-match") {
    const ModuleString s = parse_word("A(1,2) A(1)");
    const Production p{"p", {}, {pm("A", {"x"})}, {}, {}, {tmod("Z")}};
    CHECK_FALSE(match_at(s, 0, p));
    CHECK(match_at(s, 1, p));
}

TEST_CASE("a point-valued condition is a type error") {
    const ModuleString s = parse_word("P((1,1))");
    const Production p{"p", {}, {pm("P", {"v"})}, {}, var("v"), {}};
    CHECK_THROWS_AS(match_at(s, 0, p), TypeError);
}

TEST_CASE("one derivation step of the conditional example") {
    const ModuleString s = parse_word("A(1.5) B(2.0,3.0) A(4.5) C(1)");
    const ModuleString r = derive_step(s, eq2_table());
    CHECK(format(r) == "A(4) A(3.5) A(7.5) B(10) C(1)");
}

TEST_CASE("empty table is the identity") {
    const ModuleString s = parse_word("A(1.5) B(2,3) P((1,2)) E", Topology::circular);
    CHECK(derive_step(s, Table{"none", {}}) == s);
    // so is a table none of whose rules match
    const Table other{"other", {{"q", {}, {pm("Z")}, {}, {}, {}}}};
    CHECK(derive_step(s, other) == s);
}

TEST_CASE("corner cutting on the square") {
    const ModuleString r = derive_step(square(), Table{"main", {chaikin_rule()}});
    CHECK(r.topology == Topology::circular);
    // the expected cut points as a cyclic sequence
    const ModuleString want =
        parse_word("P((1,0)) P((3,0)) P((4,1)) P((4,3)) P((3,4)) P((1,4)) P((0,3)) P((0,1))", Topology::circular);
    REQUIRE(r.size() == want.size());
    bool rotated = false;
    for (std::size_t k = 0; k < want.size(); ++k) rotated = rotated || rotate(want, k) == r;
    CHECK(rotated);
    // vertex v0 contributes its two cuts first
    CHECK(r[0] == want[7]);
}

TEST_CASE("contexts read the predecessor word") {
    // p turns P into Q while r looks for a P neighbour; r must still see P.
    const Table t{"t",
                  {{"p", {}, {pm("P")}, {}, {}, {tmod("Q")}},
                   {"r", {pm("P")}, {pm("X")}, {}, {}, {tmod("Y")}}}};
    CHECK(format(derive_step(parse_word("P X"), t)) == "Q Y");
    // Erasure does not disturb the neighbours' contexts either.
    const Table e{"e",
                  {{"p", {}, {pm("P")}, {}, {}, {}},
                   {"r", {pm("P")}, {pm("X")}, {pm("P")}, {}, {tmod("Y")}}}};
    CHECK(format(derive_step(parse_word("P X P"), e)) == "Y");
}

TEST_CASE("first matching production wins") {
    const Table t{"t", {{"a", {}, {pm("A")}, {}, {}, {tmod("B")}}, {"b", {}, {pm("A")}, {}, {}, {tmod("C")}}}};
    CHECK(format(derive_step(parse_word("A A"), t)) == "B B");
}

TEST_CASE("pseudo-production consumes its whole span") {
    const Table t{"t", {{"p", {}, {pm("A"), pm("A")}, {}, {}, {tmod("X")}}}};
    CHECK(format(derive_step(parse_word("A A A"), t)) == "X A");
    CHECK(format(derive_step(parse_word("A A A A"), t)) == "X X");
    CHECK(format(derive_step(parse_word("B A A"), t)) == "B X");
}

TEST_CASE("pseudo-production on a circular word does not wrap") {
    const Table t{"t", {{"p", {}, {pm("B"), pm("A")}, {}, {}, {tmod("X")}}}};
    CHECK(format(derive_step(parse_word("A C B", Topology::circular), t)) == "A C B");
}

TEST_CASE("cubic pseudo-production produces the seven-module word") {
    const LSystemDefinition def = parse_file(LSYS_CATALOG_DIR "/bezier_cubic_pseudo.lsys");
    const ModuleString r = derive_step(def.axiom, def.tables.front(), def.context());
    REQUIRE(r.size() == 13);
    CHECK(format(r) == "P((0,0)) E Q((0.5,1.5)) E Q((1.5,2.25)) E P((2.5,2.25)) E Q((3.5,2.25)) E Q((4.5,1.5)) E "
                       "P((5,0))");
}

TEST_CASE("rotating a circular word commutes with derivation") {
    const Table t{"main", {chaikin_rule()}};
    const ModuleString s = parse_word("P((0,0)) P((5,1)) P((6,4)) P((2,7)) P((-1,3))", Topology::circular);
    const ModuleString base = derive_step(s, t);
    for (std::size_t r = 0; r < s.size(); ++r) CHECK(derive_step(rotate(s, r), t) == rotate(base, 2 * r));
}

TEST_CASE("schedules and traces") {
    const Table p{"p", {{"a", {}, {pm("A")}, {}, {}, {tmod("A"), tmod("B")}}}};
    const Table q{"q", {{"b", {}, {pm("B")}, {}, {}, {tmod("C")}}}};
    const std::vector<Table> tables{p, q};
    const Schedule sched{{{"p", 1}, {"q", 2}}, 2};
    CHECK(sched.steps_per_cycle() == 3);
    const Derivation d = derive(parse_word("A"), sched, tables, {}, true);
    CHECK(format(d.result) == "A C C");
    REQUIRE(d.trace.size() == 7);
    CHECK(d.trace[0].table.empty());
    CHECK(d.trace[1].table == "p");
    CHECK(d.trace[3].table == "q");
    CHECK(d.trace[6].step == 6);
    CHECK(derive(parse_word("A"), sched, tables).trace.empty());

    const Derivation four = derive_steps(parse_word("A"), sched, tables, 4);
    CHECK(format(four.result) == "A B C");

    const Schedule zero{{{"p", 1}}, 0};
    CHECK(derive(parse_word("A"), zero, tables).result == parse_word("A"));

    const Schedule bad{{{"nope", 1}}, 1};
    CHECK_THROWS_AS(derive(parse_word("A"), bad, tables), DefinitionError);
}

TEST_CASE("interpretation passes apply in order") {
    const Table hE{"h", {edge_rule()}};
    CHECK(format(interpret(parse_word("P((0,0)) E P((1,0))"), std::vector<Table>{hE})) ==
          "P((0,0)) L((0,0),(1,0)) P((1,0))");

    const Table hP{"proj", {{"hP", {}, {pm("P", {"v"})}, {}, {}, {tmod("P'", {call("project", {var("v")})})}}}};
    CHECK(format(interpret(parse_word("P((2,4,2))"), std::vector<Table>{hP})) == "P'((1,2))");

    const Table hE2{"h2",
                    {{"h", {pm("P'", {"vl"})}, {pm("E")}, {pm("P'", {"vr"})}, {}, {tmod("L", {var("vl"), var("vr")})}}}};
    CHECK(format(interpret(parse_word("P((0,0,1)) E P((2,4,2))"), std::vector<Table>{hP, hE2})) ==
          "P'((0,0)) L((0,0),(1,2)) P'((1,2))");
}

TEST_CASE("validation") {
    CHECK_THROWS_AS(validate(Production{"p", {}, {}, {}, {}, {}}), DefinitionError);
    CHECK_THROWS_AS(validate(Production{"p", {pm("A", {"x"})}, {pm("B", {"x"})}, {}, {}, {}}), DefinitionError);
    const Production ok{"p", {}, {pm("A")}, {}, {}, {}};
    CHECK_NOTHROW(validate(ok));
    CHECK_THROWS_AS(validate(Table{"t", {ok, ok}}), DefinitionError);
}

TEST_CASE("runtime affine violation names the label") {
    const Table t{"t", {{"bad", {}, {pm("P", {"v"})}, {}, {}, {tmod("P", {var("v") + var("v")})}}}};
    try {
        derive_step(parse_word("P((1,1))"), t);
        FAIL("expected an affine error");
    } catch (const AffineError& e) {
        CHECK(std::string(e.what()).find("'bad'") != std::string::npos);
    }
}

TEST_CASE("derivation is deterministic") {
    const Table t{"main", {chaikin_rule()}};
    ModuleString a = square(), b = square();
    for (int i = 0; i < 5; ++i) {
        a = derive_step(a, t);
        b = derive_step(b, t);
    }
    CHECK(format(a) == format(b));
}
