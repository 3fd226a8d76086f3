#include <doctest.h>

#include <string>

#include "lsys/error.hpp"
#include "lsys/expr.hpp"

using namespace lsys;

namespace {

Binding bind(std::initializer_list<std::pair<const char*, ParamValue>> vals) {
    Binding b;
    for (const auto& [k, v] : vals) b.bind(k, v);
    return b;
}

}  // namespace

TEST_CASE("scalar arithmetic") {
    const Binding b = bind({{"x", 1.5}});
    CHECK(evaluate_scalar(num(2) * var("x") + num(1), b, {}) == 4.0);
    CHECK(evaluate_scalar(num(3) / num(8), b, {}) == 0.375);
    CHECK(evaluate_scalar(-var("x"), b, {}) == -1.5);
    CHECK(evaluate_scalar(binary(ExprKind::less_equal, var("x"), num(2)), b, {}) == 1.0);
    CHECK(evaluate_scalar(binary(ExprKind::greater, var("x"), num(2)), b, {}) == 0.0);
    CHECK(evaluate_scalar(binary(ExprKind::not_equal, var("x"), num(2)), b, {}) == 1.0);
}

TEST_CASE("affine point expression") {
    ConstantMap consts{{"t", 0.0}};
    EvalContext ctx{&consts, nullptr, "p1"};
    const Binding b = bind({{"vl", Point(0, 0)}, {"vr", Point(9, 9)}});
    const Expr e = (num(1) - var("t")) * var("vl") + var("t") * var("vr");
    CHECK(std::get<Point>(evaluate(e, b, ctx)) == Point(0, 0));
    consts["t"] = 1.0 / 3.0;
    const Point p = std::get<Point>(evaluate(e, b, ctx));
    CHECK(p.x() == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("state function via min") {
    const std::vector<FunctionDef> fns{
        {"f", {"sl", "sr"}, call("min", {var("sl"), num(1)}) + call("min", {var("sr"), num(1)})}};
    EvalContext ctx{nullptr, &fns, {}};
    CHECK(evaluate_scalar(call("f", {num(2), num(0)}), {}, ctx) == 1.0);
    CHECK(evaluate_scalar(call("f", {num(1), num(1)}), {}, ctx) == 2.0);
    CHECK(evaluate_scalar(call("f", {num(0), num(0)}), {}, ctx) == 0.0);
}

TEST_CASE("builtins") {
    CHECK(evaluate_scalar(call("max", {num(2), num(5)}), {}, {}) == 5.0);
    const Binding b = bind({{"v", Point(2, 4, 2)}});
    CHECK(std::get<Point>(evaluate(call("project", {var("v")}), b, {})) == Point(1, 2));
    CHECK(evaluate_scalar(component(var("v"), 'y'), b, {}) == 4.0);
    CHECK(std::get<Point>(evaluate(tuple({num(1), num(2)}), {}, {})) == Point(1, 2));
    CHECK(is_builtin_function("min"));
    CHECK_FALSE(is_builtin_function("f"));
}

TEST_CASE("affine violations name the production") {
    EvalContext ctx{nullptr, nullptr, "bad"};
    const Binding b = bind({{"a", Point(0, 0)}, {"c", Point(1, 1)}});
    try {
        evaluate(var("a") + var("c"), b, ctx);
        FAIL("expected an affine error");
    } catch (const AffineError& e) {
        CHECK(std::string(e.what()).find("'bad'") != std::string::npos);
    }
}

TEST_CASE("type errors") {
    const Binding b = bind({{"v", Point(1, 1)}, {"x", 2.0}});
    CHECK_THROWS_AS(evaluate(var("v") * var("v"), b, {}), EvalError);
    CHECK_THROWS_AS(evaluate_scalar(var("v"), b, {}), EvalError);
    CHECK_THROWS_AS(evaluate(num(1) / num(0), b, {}), EvalError);
    CHECK_THROWS(evaluate(var("missing"), b, {}));
    CHECK_THROWS(evaluate(binary(ExprKind::less, var("v"), num(1)), b, {}));
}

TEST_CASE("printing uses minimal parentheses") {
    CHECK(to_string(num(2) * var("x") + num(1)) == "2*x + 1");
    CHECK(to_string((num(1) - var("t")) * var("v")) == "(1 - t)*v");
    CHECK(to_string(num(1) - (var("a") - var("b"))) == "1 - (a - b)");
    CHECK(to_string(num(1) / num(4) * var("v")) == "1/4*v");
    CHECK(to_string(num(0.375)) == "0.375");
    CHECK(to_string(call("min", {var("s"), num(1)})) == "min(s, 1)");
}
