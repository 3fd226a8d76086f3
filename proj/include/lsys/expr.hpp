#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "lsys/module.hpp"

namespace lsys {

enum class ExprKind {
    number,     // literal scalar
    name,       // pattern variable or named constant
    negate,
    add,
    subtract,
    multiply,
    divide,
    less,
    less_equal,
    greater,
    greater_equal,
    equal,
    not_equal,
    call,       // builtin (min, max, project) or user function
    tuple,      // point literal (x, y) or (x, y, z)
    component,  // v.x, v.y, v.z
};

struct ExprNode;

/// Immutable expression tree with shared subtrees.
class Expr {
public:
    Expr() = default;
    explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}

    bool valid() const noexcept { return node_ != nullptr; }
    const ExprNode& node() const { return *node_; }
    ExprKind kind() const;

    friend bool operator==(const Expr& a, const Expr& b);

private:
    std::shared_ptr<const ExprNode> node_;
};

struct ExprNode {
    ExprKind kind = ExprKind::number;
    double number = 0.0;
    std::string name;  // variable, constant, function, or component letter
    std::vector<Expr> args;
};

// Builders.
Expr num(double v);
Expr var(std::string name);
Expr call(std::string fn, std::vector<Expr> args);
Expr tuple(std::vector<Expr> elements);
Expr component(Expr point, char axis);
Expr binary(ExprKind kind, Expr lhs, Expr rhs);
Expr operator+(Expr a, Expr b);
Expr operator-(Expr a, Expr b);
Expr operator*(Expr a, Expr b);
Expr operator/(Expr a, Expr b);
Expr operator-(Expr a);

bool is_comparison(ExprKind k) noexcept;

// Source-style rendering with minimal parentheses; parses back to the same tree.
std::string to_string(const Expr& e);

struct FunctionDef {
    std::string name;
    std::vector<std::string> params;
    Expr body;

    friend bool operator==(const FunctionDef&, const FunctionDef&) = default;
};

using ConstantMap = std::map<std::string, double, std::less<>>;

struct EvalContext {
    const ConstantMap* constants = nullptr;
    const std::vector<FunctionDef>* functions = nullptr;
    std::string_view label;  // production label, quoted in error messages
};

bool is_builtin_function(std::string_view name) noexcept;

// Point-valued subexpressions are accumulated as coefficient/point terms and
// resolved through affine_combine, so a violated coefficient sum raises
// AffineError naming ctx.label.
ParamValue evaluate(const Expr& e, const Binding& b, const EvalContext& ctx);
double evaluate_scalar(const Expr& e, const Binding& b, const EvalContext& ctx);

}  // namespace lsys
