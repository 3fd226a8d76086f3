#include "lsys/expr.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>
#include <utility>
#include <variant>

namespace lsys {

namespace {

Expr make(ExprKind kind, double number, std::string name, std::vector<Expr> args) {
    auto n = std::make_shared<ExprNode>();
    n->kind = kind;
    n->number = number;
    n->name = std::move(name);
    n->args = std::move(args);
    return Expr(std::move(n));
}

std::string format_number(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

int precedence(ExprKind k) {
    switch (k) {
        case ExprKind::less:
        case ExprKind::less_equal:
        case ExprKind::greater:
        case ExprKind::greater_equal:
        case ExprKind::equal:
        case ExprKind::not_equal: return 1;
        case ExprKind::add:
        case ExprKind::subtract: return 2;
        case ExprKind::multiply:
        case ExprKind::divide: return 3;
        case ExprKind::negate: return 4;
        case ExprKind::component: return 5;
        default: return 6;
    }
}

std::string_view op_text(ExprKind k) {
    switch (k) {
        case ExprKind::add: return " + ";
        case ExprKind::subtract: return " - ";
        case ExprKind::multiply: return "*";
        case ExprKind::divide: return "/";
        case ExprKind::less: return " < ";
        case ExprKind::less_equal: return " <= ";
        case ExprKind::greater: return " > ";
        case ExprKind::greater_equal: return " >= ";
        case ExprKind::equal: return " == ";
        case ExprKind::not_equal: return " != ";
        default: return "?";
    }
}

void render(const Expr& e, int min_prec, std::string& out) {
    const ExprNode& n = e.node();
    const int prec = precedence(n.kind);
    const bool paren = prec < min_prec || (n.kind == ExprKind::number && n.number < 0 && min_prec > 2);
    if (paren) out += '(';
    switch (n.kind) {
        case ExprKind::number: out += format_number(n.number); break;
        case ExprKind::name: out += n.name; break;
        case ExprKind::negate:
            out += '-';
            render(n.args[0], 4, out);
            break;
        case ExprKind::component:
            render(n.args[0], 5, out);
            out += '.';
            out += n.name;
            break;
        case ExprKind::call:
        case ExprKind::tuple:
            if (n.kind == ExprKind::call) out += n.name;
            out += '(';
            for (std::size_t i = 0; i < n.args.size(); ++i) {
                if (i) out += ", ";
                render(n.args[i], 0, out);
            }
            out += ')';
            break;
        default:
            if (is_comparison(n.kind)) {
                render(n.args[0], 2, out);
                out += op_text(n.kind);
                render(n.args[1], 2, out);
            } else {
                render(n.args[0], prec, out);
                out += op_text(n.kind);
                render(n.args[1], prec + 1, out);
            }
            break;
    }
    if (paren) out += ')';
}

// ---- evaluation -----------------------------------------------------------

struct Term {
    double coef;
    Point point;
};
using Terms = std::vector<Term>;
using Value = std::variant<double, Terms>;

class Evaluator {
public:
    Evaluator(const Binding& b, const EvalContext& ctx) : binding_(b), ctx_(ctx) {}

    Value eval(const Expr& e) {
        const ExprNode& n = e.node();
        switch (n.kind) {
            case ExprKind::number: return n.number;
            case ExprKind::name: return lookup(n.name);
            case ExprKind::negate: {
                Value v = eval(n.args[0]);
                if (auto* s = std::get_if<double>(&v)) return -*s;
                return scaled(std::get<Terms>(std::move(v)), -1.0);
            }
            case ExprKind::add:
            case ExprKind::subtract: return additive(n);
            case ExprKind::multiply: return multiply(n);
            case ExprKind::divide: return divide(n);
            case ExprKind::call: return call_function(n);
            case ExprKind::tuple: {
                std::vector<double> xs;
                for (const Expr& a : n.args) xs.push_back(scalar(eval(a), "point literal coordinate"));
                return Terms{{1.0, Point(std::span<const double>(xs))}};
            }
            case ExprKind::component: {
                Point p = collapse(eval(n.args[0]));
                const int axis = n.name == "x" ? 0 : n.name == "y" ? 1 : 2;
                if (axis >= p.dim())
                    throw DimensionError(where() + "component ." + n.name + " of a " + std::to_string(p.dim()) +
                                         "-D point");
                return p[axis];
            }
            default: return compare(n);
        }
    }

    Point collapse(Value v) {
        if (std::holds_alternative<double>(v)) throw TypeError(where() + "expected a point, got a scalar");
        Terms terms = std::get<Terms>(std::move(v));
        if (terms.size() == 1 && terms[0].coef == 1.0) return terms[0].point;
        std::vector<double> coefs;
        std::vector<Point> points;
        double sum = 0.0;
        for (const Term& t : terms) {
            coefs.push_back(t.coef);
            points.push_back(t.point);
            sum += t.coef;
        }
        if (!std::isfinite(sum) || std::abs(sum - 1.0) > kAffineSumTolerance)
            throw AffineError(where() + "affine coefficients sum to " + format_number(sum) + ", expected 1");
        return affine_combine(AffineCoefficients(std::move(coefs)), points);
    }

    double scalar(const Value& v, std::string_view what) {
        if (const auto* s = std::get_if<double>(&v)) {
            if (!std::isfinite(*s)) throw EvalError(where() + "non-finite value in " + std::string(what));
            return *s;
        }
        throw TypeError(where() + std::string(what) + " requires a scalar, got a point");
    }

    std::string where() const {
        return ctx_.label.empty() ? std::string() : "production '" + std::string(ctx_.label) + "': ";
    }

private:
    Value lookup(const std::string& name) {
        if (const ParamValue* p = binding_.find(name)) {
            if (const auto* s = std::get_if<double>(p)) return *s;
            return Terms{{1.0, std::get<Point>(*p)}};
        }
        if (ctx_.constants) {
            if (auto it = ctx_.constants->find(name); it != ctx_.constants->end()) return it->second;
        }
        throw EvalError(where() + "unbound name '" + name + "'");
    }

    static Terms scaled(Terms t, double k) {
        for (Term& term : t) term.coef *= k;
        return t;
    }

    Value additive(const ExprNode& n) {
        Value a = eval(n.args[0]);
        Value b = eval(n.args[1]);
        const bool sub = n.kind == ExprKind::subtract;
        if (std::holds_alternative<double>(a) && std::holds_alternative<double>(b)) {
            const double x = std::get<double>(a), y = std::get<double>(b);
            return sub ? x - y : x + y;
        }
        if (std::holds_alternative<double>(a) || std::holds_alternative<double>(b))
            throw TypeError(where() + "cannot add a scalar and a point");
        Terms out = std::get<Terms>(std::move(a));
        Terms rhs = std::get<Terms>(std::move(b));
        if (sub) rhs = scaled(std::move(rhs), -1.0);
        out.insert(out.end(), rhs.begin(), rhs.end());
        return out;
    }

    Value multiply(const ExprNode& n) {
        Value a = eval(n.args[0]);
        Value b = eval(n.args[1]);
        const bool sa = std::holds_alternative<double>(a), sb = std::holds_alternative<double>(b);
        if (sa && sb) return std::get<double>(a) * std::get<double>(b);
        if (!sa && !sb) throw TypeError(where() + "cannot multiply two points");
        if (sa) return scaled(std::get<Terms>(std::move(b)), scalar(a, "coefficient"));
        return scaled(std::get<Terms>(std::move(a)), scalar(b, "coefficient"));
    }

    Value divide(const ExprNode& n) {
        Value a = eval(n.args[0]);
        const double d = scalar(eval(n.args[1]), "divisor");
        if (d == 0.0) throw EvalError(where() + "division by zero");
        if (auto* s = std::get_if<double>(&a)) return *s / d;
        return scaled(std::get<Terms>(std::move(a)), 1.0 / d);
    }

    Value compare(const ExprNode& n) {
        const double x = scalar(eval(n.args[0]), "comparison");
        const double y = scalar(eval(n.args[1]), "comparison");
        bool r = false;
        switch (n.kind) {
            case ExprKind::less: r = x < y; break;
            case ExprKind::less_equal: r = x <= y; break;
            case ExprKind::greater: r = x > y; break;
            case ExprKind::greater_equal: r = x >= y; break;
            case ExprKind::equal: r = x == y; break;
            case ExprKind::not_equal: r = x != y; break;
            default: break;
        }
        return r ? 1.0 : 0.0;
    }

    Value call_function(const ExprNode& n) {
        if (n.name == "min" || n.name == "max") {
            if (n.args.empty()) throw EvalError(where() + n.name + "() needs at least one argument");
            double acc = scalar(eval(n.args[0]), n.name);
            for (std::size_t i = 1; i < n.args.size(); ++i) {
                const double v = scalar(eval(n.args[i]), n.name);
                acc = n.name == "min" ? std::min(acc, v) : std::max(acc, v);
            }
            return acc;
        }
        if (n.name == "project") {
            if (n.args.size() != 1) throw EvalError(where() + "project() takes one point");
            return Terms{{1.0, project_to_plane(collapse(eval(n.args[0])))}};
        }
        if (ctx_.functions) {
            for (const FunctionDef& f : *ctx_.functions) {
                if (f.name != n.name) continue;
                if (f.params.size() != n.args.size())
                    throw EvalError(where() + "function '" + f.name + "' expects " +
                                    std::to_string(f.params.size()) + " arguments");
                Binding local;
                for (std::size_t i = 0; i < f.params.size(); ++i)
                    local.bind(f.params[i], scalar(eval(n.args[i]), "function argument"));
                Evaluator inner(local, ctx_);
                return inner.scalar(inner.eval(f.body), "function result");
            }
        }
        throw EvalError(where() + "unknown function '" + n.name + "'");
    }

    const Binding& binding_;
    const EvalContext& ctx_;
};

}  // namespace

ExprKind Expr::kind() const { return node_->kind; }

bool operator==(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) return true;
    if (!a.node_ || !b.node_) return false;
    const ExprNode& x = *a.node_;
    const ExprNode& y = *b.node_;
    return x.kind == y.kind && x.number == y.number && x.name == y.name && x.args == y.args;
}

Expr num(double v) { return make(ExprKind::number, v, {}, {}); }
Expr var(std::string name) { return make(ExprKind::name, 0.0, std::move(name), {}); }
Expr call(std::string fn, std::vector<Expr> args) { return make(ExprKind::call, 0.0, std::move(fn), std::move(args)); }
Expr tuple(std::vector<Expr> elements) {
    if (elements.size() != 2 && elements.size() != 3) throw DimensionError("point literal needs 2 or 3 coordinates");
    return make(ExprKind::tuple, 0.0, {}, std::move(elements));
}
Expr component(Expr point, char axis) {
    if (axis != 'x' && axis != 'y' && axis != 'z') throw DefinitionError("component must be x, y or z");
    return make(ExprKind::component, 0.0, std::string(1, axis), {std::move(point)});
}
Expr binary(ExprKind kind, Expr lhs, Expr rhs) { return make(kind, 0.0, {}, {std::move(lhs), std::move(rhs)}); }
Expr operator+(Expr a, Expr b) { return binary(ExprKind::add, std::move(a), std::move(b)); }
Expr operator-(Expr a, Expr b) { return binary(ExprKind::subtract, std::move(a), std::move(b)); }
Expr operator*(Expr a, Expr b) { return binary(ExprKind::multiply, std::move(a), std::move(b)); }
Expr operator/(Expr a, Expr b) { return binary(ExprKind::divide, std::move(a), std::move(b)); }
Expr operator-(Expr a) { return make(ExprKind::negate, 0.0, {}, {std::move(a)}); }

bool is_comparison(ExprKind k) noexcept {
    return k == ExprKind::less || k == ExprKind::less_equal || k == ExprKind::greater ||
           k == ExprKind::greater_equal || k == ExprKind::equal || k == ExprKind::not_equal;
}

std::string to_string(const Expr& e) {
    std::string out;
    render(e, 0, out);
    return out;
}

bool is_builtin_function(std::string_view name) noexcept {
    return name == "min" || name == "max" || name == "project";
}

ParamValue evaluate(const Expr& e, const Binding& b, const EvalContext& ctx) {
    Evaluator ev(b, ctx);
    Value v = ev.eval(e);
    if (std::holds_alternative<double>(v)) return scalar_value(ev.scalar(v, "expression"));
    return ev.collapse(std::move(v));
}

double evaluate_scalar(const Expr& e, const Binding& b, const EvalContext& ctx) {
    Evaluator ev(b, ctx);
    return ev.scalar(ev.eval(e), "expression");
}

}  // namespace lsys
