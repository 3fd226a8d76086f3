// Static checks on definitions: name binding, table references, and a
// best-effort type inference that flags point/scalar misuse and affine
// combinations whose coefficients do not provably sum to one.

#include <charconv>
#include <cmath>
#include <algorithm>
#include <map>
#include <tuple>
#include <set>

#include "lsys/dsl.hpp"

namespace lsys {

namespace {

enum class SType { unknown, scalar, point };

// Slot = (symbol, arity, parameter index).
using SlotKey = std::tuple<std::string, std::size_t, std::size_t>;
using Slots = std::map<SlotKey, SType>;
using VarTypes = std::map<std::string, SType, std::less<>>;

// Linear polynomial over the symbolic constants, or opaque.
struct Poly {
    bool opaque = false;
    double c = 0.0;
    std::map<std::string, double> lin;

    bool constant_only() const { return !opaque && lin.empty(); }
    static Poly opaque_value() {
        Poly p;
        p.opaque = true;
        return p;
    }
};

Poly scale(Poly p, double k) {
    if (p.opaque) return p;
    p.c *= k;
    for (auto& [n, v] : p.lin) v *= k;
    return p;
}

Poly add(Poly a, const Poly& b) {
    if (a.opaque || b.opaque) return Poly::opaque_value();
    a.c += b.c;
    for (const auto& [n, v] : b.lin) a.lin[n] += v;
    return a;
}

Poly mul(const Poly& a, const Poly& b) {
    if (a.opaque || b.opaque) return Poly::opaque_value();
    if (a.constant_only()) return scale(b, a.c);
    if (b.constant_only()) return scale(a, b.c);
    return Poly::opaque_value();
}

std::string num_text(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

class Checker {
public:
    explicit Checker(const LSystemDefinition& def) : def_(def) {}

    std::vector<std::string> run() {
        structure();
        infer_slots();
        for (const Table& t : def_.tables)
            for (const Production& p : t.productions) check_production(t, p);
        return std::move(warnings_);
    }

private:
    void structure() {
        if (def_.axiom.empty()) throw DefinitionError("axiom must not be empty");
        if (def_.axiom.topology != def_.topology) throw DefinitionError("axiom topology differs from the definition");
        std::set<std::string> names;
        for (const Table& t : def_.tables) {
            if (!names.insert(t.name).second) throw DefinitionError("duplicate table '" + t.name + "'");
            validate(t);
        }
        for (const std::string& n : def_.interpretation)
            if (!names.count(n)) throw DefinitionError("interpretation references unknown table '" + n + "'");
        for (const auto& item : def_.schedule.items)
            if (!names.count(item.table)) throw DefinitionError("schedule references unknown table '" + item.table + "'");

        for (const FunctionDef& f : def_.functions) {
            std::set<std::string> params(f.params.begin(), f.params.end());
            check_names(f.body, params, "function '" + f.name + "'");
        }
        for (const Table& t : def_.tables)
            for (const Production& p : t.productions) {
                std::set<std::string> vars;
                for (const PatternWord* w : {&p.left_context, &p.strict_predecessor, &p.right_context})
                    for (const PatternModule& m : *w) vars.insert(m.vars.begin(), m.vars.end());
                const std::string where = "production '" + p.label + "'";
                if (p.condition.valid()) check_names(p.condition, vars, where);
                for (const TemplateModule& m : p.successor)
                    for (const Expr& e : m.params) check_names(e, vars, where);
            }

        int dim = 0;
        for (const Module& m : def_.axiom.modules)
            for (const ParamValue& v : m.params)
                if (const auto* p = std::get_if<Point>(&v)) {
                    if (dim == 0) dim = p->dim();
                    if (p->dim() != dim) throw DefinitionError("axiom mixes 2-D and 3-D points");
                }
    }

    void check_names(const Expr& e, const std::set<std::string>& vars, const std::string& where) const {
        const ExprNode& n = e.node();
        if (n.kind == ExprKind::name && !vars.count(n.name) && !def_.constants.count(n.name))
            throw DefinitionError(where + ": unbound name '" + n.name + "'");
        if (n.kind == ExprKind::call && !is_builtin_function(n.name)) {
            bool found = false;
            for (const FunctionDef& f : def_.functions) found = found || (f.name == n.name && f.params.size() == n.args.size());
            if (!found) throw DefinitionError(where + ": unknown function '" + n.name + "'");
        }
        for (const Expr& a : n.args) check_names(a, vars, where);
    }

    VarTypes var_types(const Production& p) const {
        VarTypes types;
        for (const PatternWord* w : {&p.left_context, &p.strict_predecessor, &p.right_context})
            for (const PatternModule& m : *w)
                for (std::size_t i = 0; i < m.vars.size(); ++i) {
                    auto it = slots_.find({m.symbol, m.vars.size(), i});
                    types[m.vars[i]] = it == slots_.end() ? SType::unknown : it->second;
                }
        return types;
    }

    void infer_slots() {
        for (const Module& m : def_.axiom.modules)
            for (std::size_t i = 0; i < m.params.size(); ++i)
                slots_[{m.symbol, m.arity(), i}] = is_point(m.params[i]) ? SType::point : SType::scalar;
        bool changed = true;
        while (changed) {
            changed = false;
            for (const Table& t : def_.tables)
                for (const Production& p : t.productions) {
                    const VarTypes types = var_types(p);
                    for (const TemplateModule& m : p.successor)
                        for (std::size_t i = 0; i < m.params.size(); ++i) {
                            const SType st = type_of(m.params[i], types, nullptr);
                            if (st == SType::unknown) continue;
                            auto [it, inserted] = slots_.try_emplace({m.symbol, m.params.size(), i}, st);
                            if (inserted) changed = true;
                        }
                }
        }
    }

    void check_production(const Table& t, const Production& p) {
        const std::string where = "table '" + t.name + "', production '" + p.label + "': ";
        const VarTypes types = var_types(p);
        if (p.condition.valid() && type_of(p.condition, types, &where) == SType::point)
            warn(where + "condition is point-valued");
        for (const TemplateModule& m : p.successor)
            for (std::size_t i = 0; i < m.params.size(); ++i) {
                const Expr& e = m.params[i];
                const SType st = type_of(e, types, &where);
                auto slot = slots_.find({m.symbol, m.params.size(), i});
                if (st != SType::unknown && slot != slots_.end() && slot->second != st)
                    warn(where + m.symbol + " parameter " + std::to_string(i + 1) + " mixes scalars and points");
                if (st == SType::point) check_affine(e, types, where);
            }
        for (const PatternWord* w : {&p.left_context, &p.strict_predecessor, &p.right_context})
            for (const PatternModule& m : *w)
                if (!produced(m.symbol, m.vars.size()))
                    warn(where + "pattern " + m.symbol + "/" + std::to_string(m.vars.size()) +
                         " never occurs in the axiom or any successor");
    }

    bool produced(const std::string& symbol, std::size_t arity) const {
        for (const Module& m : def_.axiom.modules)
            if (m.symbol == symbol && m.arity() == arity) return true;
        for (const Table& t : def_.tables)
            for (const Production& p : t.productions)
                for (const TemplateModule& m : p.successor)
                    if (m.symbol == symbol && m.params.size() == arity) return true;
        return false;
    }

    SType type_of(const Expr& e, const VarTypes& vars, const std::string* where) {
        const ExprNode& n = e.node();
        auto complain = [&](const std::string& msg) {
            if (where) warn(*where + msg);
        };
        switch (n.kind) {
            case ExprKind::number: return SType::scalar;
            case ExprKind::name: {
                if (auto it = vars.find(n.name); it != vars.end()) return it->second;
                return def_.constants.count(n.name) ? SType::scalar : SType::unknown;
            }
            case ExprKind::negate: return type_of(n.args[0], vars, where);
            case ExprKind::add:
            case ExprKind::subtract: {
                const SType a = type_of(n.args[0], vars, where), b = type_of(n.args[1], vars, where);
                if (a == SType::unknown) return b;
                if (b == SType::unknown) return a;
                if (a != b) {
                    complain("adds a scalar and a point in '" + to_string(e) + "'");
                    return SType::unknown;
                }
                return a;
            }
            case ExprKind::multiply: {
                const SType a = type_of(n.args[0], vars, where), b = type_of(n.args[1], vars, where);
                if (a == SType::point && b == SType::point) {
                    complain("multiplies two points in '" + to_string(e) + "'");
                    return SType::unknown;
                }
                if (a == SType::point || b == SType::point) return SType::point;
                if (a == SType::scalar && b == SType::scalar) return SType::scalar;
                return SType::unknown;
            }
            case ExprKind::divide: {
                const SType a = type_of(n.args[0], vars, where), b = type_of(n.args[1], vars, where);
                if (b == SType::point) complain("divides by a point in '" + to_string(e) + "'");
                return a;
            }
            case ExprKind::call: {
                if (n.name == "project") {
                    if (type_of(n.args[0], vars, where) == SType::scalar) complain("project() of a scalar");
                    return SType::point;
                }
                for (const Expr& a : n.args)
                    if (type_of(a, vars, where) == SType::point)
                        complain(n.name + "() applied to a point in '" + to_string(e) + "'");
                return SType::scalar;
            }
            case ExprKind::tuple:
                for (const Expr& a : n.args)
                    if (type_of(a, vars, where) == SType::point) complain("point literal with a point coordinate");
                return SType::point;
            case ExprKind::component:
                if (type_of(n.args[0], vars, where) == SType::scalar) complain("component of a scalar");
                return SType::scalar;
            default:
                for (const Expr& a : n.args)
                    if (type_of(a, vars, where) == SType::point)
                        complain("compares a point in '" + to_string(e) + "'");
                return SType::scalar;
        }
    }

    // Coefficients of the point terms of a point-valued expression.
    std::vector<Poly> point_terms(const Expr& e, const VarTypes& vars) {
        const ExprNode& n = e.node();
        switch (n.kind) {
            case ExprKind::negate: {
                auto terms = point_terms(n.args[0], vars);
                for (Poly& p : terms) p = scale(p, -1.0);
                return terms;
            }
            case ExprKind::add:
            case ExprKind::subtract: {
                auto a = point_terms(n.args[0], vars);
                auto b = point_terms(n.args[1], vars);
                const double sign = n.kind == ExprKind::subtract ? -1.0 : 1.0;
                for (Poly& p : b) a.push_back(scale(p, sign));
                return a;
            }
            case ExprKind::multiply: {
                const bool left_point = type_of(n.args[0], vars, nullptr) == SType::point;
                const Expr& coef = n.args[left_point ? 1 : 0];
                auto terms = point_terms(n.args[left_point ? 0 : 1], vars);
                const Poly k = scalar_poly(coef, vars);
                for (Poly& p : terms) p = mul(p, k);
                return terms;
            }
            case ExprKind::divide: {
                auto terms = point_terms(n.args[0], vars);
                const Poly d = scalar_poly(n.args[1], vars);
                for (Poly& p : terms) p = (d.constant_only() && d.c != 0.0) ? scale(p, 1.0 / d.c) : Poly::opaque_value();
                return terms;
            }
            default: {
                Poly one;
                one.c = 1.0;
                if (type_of(e, vars, nullptr) != SType::point) one.opaque = true;
                return {one};
            }
        }
    }

    Poly scalar_poly(const Expr& e, const VarTypes& vars) const {
        const ExprNode& n = e.node();
        switch (n.kind) {
            case ExprKind::number: {
                Poly p;
                p.c = n.number;
                return p;
            }
            case ExprKind::name: {
                if (vars.count(n.name) || !def_.constants.count(n.name)) return Poly::opaque_value();
                Poly p;
                p.lin[n.name] = 1.0;
                return p;
            }
            case ExprKind::negate: return scale(scalar_poly(n.args[0], vars), -1.0);
            case ExprKind::add: return add(scalar_poly(n.args[0], vars), scalar_poly(n.args[1], vars));
            case ExprKind::subtract: return add(scalar_poly(n.args[0], vars), scale(scalar_poly(n.args[1], vars), -1.0));
            case ExprKind::multiply: return mul(scalar_poly(n.args[0], vars), scalar_poly(n.args[1], vars));
            case ExprKind::divide: {
                const Poly d = scalar_poly(n.args[1], vars);
                if (!d.constant_only() || d.c == 0.0) return Poly::opaque_value();
                return scale(scalar_poly(n.args[0], vars), 1.0 / d.c);
            }
            default: return Poly::opaque_value();
        }
    }

    void check_affine(const Expr& e, const VarTypes& vars, const std::string& where) {
        Poly sum;
        for (const Poly& p : point_terms(e, vars)) sum = add(sum, p);
        if (sum.opaque) {
            warn(where + "cannot verify affine coefficients of '" + to_string(e) + "' statically; checked at run time");
            return;
        }
        bool ok = std::abs(sum.c - 1.0) <= kAffineSumTolerance;
        for (const auto& [name, v] : sum.lin) ok = ok && std::abs(v) <= kAffineSumTolerance;
        if (!ok) warn(where + "affine coefficients of '" + to_string(e) + "' sum to " + num_text(sum.c) +
                      (sum.lin.empty() ? "" : " plus symbolic terms") + ", not 1");
    }

    void warn(std::string msg) {
        if (std::find(warnings_.begin(), warnings_.end(), msg) == warnings_.end()) warnings_.push_back(std::move(msg));
    }

    const LSystemDefinition& def_;
    Slots slots_;
    std::vector<std::string> warnings_;
};

}  // namespace

std::vector<std::string> check_definition(const LSystemDefinition& def) { return Checker(def).run(); }

bool operator==(const LSystemDefinition& a, const LSystemDefinition& b) {
    return a.name == b.name && a.topology == b.topology && a.constants == b.constants &&
           a.functions == b.functions && a.axiom == b.axiom && a.tables == b.tables &&
           a.interpretation == b.interpretation && a.schedule == b.schedule;
}

Schedule LSystemDefinition::resolved_schedule() const {
    const EvalContext ctx = context();
    auto count = [&](const Expr& e, const std::string& what) {
        const double v = evaluate_scalar(e, Binding{}, ctx);
        if (v < 0 || v != std::floor(v) || v > 1e9)
            throw DefinitionError(what + " must be a non-negative integer, got " + num_text(v));
        return static_cast<int>(v);
    };
    Schedule s;
    for (const auto& item : schedule.items) s.items.push_back({item.table, count(item.count, "count of '" + item.table + "'")});
    s.cycles = schedule.cycles.valid() ? count(schedule.cycles, "cycle count") : 1;
    return s;
}

std::vector<Table> LSystemDefinition::interpretation_passes() const {
    std::vector<Table> passes;
    for (const std::string& n : interpretation) passes.push_back(find_table(tables, n));
    return passes;
}

Execution execute(const LSystemDefinition& def, const ExecuteOptions& opts) {
    const EvalContext ctx = def.context();
    const Schedule sched = def.resolved_schedule();
    Execution run;
    run.derivation = opts.steps ? derive_steps(def.axiom, sched, def.tables, *opts.steps, ctx, opts.trace)
                                : derive(def.axiom, sched, def.tables, ctx, opts.trace);
    run.interpreted = interpret(run.derivation.result, def.interpretation_passes(), ctx);
    return run;
}

}  // namespace lsys
