#include "lsys/rewriting.hpp"

#include <set>
#include <string>

namespace lsys {

namespace {

bool bind_module(const PatternModule& pattern, const Module& m, Binding& b) {
    if (pattern.symbol != m.symbol || pattern.vars.size() != m.params.size()) return false;
    for (std::size_t k = 0; k < pattern.vars.size(); ++k) b.bind(pattern.vars[k], m.params[k]);
    return true;
}

// Index of the module at signed offset `pos`, or npos when a linear string
// has no module there.
std::size_t resolve(long long pos, std::size_t n, Topology topo) {
    const auto len = static_cast<long long>(n);
    if (topo == Topology::linear) return (pos < 0 || pos >= len) ? std::string::npos : static_cast<std::size_t>(pos);
    return static_cast<std::size_t>(((pos % len) + len) % len);
}

EvalContext labelled(const EvalContext& ctx, const Production& prod) {
    EvalContext c = ctx;
    c.label = prod.label;
    return c;
}

void collect_vars(const PatternWord& w, std::set<std::string>& seen, const std::string& label) {
    for (const PatternModule& m : w)
        for (const std::string& v : m.vars)
            if (!seen.insert(v).second)
                throw DefinitionError("production '" + label + "': variable '" + v + "' bound more than once");
}

}  // namespace

int Schedule::steps_per_cycle() const noexcept {
    int total = 0;
    for (const ScheduleItem& it : items) total += it.count;
    return total;
}

void validate(const Production& prod) {
    if (prod.strict_predecessor.empty())
        throw DefinitionError("production '" + prod.label + "' has an empty strict predecessor");
    std::set<std::string> seen;
    collect_vars(prod.left_context, seen, prod.label);
    collect_vars(prod.strict_predecessor, seen, prod.label);
    collect_vars(prod.right_context, seen, prod.label);
}

void validate(const Table& table) {
    std::set<std::string> labels;
    for (const Production& p : table.productions) {
        validate(p);
        if (!labels.insert(p.label).second)
            throw DefinitionError("table '" + table.name + "': duplicate production label '" + p.label + "'");
    }
}

std::optional<Binding> match_at(const ModuleString& s, std::size_t i, const Production& prod,
                                const EvalContext& ctx) {
    const std::size_t n = s.size();
    const std::size_t k = prod.strict_predecessor.size();
    if (i >= n || k == 0 || i + k > n) return std::nullopt;

    Binding b;
    b.start = i;
    b.length = k;
    const auto base = static_cast<long long>(i);
    const auto left = static_cast<long long>(prod.left_context.size());
    for (long long j = 0; j < left; ++j) {
        const std::size_t at = resolve(base - left + j, n, s.topology);
        if (at == std::string::npos || !bind_module(prod.left_context[j], s[at], b)) return std::nullopt;
    }
    for (std::size_t j = 0; j < k; ++j)
        if (!bind_module(prod.strict_predecessor[j], s[i + j], b)) return std::nullopt;
    for (std::size_t j = 0; j < prod.right_context.size(); ++j) {
        const std::size_t at = resolve(base + static_cast<long long>(k + j), n, s.topology);
        if (at == std::string::npos || !bind_module(prod.right_context[j], s[at], b)) return std::nullopt;
    }

    if (prod.condition.valid()) {
        const ParamValue c = evaluate(prod.condition, b, labelled(ctx, prod));
        if (!is_scalar(c)) throw TypeError("production '" + prod.label + "': condition is not a scalar");
        if (std::get<double>(c) == 0.0) return std::nullopt;
    }
    return b;
}

std::vector<Module> instantiate(const Production& prod, const Binding& b, const EvalContext& ctx) {
    const EvalContext c = labelled(ctx, prod);
    std::vector<Module> out;
    out.reserve(prod.successor.size());
    for (const TemplateModule& t : prod.successor) {
        std::vector<ParamValue> params;
        params.reserve(t.params.size());
        for (const Expr& e : t.params) params.push_back(evaluate(e, b, c));
        out.emplace_back(t.symbol, std::move(params));
    }
    return out;
}

ModuleString derive_step(const ModuleString& s, const Table& table, const EvalContext& ctx) {
    ModuleString out;
    out.topology = s.topology;
    out.modules.reserve(s.size() * 2);
    std::size_t i = 0;
    while (i < s.size()) {
        bool matched = false;
        for (const Production& prod : table.productions) {
            if (auto b = match_at(s, i, prod, ctx)) {
                auto produced = instantiate(prod, *b, ctx);
                out.modules.insert(out.modules.end(), std::make_move_iterator(produced.begin()),
                                   std::make_move_iterator(produced.end()));
                i += b->length;
                matched = true;
                break;
            }
        }
        if (!matched) out.modules.push_back(s[i++]);
    }
    return out;
}

const Table& find_table(std::span<const Table> tables, std::string_view name) {
    for (const Table& t : tables)
        if (t.name == name) return t;
    throw DefinitionError("unknown table '" + std::string(name) + "'");
}

namespace {

std::vector<const Table*> resolve_cycle(const Schedule& schedule, std::span<const Table> tables) {
    if (schedule.cycles < 0) throw DefinitionError("schedule cycle count must be non-negative");
    std::vector<const Table*> steps;
    for (const ScheduleItem& it : schedule.items) {
        const Table& t = find_table(tables, it.table);
        if (it.count < 0) throw DefinitionError("schedule count for table '" + it.table + "' is negative");
        for (int r = 0; r < it.count; ++r) steps.push_back(&t);
    }
    return steps;
}

Derivation run(const ModuleString& axiom, const std::vector<const Table*>& cycle, long long steps,
               const EvalContext& ctx, bool keep_trace) {
    Derivation d;
    d.result = axiom;
    if (keep_trace) d.trace.push_back({0, {}, axiom});
    for (long long k = 0; k < steps; ++k) {
        const Table& t = *cycle[static_cast<std::size_t>(k) % cycle.size()];
        d.result = derive_step(d.result, t, ctx);
        if (keep_trace) d.trace.push_back({static_cast<int>(k + 1), t.name, d.result});
    }
    return d;
}

}  // namespace

Derivation derive(const ModuleString& axiom, const Schedule& schedule, std::span<const Table> tables,
                  const EvalContext& ctx, bool keep_trace) {
    const auto cycle = resolve_cycle(schedule, tables);
    const long long steps = static_cast<long long>(cycle.size()) * schedule.cycles;
    return run(axiom, cycle, steps, ctx, keep_trace);
}

Derivation derive_steps(const ModuleString& axiom, const Schedule& schedule, std::span<const Table> tables,
                        int steps, const EvalContext& ctx, bool keep_trace) {
    if (steps < 0) throw DefinitionError("step count must be non-negative");
    const auto cycle = resolve_cycle(schedule, tables);
    if (cycle.empty() && steps > 0) throw DefinitionError("schedule has no steps to repeat");
    return run(axiom, cycle, steps, ctx, keep_trace);
}

ModuleString interpret(const ModuleString& s, std::span<const Table> passes, const EvalContext& ctx) {
    ModuleString out = s;
    for (const Table& pass : passes) out = derive_step(out, pass, ctx);
    return out;
}

}  // namespace lsys
