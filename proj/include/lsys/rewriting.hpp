#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lsys/expr.hpp"
#include "lsys/module.hpp"

namespace lsys {

/// One module of a production pattern: a symbol and the variables its
/// parameters bind to. Matches a module with the same symbol and arity.
struct PatternModule {
    std::string symbol;
    std::vector<std::string> vars;

    friend bool operator==(const PatternModule&, const PatternModule&) = default;
};

/// One module of a successor: a symbol and one expression per parameter.
struct TemplateModule {
    std::string symbol;
    std::vector<Expr> params;

    friend bool operator==(const TemplateModule&, const TemplateModule&) = default;
};

using PatternWord = std::vector<PatternModule>;
using TemplateWord = std::vector<TemplateModule>;

/// label : left < strict predecessor > right : condition -> successor
struct Production {
    std::string label;
    PatternWord left_context;
    PatternWord strict_predecessor;  // more than one module makes a pseudo-production
    PatternWord right_context;
    Expr condition;                  // invalid Expr means "always true"
    TemplateWord successor;          // empty means erasure

    bool is_pseudo() const noexcept { return strict_predecessor.size() > 1; }
    friend bool operator==(const Production&, const Production&) = default;
};

struct Table {
    std::string name;
    std::vector<Production> productions;

    friend bool operator==(const Table&, const Table&) = default;
};

struct ScheduleItem {
    std::string table;
    int count = 1;

    friend bool operator==(const ScheduleItem&, const ScheduleItem&) = default;
};

struct Schedule {
    std::vector<ScheduleItem> items;
    int cycles = 1;

    int steps_per_cycle() const noexcept;
    friend bool operator==(const Schedule&, const Schedule&) = default;
};

struct TraceEntry {
    int step = 0;       // 0 is the axiom
    std::string table;  // empty for the axiom
    ModuleString word;
};

struct Derivation {
    ModuleString result;
    std::vector<TraceEntry> trace;  // empty unless requested
};

// Throws DefinitionError for an empty predecessor, duplicate variables or
// duplicate labels.
void validate(const Production& prod);
void validate(const Table& table);

std::optional<Binding> match_at(const ModuleString& s, std::size_t i, const Production& prod,
                                const EvalContext& ctx = {});

std::vector<Module> instantiate(const Production& prod, const Binding& b, const EvalContext& ctx = {});

// One parallel rewriting step. Contexts are read from `s`; positions are
// scanned left to right from index 0 and a match consumes its whole strict
// predecessor.
ModuleString derive_step(const ModuleString& s, const Table& table, const EvalContext& ctx = {});

Derivation derive(const ModuleString& axiom, const Schedule& schedule, std::span<const Table> tables,
                  const EvalContext& ctx = {}, bool keep_trace = false);

// Runs exactly `steps` steps, walking the schedule's cycle repeatedly and
// ignoring its cycle count.
Derivation derive_steps(const ModuleString& axiom, const Schedule& schedule, std::span<const Table> tables,
                        int steps, const EvalContext& ctx = {}, bool keep_trace = false);

// Applies each pass once, in order.
ModuleString interpret(const ModuleString& s, std::span<const Table> passes, const EvalContext& ctx = {});

const Table& find_table(std::span<const Table> tables, std::string_view name);

}  // namespace lsys
