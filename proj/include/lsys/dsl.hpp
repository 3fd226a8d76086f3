#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lsys/expr.hpp"
#include "lsys/rewriting.hpp"

namespace lsys {

/// Schedule as written in a definition: counts are expressions over the
/// symbolic constants, resolved when the system runs.
struct ScheduleSpec {
    struct Item {
        std::string table;
        Expr count;
        friend bool operator==(const Item&, const Item&) = default;
    };
    std::vector<Item> items;
    Expr cycles;

    friend bool operator==(const ScheduleSpec&, const ScheduleSpec&) = default;
};

struct LSystemDefinition {
    std::string name;
    Topology topology = Topology::linear;
    ConstantMap constants;
    std::vector<FunctionDef> functions;
    ModuleString axiom;
    std::vector<Table> tables;
    std::vector<std::string> interpretation;  // table names, applied in order
    ScheduleSpec schedule;

    // Diagnostics from static checking; not part of equality.
    std::vector<std::string> warnings;

    EvalContext context() const { return EvalContext{&constants, &functions, {}}; }
    Schedule resolved_schedule() const;
    std::vector<Table> interpretation_passes() const;

    friend bool operator==(const LSystemDefinition& a, const LSystemDefinition& b);
};

// Structural validation and static type/affine checking. Throws
// DefinitionError for hard errors and returns warnings.
std::vector<std::string> check_definition(const LSystemDefinition& def);

// Parses .lsys source text. Errors carry a line and column.
LSystemDefinition parse(std::string_view text);
LSystemDefinition parse_file(const std::string& path);

// Parses a space-separated module word such as "A(4) P((1,0)) E".
ModuleString parse_word(std::string_view text, Topology topology = Topology::linear);

std::string format(const ParamValue& v);
std::string format(const Module& m);
std::string format(const ModuleString& s);
std::string format_definition(const LSystemDefinition& def);

struct ExecuteOptions {
    std::optional<int> steps;  // run exactly this many steps instead of the schedule's cycles
    bool trace = false;
};

struct Execution {
    Derivation derivation;
    ModuleString interpreted;
};

Execution execute(const LSystemDefinition& def, const ExecuteOptions& opts = {});

}  // namespace lsys
