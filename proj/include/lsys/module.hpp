#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "lsys/geometry.hpp"

namespace lsys {

// A module parameter: a finite scalar or a point.
using ParamValue = std::variant<double, Point>;

inline bool is_scalar(const ParamValue& v) noexcept { return std::holds_alternative<double>(v); }
inline bool is_point(const ParamValue& v) noexcept { return std::holds_alternative<Point>(v); }

ParamValue scalar_value(double v);

struct Module {
    std::string symbol;
    std::vector<ParamValue> params;

    Module() = default;
    explicit Module(std::string sym, std::vector<ParamValue> ps = {});

    std::size_t arity() const noexcept { return params.size(); }
    friend bool operator==(const Module&, const Module&) = default;
};

enum class Topology { linear, circular };

std::string_view to_string(Topology t) noexcept;

struct ModuleString {
    std::vector<Module> modules;
    Topology topology = Topology::linear;

    ModuleString() = default;
    ModuleString(std::vector<Module> ms, Topology topo) : modules(std::move(ms)), topology(topo) {}

    std::size_t size() const noexcept { return modules.size(); }
    bool empty() const noexcept { return modules.empty(); }
    const Module& operator[](std::size_t i) const { return modules[i]; }

    friend bool operator==(const ModuleString&, const ModuleString&) = default;
};

/// Pattern-variable values captured by a successful match, plus the
/// position and length of the matched strict predecessor.
class Binding {
public:
    void bind(std::string name, ParamValue value);
    const ParamValue* find(std::string_view name) const noexcept;
    const std::vector<std::pair<std::string, ParamValue>>& entries() const noexcept { return entries_; }

    std::size_t start = 0;
    std::size_t length = 0;

private:
    std::vector<std::pair<std::string, ParamValue>> entries_;
};

}  // namespace lsys
