#include "lsys/module.hpp"

#include <cmath>

namespace lsys {

ParamValue scalar_value(double v) {
    if (!std::isfinite(v)) throw DomainError("scalar parameter is not finite");
    return ParamValue(v);
}

Module::Module(std::string sym, std::vector<ParamValue> ps) : symbol(std::move(sym)), params(std::move(ps)) {
    if (symbol.empty()) throw DefinitionError("module symbol must be nonempty");
}

std::string_view to_string(Topology t) noexcept { return t == Topology::circular ? "circular" : "linear"; }

void Binding::bind(std::string name, ParamValue value) {
    if (find(name) != nullptr) throw DefinitionError("variable '" + name + "' bound twice");
    entries_.emplace_back(std::move(name), std::move(value));
}

const ParamValue* Binding::find(std::string_view name) const noexcept {
    for (const auto& [n, v] : entries_)
        if (n == name) return &v;
    return nullptr;
}

}  // namespace lsys
