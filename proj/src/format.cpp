#include <charconv>
#include <string>

#include "lsys/dsl.hpp"

namespace lsys {

namespace {

std::string number(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

std::string pattern_word(const PatternWord& w) {
    std::string out;
    for (const PatternModule& m : w) {
        if (!out.empty()) out += ' ';
        out += m.symbol;
        if (!m.vars.empty()) {
            out += '(';
            for (std::size_t i = 0; i < m.vars.size(); ++i) {
                if (i) out += ", ";
                out += m.vars[i];
            }
            out += ')';
        }
    }
    return out;
}

std::string template_word(const TemplateWord& w) {
    if (w.empty()) return "eps";
    std::string out;
    for (const TemplateModule& m : w) {
        if (!out.empty()) out += ' ';
        out += m.symbol;
        if (!m.params.empty()) {
            out += '(';
            for (std::size_t i = 0; i < m.params.size(); ++i) {
                if (i) out += ", ";
                out += to_string(m.params[i]);
            }
            out += ')';
        }
    }
    return out;
}

}  // namespace

std::string format(const ParamValue& v) {
    if (const auto* s = std::get_if<double>(&v)) return number(*s);
    const Point& p = std::get<Point>(v);
    std::string out = "(";
    for (int i = 0; i < p.dim(); ++i) {
        if (i) out += ',';
        out += number(p[i]);
    }
    return out + ")";
}

std::string format(const Module& m) {
    std::string out = m.symbol;
    if (!m.params.empty()) {
        out += '(';
        for (std::size_t i = 0; i < m.params.size(); ++i) {
            if (i) out += ',';
            out += format(m.params[i]);
        }
        out += ')';
    }
    return out;
}

std::string format(const ModuleString& s) {
    std::string out;
    for (const Module& m : s.modules) {
        if (!out.empty()) out += ' ';
        out += format(m);
    }
    return out;
}

std::string format_definition(const LSystemDefinition& def) {
    std::string out = "lsystem " + def.name + " {\n";
    out += "  " + std::string(to_string(def.topology)) + "\n";
    for (const auto& [name, value] : def.constants) out += "  const " + name + " = " + number(value) + ";\n";
    for (const FunctionDef& f : def.functions) {
        out += "  fn " + f.name + "(";
        for (std::size_t i = 0; i < f.params.size(); ++i) {
            if (i) out += ", ";
            out += f.params[i];
        }
        out += ") = " + to_string(f.body) + ";\n";
    }
    out += "  axiom: " + format(def.axiom) + ";\n";
    for (const Table& t : def.tables) {
        out += "  table " + t.name + " {\n";
        for (const Production& p : t.productions) {
            out += "    " + p.label + ": ";
            if (!p.left_context.empty()) out += pattern_word(p.left_context) + " < ";
            out += pattern_word(p.strict_predecessor);
            if (!p.right_context.empty()) out += " > " + pattern_word(p.right_context);
            if (p.condition.valid()) out += " : " + to_string(p.condition);
            out += " -> " + template_word(p.successor) + ";\n";
        }
        out += "  }\n";
    }
    if (!def.interpretation.empty()) {
        out += "  interpretation: ";
        for (std::size_t i = 0; i < def.interpretation.size(); ++i) {
            if (i) out += ", ";
            out += def.interpretation[i];
        }
        out += ";\n";
    }
    out += "  schedule: ";
    for (std::size_t i = 0; i < def.schedule.items.size(); ++i) {
        if (i) out += ", ";
        out += def.schedule.items[i].table + " * " + to_string(def.schedule.items[i].count);
    }
    if (def.schedule.cycles.valid()) out += " repeat " + to_string(def.schedule.cycles);
    out += ";\n}\n";
    return out;
}

}  // namespace lsys
