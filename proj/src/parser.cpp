// Recursive-descent parser for .lsys definitions.
//
//   definition := "lsystem" IDENT "{" header axiom table+ interpretation? schedule "}"
//   header     := (("circular" | "linear") ";"?)? (const | fn)*
//   const      := "const" IDENT "=" expr ";"
//   fn         := "fn" IDENT "(" IDENT ("," IDENT)* ")" "=" expr ";"
//   axiom      := "axiom" ":" word ";"
//   table      := "table" IDENT "{" production* "}"
//   production := LABEL ":" (pattern "<")? pattern (">" pattern)? (":" expr)? "->" template ";"
//   pattern    := (IDENT ("(" IDENT ("," IDENT)* ")")?)+
//   template   := "eps" | (IDENT ("(" expr ("," expr)* ")")?)*
//   interpretation := "interpretation" ":" IDENT ("," IDENT)* ";"
//   schedule   := "schedule" ":" item ("," item)* ("repeat" expr)? ";"
//   item       := IDENT ("*" expr)?

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "lsys/dsl.hpp"

namespace lsys {

namespace {

enum class Tok { ident, number, punct, end };

struct Token {
    Tok kind = Tok::end;
    std::string text;
    double value = 0.0;
    int line = 1;
    int column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            Token t;
            t.line = line_;
            t.column = col_;
            if (pos_ >= src_.size()) {
                out.push_back(t);
                return out;
            }
            const char c = src_[pos_];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                t.kind = Tok::ident;
                while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                    t.text += advance();
                while (pos_ < src_.size() && src_[pos_] == '\'') t.text += advance();
            } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                       (c == '.' && pos_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
                t.kind = Tok::number;
                lex_number(t);
            } else {
                t.kind = Tok::punct;
                static constexpr std::string_view two[] = {"<=", ">=", "==", "!=", "->"};
                bool done = false;
                for (std::string_view op : two) {
                    if (src_.substr(pos_, 2) == op) {
                        t.text += advance();
                        t.text += advance();
                        done = true;
                        break;
                    }
                }
                if (!done) {
                    static constexpr std::string_view one = "{}(),;:<>=+-*/.";
                    if (one.find(c) == std::string_view::npos)
                        throw ParseError(t.line, t.column, "unexpected character", std::string(1, c));
                    t.text += advance();
                }
            }
            out.push_back(std::move(t));
        }
    }

private:
    char advance() {
        const char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_space() {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else {
                break;
            }
        }
    }

    void lex_number(Token& t) {
        const std::size_t start = pos_;
        auto digits = [&] {
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
        };
        digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            advance();
            digits();
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t look = pos_ + 1;
            if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
            if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
                while (pos_ < look) advance();
                digits();
            }
        }
        t.text = std::string(src_.substr(start, pos_ - start));
        const char* first = t.text.data();
        auto [ptr, ec] = std::from_chars(first, first + t.text.size(), t.value);
        if (ec != std::errc() || ptr != first + t.text.size())
            throw ParseError(t.line, t.column, "malformed number", t.text);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

struct PatternUse {
    std::string symbol;
    std::size_t arity;
    int line;
    int column;
};

// Names visible while parsing one expression.
struct Scope {
    const std::set<std::string>* vars = nullptr;
    bool allow_constants = true;
};

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    LSystemDefinition definition() {
        LSystemDefinition def;
        expect_keyword("lsystem");
        def.name = expect_ident("system name").text;
        expect("{");
        header(def);
        axiom(def);
        if (!is_keyword("table")) fail(peek(), "expected at least one 'table'");
        while (is_keyword("table")) def.tables.push_back(table(def));
        if (is_keyword("interpretation")) interpretation(def);
        schedule(def);
        expect("}");
        if (peek().kind != Tok::end) fail(peek(), "unexpected text after definition");
        check_tables(def);
        check_patterns(def);
        def.warnings = check_definition(def);
        return def;
    }

    ModuleString word_only(Topology topo) {
        ModuleString s;
        s.topology = topo;
        static const ConstantMap none;
        while (peek().kind == Tok::ident) s.modules.push_back(axiom_module(none));
        if (peek().kind != Tok::end) fail(peek(), "unexpected token in module word");
        return s;
    }

private:
    // ---- token helpers ----------------------------------------------------
    const Token& peek(std::size_t ahead = 0) const {
        const std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
        return toks_[i];
    }
    const Token& next() {
        const Token& t = toks_[pos_];
        if (pos_ + 1 < toks_.size()) ++pos_;
        return t;
    }
    bool is(std::string_view punct) const { return peek().kind == Tok::punct && peek().text == punct; }
    bool is_keyword(std::string_view kw) const { return peek().kind == Tok::ident && peek().text == kw; }
    bool accept(std::string_view punct) {
        if (!is(punct)) return false;
        next();
        return true;
    }
    [[noreturn]] static void fail(const Token& t, const std::string& msg) {
        throw ParseError(t.line, t.column, msg, t.kind == Tok::end ? "end of input" : t.text);
    }
    const Token& expect(std::string_view punct) {
        if (!is(punct)) fail(peek(), "expected '" + std::string(punct) + "'");
        return next();
    }
    void expect_keyword(std::string_view kw) {
        if (!is_keyword(kw)) fail(peek(), "expected '" + std::string(kw) + "'");
        next();
    }
    const Token& expect_ident(const std::string& what) {
        if (peek().kind != Tok::ident) fail(peek(), "expected " + what);
        return next();
    }

    // ---- sections -----------------------------------------------------------
    void header(LSystemDefinition& def) {
        if (is_keyword("circular") || is_keyword("linear")) {
            def.topology = next().text == "circular" ? Topology::circular : Topology::linear;
            accept(";");
        }
        for (;;) {
            if (is_keyword("const")) {
                next();
                const Token& name = expect_ident("constant name");
                if (def.constants.count(name.text) || is_builtin_function(name.text)) fail(name, "duplicate name");
                expect("=");
                Scope scope;
                const Token& at = peek();
                Expr e = expr(scope, def);
                expect(";");
                def.constants[name.text] = const_value(e, def, at);
            } else if (is_keyword("fn")) {
                next();
                FunctionDef f;
                const Token& name = expect_ident("function name");
                if (def.constants.count(name.text) || is_builtin_function(name.text) || find_function(def, name.text))
                    fail(name, "duplicate name");
                f.name = name.text;
                expect("(");
                std::set<std::string> params;
                do {
                    const Token& p = expect_ident("parameter name");
                    if (!params.insert(p.text).second) fail(p, "duplicate parameter");
                    f.params.push_back(p.text);
                } while (accept(","));
                expect(")");
                expect("=");
                Scope scope{&params, true};
                f.body = expr(scope, def);
                expect(";");
                def.functions.push_back(std::move(f));
            } else {
                break;
            }
        }
    }

    void axiom(LSystemDefinition& def) {
        expect_keyword("axiom");
        expect(":");
        def.axiom.topology = def.topology;
        const Token& start = peek();
        while (peek().kind == Tok::ident) def.axiom.modules.push_back(axiom_module(def.constants, &def));
        if (def.axiom.empty()) fail(start, "axiom must not be empty");
        expect(";");
        int dim = 0;
        for (const Module& m : def.axiom.modules)
            for (const ParamValue& v : m.params)
                if (const auto* p = std::get_if<Point>(&v)) {
                    if (dim == 0) dim = p->dim();
                    if (p->dim() != dim) fail(start, "axiom mixes 2-D and 3-D points");
                }
    }

    Module axiom_module(const ConstantMap& constants, const LSystemDefinition* def = nullptr) {
        const Token& sym = next();
        std::vector<ParamValue> params;
        if (accept("(")) {
            static const LSystemDefinition empty;
            const LSystemDefinition& d = def ? *def : empty;
            do {
                const Token& at = peek();
                Scope scope;
                Expr e = expr(scope, d);
                EvalContext ctx{&constants, &d.functions, {}};
                try {
                    params.push_back(evaluate(e, Binding{}, ctx));
                } catch (const ParseError&) {
                    throw;
                } catch (const Error& err) {
                    fail(at, err.what());
                }
            } while (accept(","));
            expect(")");
        }
        return Module(sym.text, std::move(params));
    }

    Table table(LSystemDefinition& def) {
        expect_keyword("table");
        Table t;
        const Token& name = expect_ident("table name");
        for (const Table& other : def.tables)
            if (other.name == name.text) fail(name, "duplicate table");
        t.name = name.text;
        expect("{");
        std::set<std::string> labels;
        while (!is("}")) {
            const Token& label = expect_ident("production label");
            if (!labels.insert(label.text).second) fail(label, "duplicate production label");
            t.productions.push_back(production(label.text, def));
        }
        expect("}");
        return t;
    }

    Production production(const std::string& label, const LSystemDefinition& def) {
        Production p;
        p.label = label;
        expect(":");
        std::set<std::string> vars;
        PatternWord first = pattern(vars);
        if (accept("<")) {
            p.left_context = std::move(first);
            p.strict_predecessor = pattern(vars);
        } else {
            p.strict_predecessor = std::move(first);
        }
        if (accept(">")) p.right_context = pattern(vars);
        Scope scope{&vars, true};
        if (accept(":")) p.condition = expr(scope, def);
        expect("->");
        if (is_keyword("eps")) {
            next();
        } else {
            while (peek().kind == Tok::ident) {
                TemplateModule m;
                m.symbol = next().text;
                if (accept("(")) {
                    do m.params.push_back(expr(scope, def));
                    while (accept(","));
                    expect(")");
                }
                template_uses_.emplace(m.symbol, m.params.size());
                p.successor.push_back(std::move(m));
            }
        }
        expect(";");
        return p;
    }

    PatternWord pattern(std::set<std::string>& vars) {
        PatternWord w;
        if (peek().kind != Tok::ident) fail(peek(), "expected a pattern module");
        while (peek().kind == Tok::ident) {
            const Token& sym = next();
            PatternModule m;
            m.symbol = sym.text;
            if (accept("(")) {
                do {
                    const Token& v = expect_ident("pattern variable");
                    if (!vars.insert(v.text).second) fail(v, "variable bound more than once");
                    m.vars.push_back(v.text);
                } while (accept(","));
                expect(")");
            }
            pattern_uses_.push_back({m.symbol, m.vars.size(), sym.line, sym.column});
            w.push_back(std::move(m));
        }
        return w;
    }

    void interpretation(LSystemDefinition& def) {
        next();
        expect(":");
        do {
            const Token& t = expect_ident("table name");
            table_refs_.push_back(t);
            def.interpretation.push_back(t.text);
        } while (accept(","));
        expect(";");
    }

    void schedule(LSystemDefinition& def) {
        expect_keyword("schedule");
        expect(":");
        Scope scope;
        do {
            const Token& t = expect_ident("table name");
            table_refs_.push_back(t);
            ScheduleSpec::Item item{t.text, num(1)};
            if (accept("*")) {
                const Token& at = peek();
                item.count = expr(scope, def);
                check_count(item.count, def, at);
            }
            def.schedule.items.push_back(std::move(item));
        } while (accept(","));
        def.schedule.cycles = num(1);
        if (is_keyword("repeat")) {
            next();
            const Token& at = peek();
            def.schedule.cycles = expr(scope, def);
            check_count(def.schedule.cycles, def, at);
        }
        expect(";");
    }

    // ---- expressions --------------------------------------------------------
    Expr expr(const Scope& s, const LSystemDefinition& def) {
        Expr lhs = additive(s, def);
        static const std::map<std::string, ExprKind, std::less<>> cmp = {
            {"<", ExprKind::less},         {"<=", ExprKind::less_equal}, {">", ExprKind::greater},
            {">=", ExprKind::greater_equal}, {"==", ExprKind::equal},      {"=", ExprKind::equal},
            {"!=", ExprKind::not_equal}};
        if (peek().kind == Tok::punct) {
            if (auto it = cmp.find(peek().text); it != cmp.end()) {
                next();
                return binary(it->second, std::move(lhs), additive(s, def));
            }
        }
        return lhs;
    }

    Expr additive(const Scope& s, const LSystemDefinition& def) {
        Expr e = multiplicative(s, def);
        for (;;) {
            if (accept("+")) e = std::move(e) + multiplicative(s, def);
            else if (accept("-")) e = std::move(e) - multiplicative(s, def);
            else return e;
        }
    }

    Expr multiplicative(const Scope& s, const LSystemDefinition& def) {
        Expr e = unary(s, def);
        for (;;) {
            if (accept("*")) e = std::move(e) * unary(s, def);
            else if (accept("/")) e = std::move(e) / unary(s, def);
            else return e;
        }
    }

    Expr unary(const Scope& s, const LSystemDefinition& def) {
        if (accept("-")) return -unary(s, def);
        Expr e = primary(s, def);
        while (is(".")) {
            next();
            const Token& axis = expect_ident("component x, y or z");
            if (axis.text != "x" && axis.text != "y" && axis.text != "z") fail(axis, "expected component x, y or z");
            e = component(std::move(e), axis.text[0]);
        }
        return e;
    }

    Expr primary(const Scope& s, const LSystemDefinition& def) {
        const Token& t = peek();
        if (t.kind == Tok::number) {
            next();
            return num(t.value);
        }
        if (t.kind == Tok::ident) {
            next();
            if (accept("(")) {
                std::vector<Expr> args;
                if (!is(")")) {
                    do args.push_back(expr(s, def));
                    while (accept(","));
                }
                expect(")");
                check_call(t, args.size(), def);
                return call(t.text, std::move(args));
            }
            const bool bound = (s.vars && s.vars->count(t.text)) ||
                               (s.allow_constants && def.constants.count(t.text));
            if (!bound) fail(t, "unbound name '" + t.text + "'");
            return var(t.text);
        }
        if (accept("(")) {
            std::vector<Expr> items;
            do items.push_back(expr(s, def));
            while (accept(","));
            expect(")");
            if (items.size() == 1) return items.front();
            if (items.size() > 3) fail(t, "point literal needs 2 or 3 coordinates");
            return tuple(std::move(items));
        }
        fail(t, "expected an expression");
    }

    static const FunctionDef* find_function(const LSystemDefinition& def, std::string_view name) {
        for (const FunctionDef& f : def.functions)
            if (f.name == name) return &f;
        return nullptr;
    }

    void check_call(const Token& t, std::size_t nargs, const LSystemDefinition& def) {
        if (t.text == "min" || t.text == "max") {
            if (nargs == 0) fail(t, t.text + "() needs at least one argument");
            return;
        }
        if (t.text == "project") {
            if (nargs != 1) fail(t, "project() takes one argument");
            return;
        }
        const FunctionDef* f = find_function(def, t.text);
        if (!f) fail(t, "unknown function '" + t.text + "'");
        if (f->params.size() != nargs) fail(t, "wrong number of arguments to '" + t.text + "'");
    }

    static double const_value(const Expr& e, const LSystemDefinition& def, const Token& at) {
        try {
            return evaluate_scalar(e, Binding{}, def.context());
        } catch (const Error& err) {
            fail(at, err.what());
        }
    }

    static void check_count(const Expr& e, const LSystemDefinition& def, const Token& at) {
        const double v = const_value(e, def, at);
        if (v < 0 || v != static_cast<double>(static_cast<long long>(v)))
            fail(at, "schedule count must be a non-negative integer");
    }

    void check_tables(const LSystemDefinition& def) const {
        for (const Token& ref : table_refs_) {
            bool found = false;
            for (const Table& t : def.tables) found = found || t.name == ref.text;
            if (!found) fail(ref, "unknown table '" + ref.text + "'");
        }
    }

    // A pattern whose symbol occurs elsewhere only with other arities can never match.
    void check_patterns(const LSystemDefinition& def) {
        std::multimap<std::string, std::size_t> uses = template_uses_;
        for (const Module& m : def.axiom.modules) uses.emplace(m.symbol, m.arity());
        for (const PatternUse& p : pattern_uses_) {
            auto [lo, hi] = uses.equal_range(p.symbol);
            if (lo == hi) continue;
            bool same = false;
            for (auto it = lo; it != hi; ++it) same = same || it->second == p.arity;
            if (!same)
                throw ParseError(p.line, p.column,
                                 "pattern " + p.symbol + "/" + std::to_string(p.arity) +
                                     " has an arity no module of that symbol ever has",
                                 p.symbol);
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::vector<Token> table_refs_;
    std::vector<PatternUse> pattern_uses_;
    std::multimap<std::string, std::size_t> template_uses_;
};

}  // namespace

LSystemDefinition parse(std::string_view text) {
    Parser p(Lexer(text).run());
    return p.definition();
}

LSystemDefinition parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

ModuleString parse_word(std::string_view text, Topology topology) {
    Parser p(Lexer(text).run());
    return p.word_only(topology);
}

}  // namespace lsys
