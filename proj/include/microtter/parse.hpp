#pragma once

#include "microtter/clause.hpp"
#include "microtter/options.hpp"
#include "microtter/print.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <sstream>

namespace microtter {

struct ParseError : std::runtime_error {
    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                             std::to_string(column) + ": " + message),
          line(line), column(column) {}
    std::size_t line;
    std::size_t column;
};

struct ParsedInput {
    ProverOptions options;
    std::vector<Clause> usable;
    std::vector<Clause> sos;
    std::string source = "<input>";
    std::shared_ptr<Signature> signature;
};

namespace detail {

enum class Tok {
    ident, number, lparen, rparen, comma, period, pipe,
    eq, neq, gt, lbracket, rbracket, end
};

struct Token {
    Tok kind = Tok::end;
    std::string text;
    std::size_t line = 1;
    std::size_t col = 1;
    bool attached = false; // lparen directly following an identifier
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }
    Token next() {
        Token t = current_;
        advance();
        return t;
    }

private:
    static bool ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
    }

    void advance() {
        // skip whitespace and % comments
        bool prev_ident = current_.kind == Tok::ident || current_.kind == Tok::number;
        bool gap = false;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '%') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
                continue;
            }
            if (c == '\n') {
                ++line_;
                col_ = 1;
                ++pos_;
                gap = true;
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
                ++col_;
                gap = true;
                continue;
            }
            break;
        }
        current_ = Token{};
        current_.line = line_;
        current_.col = col_;
        if (pos_ >= text_.size()) {
            current_.kind = Tok::end;
            return;
        }
        char c = text_[pos_];
        auto take = [&](Tok k, std::size_t n) {
            current_.kind = k;
            current_.text = std::string(text_.substr(pos_, n));
            pos_ += n;
            col_ += n;
        };
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t n = 0;
            while (pos_ + n < text_.size() &&
                   std::isdigit(static_cast<unsigned char>(text_[pos_ + n])))
                ++n;
            // an identifier may not start with a digit, so a digit run is a number
            take(Tok::number, n);
            return;
        }
        if (ident_char(c) && !std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t n = 0;
            while (pos_ + n < text_.size() && ident_char(text_[pos_ + n])) ++n;
            take(Tok::ident, n);
            return;
        }
        switch (c) {
        case '(':
            take(Tok::lparen, 1);
            current_.attached = prev_ident && !gap;
            return;
        case ')': take(Tok::rparen, 1); return;
        case ',': take(Tok::comma, 1); return;
        case '.': take(Tok::period, 1); return;
        case '|': take(Tok::pipe, 1); return;
        case '[': take(Tok::lbracket, 1); return;
        case ']': take(Tok::rbracket, 1); return;
        case '>': take(Tok::gt, 1); return;
        case '=': take(Tok::eq, 1); return;
        case '!':
            if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
                take(Tok::neq, 2);
                return;
            }
            throw ParseError(line_, col_, "unexpected '!'");
        default:
            throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
    Token current_;
};

inline bool is_variable_name(std::string_view name) {
    char c = name[0];
    return c >= 'u' && c <= 'z';
}

/// Terms, literals and clauses in the OTTER dialect: juxtaposition is the
/// binary application a, name(args) declares a plain function by use, and
/// identifiers starting with u-z are variables.
class TermParser {
public:
    TermParser(Lexer& lex, Signature& sig) : lex_(lex), sig_(sig) {}

    Term parse_term(std::map<std::string, VarId>& vars) {
        Term t = parse_primary(vars);
        while (starts_primary(lex_.peek()))
            t = Term::make(sig_.application(), {t, parse_primary(vars)});
        return t;
    }

    Literal parse_literal(std::map<std::string, VarId>& vars) {
        Term lhs = parse_term(vars);
        const Token& t = lex_.peek();
        if (t.kind == Tok::eq || t.kind == Tok::neq) {
            bool positive = t.kind == Tok::eq;
            lex_.next();
            Term rhs = parse_term(vars);
            return Literal::equality(positive, std::move(lhs), std::move(rhs));
        }
        // bare atom: only the $ans / $F predicates
        if (!lhs.is_variable()) {
            SymbolKind k = sig_.info(lhs.symbol()).kind;
            if (k == SymbolKind::answer_predicate)
                return Literal::predicate_atom(true, lhs.symbol(),
                                               {lhs.args().begin(), lhs.args().end()});
            if (k == SymbolKind::false_predicate)
                return Literal::predicate_atom(true, lhs.symbol(), {});
        }
        throw ParseError(t.line, t.col, "expected '=' or '!=' after term");
    }

    /// Literals separated by '|' up to the closing period.
    Clause parse_clause_body() {
        Clause c;
        std::map<std::string, VarId> vars;
        for (;;) {
            c.literals.push_back(parse_literal(vars));
            const Token& t = lex_.peek();
            if (t.kind == Tok::pipe) {
                lex_.next();
                continue;
            }
            if (t.kind == Tok::period) {
                lex_.next();
                break;
            }
            throw ParseError(t.line, t.col, "expected '|' or '.' after literal");
        }
        // $F alone denotes the empty clause
        if (c.literals.size() == 1 && !c.literals[0].is_equality &&
            c.literals[0].predicate == sig_.falsum())
            c.literals.clear();
        return c;
    }

private:
    static bool starts_primary(const Token& t) {
        return t.kind == Tok::ident || (t.kind == Tok::lparen && !t.attached);
    }

    SymbolKind kind_for(const std::string& name, unsigned arity) {
        if (name == "n" || name == "b" || name == "c") return SymbolKind::skolem;
        return arity == 0 ? SymbolKind::constant : SymbolKind::plain_function;
    }

    Term parse_primary(std::map<std::string, VarId>& vars) {
        Token t = lex_.next();
        if (t.kind == Tok::lparen) {
            Term inner = parse_term(vars);
            expect(Tok::rparen, "')'");
            return inner;
        }
        if (t.kind != Tok::ident)
            throw ParseError(t.line, t.col, "expected a term");
        bool call = lex_.peek().kind == Tok::lparen && lex_.peek().attached;
        if (is_variable_name(t.text)) {
            if (call)
                throw ParseError(t.line, t.col, "variable '" + t.text + "' used as a function");
            auto [it, fresh] = vars.emplace(t.text, static_cast<VarId>(vars.size()));
            (void)fresh;
            return Term::variable(it->second);
        }
        if (!call) {
            SymbolId sym = intern_checked(t, 0);
            return Term::make(sym);
        }
        lex_.next(); // consume '('
        std::vector<Term> args;
        if (lex_.peek().kind != Tok::rparen) {
            for (;;) {
                args.push_back(parse_term(vars));
                if (lex_.peek().kind == Tok::comma) {
                    lex_.next();
                    continue;
                }
                break;
            }
        }
        expect(Tok::rparen, "')'");
        SymbolId sym = intern_checked(t, static_cast<unsigned>(args.size()));
        if (sym == sig_.application())
            return Term::make(sig_.application(), std::move(args));
        return Term::make(sym, std::move(args));
    }

    SymbolId intern_checked(const Token& t, unsigned arity) {
        try {
            return sig_.intern(t.text, arity, kind_for(t.text, arity));
        } catch (const arity_error& e) {
            throw ParseError(t.line, t.col, e.what());
        }
    }

    void expect(Tok kind, const char* what) {
        Token t = lex_.next();
        if (t.kind != kind)
            throw ParseError(t.line, t.col, std::string("expected ") + what);
    }

    Lexer& lex_;
    Signature& sig_;
};

inline std::uint32_t parse_uint(const Token& t) {
    if (t.kind != Tok::number)
        throw ParseError(t.line, t.col, "expected a number");
    unsigned long long v = std::stoull(t.text);
    if (v > std::numeric_limits<std::uint32_t>::max())
        throw ParseError(t.line, t.col, "number out of range");
    return static_cast<std::uint32_t>(v);
}

inline void expect_punct(Lexer& lex, Tok kind, const char* what) {
    Token t = lex.next();
    if (t.kind != kind) throw ParseError(t.line, t.col, std::string("expected ") + what);
}

} // namespace detail

/// Parse a standalone term, e.g. a CLI argument for the oracle.
inline Term parse_term(std::string_view text, Signature& sig) {
    detail::Lexer lex(text);
    detail::TermParser tp(lex, sig);
    std::map<std::string, VarId> vars;
    Term t = tp.parse_term(vars);
    const auto& rest = lex.peek();
    if (rest.kind != detail::Tok::end && rest.kind != detail::Tok::period)
        throw ParseError(rest.line, rest.col, "trailing input after term");
    return t;
}

/// Parse an OTTER-dialect input file: set/assign directives, an optional
/// precedence(...) directive, and list(usable)/list(sos) clause blocks.
inline ParsedInput parse(std::string_view text, std::string source_name = "<input>") {
    ParsedInput out;
    out.source = std::move(source_name);
    out.signature = std::make_shared<Signature>();
    Signature& sig = *out.signature;

    detail::Lexer lex(text);
    detail::TermParser tp(lex, sig);

    static const char* flag_names[] = {"knuth_bendix",         "ur_res",
                                       "unit_deletion",        "para_from_units_only",
                                       "para_into_units_only", "bird_print"};

    std::vector<Clause>* current_list = nullptr;
    while (lex.peek().kind != detail::Tok::end) {
        detail::Token head = lex.peek();
        if (head.kind == detail::Tok::ident && head.text == "set" && current_list == nullptr) {
            lex.next();
            detail::expect_punct(lex, detail::Tok::lparen, "'('");
            detail::Token flag = lex.next();
            bool known = false;
            for (const char* f : flag_names)
                if (flag.kind == detail::Tok::ident && flag.text == f) known = true;
            if (!known)
                throw ParseError(flag.line, flag.col, "unknown flag '" + flag.text + "'");
            if (flag.text == "knuth_bendix") out.options.knuth_bendix = true;
            else if (flag.text == "ur_res") out.options.ur_res = true;
            else if (flag.text == "unit_deletion") out.options.unit_deletion = true;
            else if (flag.text == "para_from_units_only") out.options.para_from_units_only = true;
            else if (flag.text == "para_into_units_only") out.options.para_into_units_only = true;
            else if (flag.text == "bird_print") out.options.bird_print = true;
            detail::expect_punct(lex, detail::Tok::rparen, "')'");
            detail::expect_punct(lex, detail::Tok::period, "'.'");
            continue;
        }
        if (head.kind == detail::Tok::ident && head.text == "assign" && current_list == nullptr) {
            lex.next();
            detail::expect_punct(lex, detail::Tok::lparen, "'('");
            detail::Token param = lex.next();
            detail::expect_punct(lex, detail::Tok::comma, "','");
            std::uint32_t value = detail::parse_uint(lex.next());
            detail::expect_punct(lex, detail::Tok::rparen, "')'");
            detail::expect_punct(lex, detail::Tok::period, "'.'");
            if (param.text == "max_mem") out.options.max_retained = value;
            else if (param.text == "max_weight") out.options.max_weight = value;
            else if (param.text == "pick_given_ratio") out.options.pick_given_ratio = value;
            else if (param.text == "max_seconds") out.options.max_seconds = value;
            else if (param.text == "demod_step_cap") out.options.demod_step_cap = value;
            else
                throw ParseError(param.line, param.col,
                                 "unknown parameter '" + param.text + "'");
            continue;
        }
        if (head.kind == detail::Tok::ident && head.text == "precedence" &&
            current_list == nullptr) {
            lex.next();
            detail::expect_punct(lex, detail::Tok::lparen, "'('");
            for (;;) {
                detail::Token name = lex.next();
                if (name.kind != detail::Tok::ident)
                    throw ParseError(name.line, name.col, "expected a symbol name");
                out.options.precedence_override.push_back(name.text);
                if (lex.peek().kind == detail::Tok::gt) {
                    lex.next();
                    continue;
                }
                break;
            }
            detail::expect_punct(lex, detail::Tok::rparen, "')'");
            detail::expect_punct(lex, detail::Tok::period, "'.'");
            continue;
        }
        if (head.kind == detail::Tok::ident && head.text == "list" && current_list == nullptr) {
            lex.next();
            detail::expect_punct(lex, detail::Tok::lparen, "'('");
            detail::Token name = lex.next();
            if (name.kind != detail::Tok::ident || (name.text != "usable" && name.text != "sos"))
                throw ParseError(name.line, name.col,
                                 "unknown list '" + name.text + "' (usable or sos)");
            detail::expect_punct(lex, detail::Tok::rparen, "')'");
            detail::expect_punct(lex, detail::Tok::period, "'.'");
            current_list = name.text == "usable" ? &out.usable : &out.sos;
            continue;
        }
        if (current_list != nullptr) {
            if (head.kind == detail::Tok::ident && head.text == "end_of_list") {
                lex.next();
                detail::expect_punct(lex, detail::Tok::period, "'.'");
                current_list = nullptr;
                continue;
            }
            // tolerate the echo prefix "0 []" (or "id []") in front of a clause
            if (head.kind == detail::Tok::number) {
                lex.next();
                if (lex.peek().kind == detail::Tok::comma) {
                    lex.next();
                    lex.next(); // second id of a demodulator pair
                }
                detail::expect_punct(lex, detail::Tok::lbracket, "'['");
                int depth = 1;
                while (depth > 0) {
                    detail::Token t = lex.next();
                    if (t.kind == detail::Tok::end)
                        throw ParseError(t.line, t.col, "unterminated '['");
                    if (t.kind == detail::Tok::lbracket) ++depth;
                    if (t.kind == detail::Tok::rbracket) --depth;
                }
            }
            current_list->push_back(tp.parse_clause_body());
            continue;
        }
        throw ParseError(head.line, head.col, "unexpected '" + head.text + "'");
    }
    if (current_list != nullptr)
        throw ParseError(0, 0, "missing end_of_list");

    for (const std::string& name : out.options.precedence_override)
        if (!sig.lookup(name))
            throw ParseError(0, 0, "precedence names unknown symbol '" + name + "'");
    return out;
}

/// Render a parsed input back to file syntax (used by the round-trip checks
/// and by `microtter corpus --dump`).
inline std::string render_input(const ParsedInput& in) {
    std::ostringstream os;
    const ProverOptions& o = in.options;
    if (o.knuth_bendix) os << "set(knuth_bendix).\n";
    if (o.ur_res) os << "set(ur_res).\n";
    if (o.unit_deletion) os << "set(unit_deletion).\n";
    if (o.para_from_units_only) os << "set(para_from_units_only).\n";
    if (o.para_into_units_only) os << "set(para_into_units_only).\n";
    if (o.bird_print) os << "set(bird_print).\n";
    ProverOptions defaults;
    if (o.max_retained != defaults.max_retained) os << "assign(max_mem," << o.max_retained << ").\n";
    if (o.max_weight != defaults.max_weight) os << "assign(max_weight," << o.max_weight << ").\n";
    if (o.pick_given_ratio != defaults.pick_given_ratio)
        os << "assign(pick_given_ratio," << o.pick_given_ratio << ").\n";
    if (o.max_seconds) os << "assign(max_seconds," << *o.max_seconds << ").\n";
    if (o.demod_step_cap != defaults.demod_step_cap)
        os << "assign(demod_step_cap," << o.demod_step_cap << ").\n";
    if (!o.precedence_override.empty()) {
        os << "precedence(";
        for (std::size_t i = 0; i < o.precedence_override.size(); ++i) {
            if (i) os << " > ";
            os << o.precedence_override[i];
        }
        os << ").\n";
    }
    auto emit_list = [&](const char* name, const std::vector<Clause>& list) {
        os << "\nlist(" << name << ").\n";
        for (const Clause& c : list)
            os << render_clause(c, *in.signature, o.bird_print) << ".\n";
        os << "end_of_list.\n";
    };
    emit_list("usable", in.usable);
    emit_list("sos", in.sos);
    return os.str();
}

} // namespace microtter
