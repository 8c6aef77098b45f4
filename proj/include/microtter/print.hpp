#pragma once

#include "microtter/clause.hpp"

#include <string>

namespace microtter {

/// OTTER's variable naming: indices 0..5 print as x y z u v w, then v6, v7...
/// (all of which parse back as variables under the u-z convention).
inline std::string variable_name(VarId v) {
    static const char* names[6] = {"x", "y", "z", "u", "v", "w"};
    if (v < 6) return names[v];
    return "v" + std::to_string(v);
}

namespace detail {

inline void bird_print_rec(const Term& t, const Signature& sig, bool parenthesize_apps,
                           std::string& out) {
    if (t.is_variable()) {
        out += variable_name(t.var());
        return;
    }
    if (t.symbol() == sig.application()) {
        if (parenthesize_apps) out += '(';
        bird_print_rec(t.arg(0), sig, false, out);
        out += ' ';
        bird_print_rec(t.arg(1), sig, true, out);
        if (parenthesize_apps) out += ')';
        return;
    }
    out += sig.name(t.symbol());
    if (!t.args().empty()) {
        out += '(';
        for (std::size_t i = 0; i < t.args().size(); ++i) {
            if (i) out += ',';
            bird_print_rec(t.arg(i), sig, false, out);
        }
        out += ')';
    }
}

inline void prefix_print_rec(const Term& t, const Signature& sig, std::string& out) {
    if (t.is_variable()) {
        out += variable_name(t.var());
        return;
    }
    out += sig.name(t.symbol());
    if (!t.args().empty()) {
        out += '(';
        for (std::size_t i = 0; i < t.args().size(); ++i) {
            if (i) out += ',';
            prefix_print_rec(t.arg(i), sig, out);
        }
        out += ')';
    }
}

} // namespace detail

/// Application rendered as juxtaposition, left-associative; a right operand
/// that is itself an application gets parentheses.
inline std::string bird_print(const Term& t, const Signature& sig) {
    std::string out;
    detail::bird_print_rec(t, sig, false, out);
    return out;
}

/// Plain prefix rendering with the explicit a(.,.) application symbol.
inline std::string prefix_print(const Term& t, const Signature& sig) {
    std::string out;
    detail::prefix_print_rec(t, sig, out);
    return out;
}

inline std::string render_term(const Term& t, const Signature& sig, bool bird) {
    return bird ? bird_print(t, sig) : prefix_print(t, sig);
}

inline std::string render_literal(const Literal& l, const Signature& sig, bool bird) {
    if (l.is_equality) {
        std::string lhs = render_term(l.lhs(), sig, bird);
        std::string rhs = render_term(l.rhs(), sig, bird);
        const char* op = l.positive ? (bird ? "=" : " = ") : (bird ? "!=" : " != ");
        return lhs + op + rhs;
    }
    std::string out;
    if (!l.positive) out += '-';
    out += sig.name(l.predicate);
    if (!l.args.empty()) {
        out += '(';
        for (std::size_t i = 0; i < l.args.size(); ++i) {
            if (i) out += ',';
            out += render_term(l.args[i], sig, bird);
        }
        out += ')';
    }
    return out;
}

/// Literal list without id or justification; the empty clause prints as $F.
inline std::string render_clause(const Clause& c, const Signature& sig, bool bird) {
    if (c.literals.empty()) return "$F";
    std::string out;
    for (std::size_t i = 0; i < c.literals.size(); ++i) {
        if (i) out += bird ? "|" : " | ";
        out += render_literal(c.literals[i], sig, bird);
    }
    return out;
}

namespace detail {

inline std::string ref(const EqSideRef& r) {
    return std::to_string(r.id) + "." + std::to_string(r.literal) + "." + std::to_string(r.side);
}
inline std::string ref(const PosRef& r) {
    std::string out = std::to_string(r.id) + "." + std::to_string(r.pos.literal);
    for (unsigned p : r.pos.path) out += "." + std::to_string(p);
    return out;
}

} // namespace detail

inline std::string render_justification(const Justification& j) {
    std::string out;
    if (const auto* pf = std::get_if<JustParaFrom>(&j.step)) {
        out = "para_from," + detail::ref(pf->from) + "," + detail::ref(pf->into);
    } else if (const auto* pi = std::get_if<JustParaInto>(&j.step)) {
        out = "para_into," + detail::ref(pi->into) + "," + detail::ref(pi->from);
    } else if (const auto* ur = std::get_if<JustUR>(&j.step)) {
        out = "ur," + std::to_string(ur->given);
        bool skipped_given = ur->given == ur->nucleus;
        if (ur->nucleus != ur->given) out += "," + std::to_string(ur->nucleus);
        for (ClauseId s : ur->satellites) {
            if (!skipped_given && s == ur->given) {
                skipped_given = true;
                continue;
            }
            out += "," + std::to_string(s);
        }
    } else if (const auto* b = std::get_if<JustBinary>(&j.step)) {
        out = "binary," + std::to_string(b->id1) + "." + std::to_string(b->lit1) + "," +
              std::to_string(b->id2) + "." + std::to_string(b->lit2);
    } else if (const auto* bd = std::get_if<JustBackDemod>(&j.step)) {
        out = "back_demod," + std::to_string(bd->target);
    }
    if (!j.demod.empty()) {
        out += out.empty() ? "demod" : ",demod";
        for (ClauseId d : j.demod) out += "," + std::to_string(d);
    }
    if (!j.unit_del.empty()) {
        out += out.empty() ? "unit_del" : ",unit_del";
        for (ClauseId u : j.unit_del) out += "," + std::to_string(u);
    }
    return out;
}

/// One proof-listing line: "id [just] clause." with the demodulator copy id
/// prefixed as "copy,id" when requested.
inline std::string render_clause_line(const Clause& c, const Signature& sig, bool bird,
                                      std::optional<ClauseId> twin = std::nullopt) {
    std::string out;
    if (twin) out += std::to_string(*twin) + ",";
    out += std::to_string(c.id) + " [" + render_justification(c.justification) + "] " +
           render_clause(c, sig, bird) + ".";
    return out;
}

} // namespace microtter
