#pragma once

#include "microtter/term.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <variant>

namespace microtter {

/// Signed literal: an equality lhs (=|!=) rhs, or a predicate atom such as
/// $ans(t). Equality atoms store their sides as args[0], args[1].
struct Literal {
    bool positive = true;
    bool is_equality = false;
    SymbolId predicate = 0; // meaningful when !is_equality
    std::vector<Term> args;

    static Literal equality(bool positive, Term lhs, Term rhs) {
        Literal l;
        l.positive = positive;
        l.is_equality = true;
        l.args = {std::move(lhs), std::move(rhs)};
        return l;
    }
    static Literal predicate_atom(bool positive, SymbolId pred, std::vector<Term> args) {
        Literal l;
        l.positive = positive;
        l.predicate = pred;
        l.args = std::move(args);
        return l;
    }

    const Term& lhs() const { return args[0]; }
    const Term& rhs() const { return args[1]; }

    bool operator==(const Literal& o) const {
        return positive == o.positive && is_equality == o.is_equality &&
               (is_equality || predicate == o.predicate) && args == o.args;
    }

    Literal apply(const Substitution& s) const {
        Literal out = *this;
        for (Term& t : out.args) t = apply_substitution(t, s);
        return out;
    }
};

inline bool is_ans_literal(const Literal& l, const Signature& sig) {
    return !l.is_equality && l.predicate == sig.ans();
}

/// Argument path into a literal's atom, 1-based as printed in proofs:
/// the first step selects an atom argument (equality: 1 = lhs, 2 = rhs),
/// subsequent steps select compound-term arguments.
struct Position {
    unsigned literal = 1; // 1-based literal index
    std::vector<unsigned> path;

    bool operator==(const Position& o) const { return literal == o.literal && path == o.path; }
};

inline const Term* subterm_at(const Literal& lit, std::span<const unsigned> path) {
    if (path.empty() || path[0] == 0 || path[0] > lit.args.size()) return nullptr;
    const Term* t = &lit.args[path[0] - 1];
    for (std::size_t i = 1; i < path.size(); ++i) {
        if (t->is_variable() || path[i] == 0 || path[i] > t->args().size()) return nullptr;
        t = &t->arg(path[i] - 1);
    }
    return t;
}

inline Term replace_in_term(const Term& t, std::span<const unsigned> path, std::size_t depth,
                            const Term& replacement) {
    if (depth == path.size()) return replacement;
    std::vector<Term> args(t.args().begin(), t.args().end());
    unsigned idx = path[depth] - 1;
    args[idx] = replace_in_term(t.arg(idx), path, depth + 1, replacement);
    return Term::make(t.symbol(), std::move(args));
}

inline Literal replace_at(const Literal& lit, std::span<const unsigned> path, const Term& replacement) {
    Literal out = lit;
    unsigned idx = path[0] - 1;
    out.args[idx] = replace_in_term(lit.args[idx], path.subspan(1), 0, replacement);
    return out;
}

// --- Justifications -------------------------------------------------------

struct JustInput {};
/// from-side reference id.lit.side (side 1 = lhs of the equality, 2 = rhs)
struct EqSideRef {
    ClauseId id = 0;
    unsigned literal = 1;
    unsigned side = 1;
};
/// into-side reference id.lit.path
struct PosRef {
    ClauseId id = 0;
    Position pos;
};
struct JustParaFrom {
    EqSideRef from;
    PosRef into;
};
struct JustParaInto {
    PosRef into;
    EqSideRef from;
};
struct JustUR {
    ClauseId given = 0;   // listed first, as the paper prints it
    ClauseId nucleus = 0;
    unsigned target_literal = 1;          // surviving literal of the nucleus
    std::vector<ClauseId> satellites;     // one per resolved literal, in literal order
};
struct JustBinary {
    ClauseId id1 = 0;
    unsigned lit1 = 1;
    ClauseId id2 = 0;
    unsigned lit2 = 1;
};
struct JustBackDemod {
    ClauseId target = 0;
};

struct Justification {
    std::variant<JustInput, JustParaFrom, JustParaInto, JustUR, JustBinary, JustBackDemod> step;
    std::vector<ClauseId> demod;    // demodulator copy ids, in application order
    std::vector<ClauseId> unit_del; // unit ids used by unit deletion

    bool is_input() const { return std::holds_alternative<JustInput>(step); }
};

// --- Clauses ---------------------------------------------------------------

struct Clause {
    ClauseId id = 0;
    std::vector<Literal> literals;
    Justification justification;
    std::uint32_t weight = 0;

    bool empty() const { return literals.empty(); }

    std::size_t non_ans_count(const Signature& sig) const {
        std::size_t n = 0;
        for (const Literal& l : literals)
            if (!is_ans_literal(l, sig)) ++n;
        return n;
    }
    /// A unit has exactly one literal besides any $ans literals.
    bool is_unit(const Signature& sig) const { return non_ans_count(sig) == 1; }
    /// Success clauses carry only $ans literals (or nothing: $F).
    bool is_success(const Signature& sig) const { return non_ans_count(sig) == 0; }

    /// 1-based index of the single non-$ans literal of a unit.
    unsigned unit_literal_index(const Signature& sig) const {
        for (std::size_t i = 0; i < literals.size(); ++i)
            if (!is_ans_literal(literals[i], sig)) return static_cast<unsigned>(i + 1);
        return 0;
    }
};

/// Symbol-count weight: every symbol and variable occurrence counts one,
/// the equality sign does not count, $ans literals count zero.
inline std::uint32_t literal_weight(const Literal& l, const Signature& sig) {
    if (is_ans_literal(l, sig)) return 0;
    std::uint32_t w = l.is_equality ? 0 : 1;
    for (const Term& t : l.args) w += t.weight();
    return w;
}

inline std::uint32_t clause_weight(const Clause& c, const Signature& sig) {
    std::uint32_t w = 0;
    for (const Literal& l : c.literals) w += literal_weight(l, sig);
    return w;
}

inline std::optional<VarId> clause_max_var(const Clause& c) {
    std::optional<VarId> m;
    for (const Literal& l : c.literals)
        for (const Term& t : l.args)
            if (auto v = t.max_var(); v && (!m || *v > *m)) m = *v;
    return m;
}

namespace detail {
inline void collect_vars(const Term& t, std::vector<VarId>& order, std::vector<bool>& seen) {
    if (t.is_ground()) return;
    if (t.is_variable()) {
        if (t.var() >= seen.size()) seen.resize(t.var() + 1, false);
        if (!seen[t.var()]) {
            seen[t.var()] = true;
            order.push_back(t.var());
        }
        return;
    }
    for (const Term& a : t.args()) collect_vars(a, order, seen);
}
} // namespace detail

/// Renumber variables contiguously from 0 in order of first occurrence.
inline Clause normalize_variables(Clause c) {
    std::vector<VarId> order;
    std::vector<bool> seen;
    for (const Literal& l : c.literals)
        for (const Term& t : l.args) detail::collect_vars(t, order, seen);
    bool identity = true;
    for (std::size_t i = 0; i < order.size(); ++i)
        if (order[i] != i) identity = false;
    if (identity) return c;
    Substitution s;
    for (std::size_t i = 0; i < order.size(); ++i)
        s.bind_resolved(order[i], Term::variable(static_cast<VarId>(i)));
    for (Literal& l : c.literals) l = l.apply(s);
    return c;
}

/// Variants of the inputs sharing no variable index: c1 is untouched, c2 is
/// shifted above c1's variables.
inline std::pair<Clause, Clause> rename_apart(const Clause& c1, const Clause& c2) {
    auto m = clause_max_var(c1);
    if (!m) return {c1, c2};
    VarId offset = *m + 1;
    Clause shifted = c2;
    for (Literal& l : shifted.literals)
        for (Term& t : l.args) t = shift_variables(t, offset);
    return {c1, shifted};
}

/// Order-sensitive variant key: two clauses get the same key exactly when
/// their literal sequences are equal up to renaming of variables.
inline std::string variant_key(const Clause& c) {
    Clause n = normalize_variables(c);
    std::string key;
    std::function<void(const Term&)> emit = [&](const Term& t) {
        if (t.is_variable()) {
            key += '#';
            key += std::to_string(t.var());
            return;
        }
        key += 's';
        key += std::to_string(t.symbol());
        if (!t.args().empty()) {
            key += '(';
            for (const Term& a : t.args()) {
                emit(a);
                key += ',';
            }
            key += ')';
        }
    };
    for (const Literal& l : n.literals) {
        key += l.positive ? '+' : '-';
        if (l.is_equality) {
            key += '=';
        } else {
            key += 'p';
            key += std::to_string(l.predicate);
        }
        for (const Term& t : l.args) {
            emit(t);
            key += ';';
        }
        key += '|';
    }
    return key;
}

} // namespace microtter
