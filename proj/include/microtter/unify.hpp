#pragma once

#include "microtter/term.hpp"

namespace microtter {

/// Extend s to unify t1 and t2. On failure s is left in an unspecified
/// state, so callers compose on a scratch copy when they need rollback.
inline bool unify_extend(Substitution& s, const Term& t1, const Term& t2) {
    Term a = apply_substitution(t1, s);
    Term b = apply_substitution(t2, s);
    if (a == b) return true;
    if (a.is_variable()) {
        if (b.contains_var(a.var())) return false; // occurs check
        s.bind_resolved(a.var(), b);
        return true;
    }
    if (b.is_variable()) {
        if (a.contains_var(b.var())) return false;
        s.bind_resolved(b.var(), a);
        return true;
    }
    if (a.symbol() != b.symbol() || a.args().size() != b.args().size()) return false;
    for (std::size_t i = 0; i < a.args().size(); ++i)
        if (!unify_extend(s, a.arg(i), b.arg(i))) return false;
    return true;
}

/// Most general unifier with occurs check, or nullopt.
inline std::optional<Substitution> unify(const Term& t1, const Term& t2) {
    Substitution s;
    if (!unify_extend(s, t1, t2)) return std::nullopt;
    return s;
}

/// Extend s so that pattern instantiated by s equals target; binds only
/// pattern variables and never instantiates the target.
inline bool match_extend(Substitution& s, const Term& pattern, const Term& target) {
    if (pattern.is_variable()) {
        if (const Term* bound = s.find(pattern.var())) return *bound == target;
        s.bind_raw(pattern.var(), target);
        return true;
    }
    if (target.is_variable()) return false;
    if (pattern.symbol() != target.symbol() || pattern.args().size() != target.args().size())
        return false;
    for (std::size_t i = 0; i < pattern.args().size(); ++i)
        if (!match_extend(s, pattern.arg(i), target.arg(i))) return false;
    return true;
}

/// One-way matching: substitution over pattern variables only, or nullopt.
inline std::optional<Substitution> match(const Term& pattern, const Term& target) {
    Substitution s;
    if (!match_extend(s, pattern, target)) return std::nullopt;
    return s;
}

} // namespace microtter
