#pragma once

// Independent combinator-rewriting oracle. This module deliberately shares
// only the term representation with the prover: it has its own matcher and
// rewriting loop, so agreement between the two is meaningful evidence.

#include "microtter/term.hpp"

#include <map>

namespace microtter::oracle {

struct RewriteRule {
    Term lhs;
    Term rhs;
};

struct RuleSet {
    std::string name;
    std::vector<RewriteRule> rules;

    /// The consistent system: unary constant-function former k(.),
    /// projections, pairing, pairwise application, abstraction, the equal
    /// case of the equality axiom, and the identity combinator.
    static RuleSet trc(Signature& sig) {
        RuleSet rs;
        rs.name = "TRC";
        SymbolId a = sig.application();
        SymbolId k = sig.intern("k", 1, SymbolKind::plain_function);
        SymbolId p1 = sig.intern("p1", 0, SymbolKind::constant);
        SymbolId p2 = sig.intern("p2", 0, SymbolKind::constant);
        SymbolId pair = sig.intern("pair", 2, SymbolKind::plain_function);
        SymbolId abst = sig.intern("abst", 0, SymbolKind::constant);
        SymbolId eq = sig.intern("eq", 0, SymbolKind::constant);
        SymbolId id = sig.intern("id", 0, SymbolKind::constant);
        Term x = Term::variable(0), y = Term::variable(1), z = Term::variable(2);
        auto ap = [&](Term f, Term v) { return Term::make(a, {std::move(f), std::move(v)}); };
        auto c = [&](SymbolId s) { return Term::make(s); };
        auto kf = [&](Term t) { return Term::make(k, {std::move(t)}); };
        auto pr = [&](Term l, Term r) { return Term::make(pair, {std::move(l), std::move(r)}); };
        rs.rules.push_back({ap(kf(x), y), x});                                  // I
        rs.rules.push_back({ap(c(p1), pr(x, y)), x});                           // II
        rs.rules.push_back({ap(c(p2), pr(x, y)), y});                           // II
        rs.rules.push_back({pr(ap(c(p1), x), ap(c(p2), x)), x});                // III
        rs.rules.push_back({ap(pr(x, y), z), pr(ap(x, z), ap(y, z))});          // IV
        rs.rules.push_back({ap(ap(ap(c(abst), x), y), z),
                            ap(ap(x, kf(z)), ap(y, z))});                       // V
        rs.rules.push_back({ap(c(eq), pr(x, x)), c(p1)});                       // VI, equal case
        rs.rules.push_back({ap(c(id), x), x});                                  // Id x = x
        return rs;
    }

    /// The inconsistent variant: k is a constant combinator.
    static RuleSet trcstar(Signature& sig) {
        RuleSet rs;
        rs.name = "TRCstar";
        SymbolId a = sig.application();
        SymbolId k = sig.intern("k", 0, SymbolKind::constant);
        SymbolId p1 = sig.intern("p1", 0, SymbolKind::constant);
        SymbolId p2 = sig.intern("p2", 0, SymbolKind::constant);
        SymbolId pair = sig.intern("pair", 2, SymbolKind::plain_function);
        SymbolId abst = sig.intern("abst", 0, SymbolKind::constant);
        SymbolId eq = sig.intern("eq", 0, SymbolKind::constant);
        Term x = Term::variable(0), y = Term::variable(1), z = Term::variable(2);
        auto ap = [&](Term f, Term v) { return Term::make(a, {std::move(f), std::move(v)}); };
        auto c = [&](SymbolId s) { return Term::make(s); };
        auto pr = [&](Term l, Term r) { return Term::make(pair, {std::move(l), std::move(r)}); };
        rs.rules.push_back({ap(ap(c(k), x), y), x});                            // I*
        rs.rules.push_back({ap(c(p1), pr(x, y)), x});                           // II
        rs.rules.push_back({ap(c(p2), pr(x, y)), y});                           // II
        rs.rules.push_back({pr(ap(c(p1), x), ap(c(p2), x)), x});                // III
        rs.rules.push_back({ap(pr(x, y), z), pr(ap(x, z), ap(y, z))});          // IV
        rs.rules.push_back({ap(ap(ap(c(abst), x), y), z),
                            ap(ap(x, ap(c(k), z)), ap(y, z))});                 // V*
        rs.rules.push_back({ap(c(eq), pr(x, x)), c(p1)});                       // VI, equal case
        return rs;
    }
};

namespace detail {

inline bool rule_match(const Term& pattern, const Term& target, std::map<VarId, Term>& binding) {
    if (pattern.is_variable()) {
        auto it = binding.find(pattern.var());
        if (it != binding.end()) return it->second == target;
        binding.emplace(pattern.var(), target);
        return true;
    }
    if (target.is_variable()) return false;
    if (pattern.symbol() != target.symbol() || pattern.args().size() != target.args().size())
        return false;
    for (std::size_t i = 0; i < pattern.args().size(); ++i)
        if (!rule_match(pattern.arg(i), target.arg(i), binding)) return false;
    return true;
}

inline Term instantiate(const Term& t, const std::map<VarId, Term>& binding) {
    if (t.is_variable()) return binding.at(t.var());
    if (t.is_ground()) return t;
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const Term& a : t.args()) args.push_back(instantiate(a, binding));
    return Term::make(t.symbol(), std::move(args));
}

inline std::optional<Term> rewrite_at_root(const Term& t, const RuleSet& rules) {
    for (const RewriteRule& r : rules.rules) {
        std::map<VarId, Term> binding;
        if (rule_match(r.lhs, t, binding)) return instantiate(r.rhs, binding);
    }
    return std::nullopt;
}

inline std::optional<Term> rewrite_outermost(const Term& t, const RuleSet& rules) {
    if (auto r = rewrite_at_root(t, rules)) return r;
    if (t.is_variable()) return std::nullopt;
    for (std::size_t i = 0; i < t.args().size(); ++i) {
        if (auto r = rewrite_outermost(t.arg(i), rules)) {
            std::vector<Term> args(t.args().begin(), t.args().end());
            args[i] = std::move(*r);
            return Term::make(t.symbol(), std::move(args));
        }
    }
    return std::nullopt;
}

inline std::optional<Term> rewrite_innermost(const Term& t, const RuleSet& rules) {
    if (!t.is_variable()) {
        for (std::size_t i = 0; i < t.args().size(); ++i) {
            if (auto r = rewrite_innermost(t.arg(i), rules)) {
                std::vector<Term> args(t.args().begin(), t.args().end());
                args[i] = std::move(*r);
                return Term::make(t.symbol(), std::move(args));
            }
        }
    }
    return rewrite_at_root(t, rules);
}

} // namespace detail

struct NormalizeResult {
    bool capped = false;
    Term term;           // the normal form, or the last term when capped
    std::uint32_t steps = 0;
};

/// Deterministic leftmost-outermost rewriting; self-applicative TRC* terms
/// are expected to diverge, which the cap turns into capped = true.
inline NormalizeResult normalize(Term t, const RuleSet& rules, std::uint32_t cap = 10000) {
    NormalizeResult out;
    out.term = std::move(t);
    while (auto r = detail::rewrite_outermost(out.term, rules)) {
        out.term = std::move(*r);
        if (++out.steps >= cap) {
            out.capped = true;
            return out;
        }
    }
    return out;
}

/// Alternative strategy used only by the confluence spot-checks.
inline NormalizeResult normalize_innermost(Term t, const RuleSet& rules,
                                           std::uint32_t cap = 10000) {
    NormalizeResult out;
    out.term = std::move(t);
    while (auto r = detail::rewrite_innermost(out.term, rules)) {
        out.term = std::move(*r);
        if (++out.steps >= cap) {
            out.capped = true;
            return out;
        }
    }
    return out;
}

enum class ExtensionalResult { equal, distinct, unknown };

/// Apply both sides to n_args fresh constants and compare normal forms.
/// This certifies ground instances only; the prover supplies the general
/// statement.
inline ExtensionalResult check_extensional(const Term& lhs, const Term& rhs, unsigned n_args,
                                           const RuleSet& rules, Signature& sig,
                                           std::uint32_t cap = 10000) {
    Term l = lhs, r = rhs;
    for (unsigned i = 0; i < n_args; ++i) {
        Term c = Term::make(sig.fresh_constant());
        l = Term::make(sig.application(), {l, c});
        r = Term::make(sig.application(), {r, c});
    }
    NormalizeResult nl = normalize(l, rules, cap);
    NormalizeResult nr = normalize(r, rules, cap);
    if (nl.capped || nr.capped) return ExtensionalResult::unknown;
    return nl.term == nr.term ? ExtensionalResult::equal : ExtensionalResult::distinct;
}

enum class AnswerVerdict { verified, refuted, unknown };

/// Check a diagonal-combinator answer: t applied to two fresh constants must
/// reduce to the first constant applied to itself.
inline AnswerVerdict verify_f_answer(const Term& answer, Signature& sig,
                                     std::uint32_t cap = 10000) {
    RuleSet rules = RuleSet::trcstar(sig);
    SymbolId c1 = sig.fresh_constant();
    SymbolId c2 = sig.fresh_constant();
    SymbolId a = sig.application();
    Term applied = Term::make(
        a, {Term::make(a, {answer, Term::make(c1)}), Term::make(c2)});
    NormalizeResult n = normalize(applied, rules, cap);
    if (n.capped) return AnswerVerdict::unknown;
    Term want = Term::make(a, {Term::make(c1), Term::make(c1)});
    return n.term == want ? AnswerVerdict::verified : AnswerVerdict::refuted;
}

/// Check a self-referential answer t against t = eq pair(k t, k p2). Both
/// sides are rewritten under the cap; divergence yields unknown, which is
/// reported but not treated as failure (the contradiction run is the
/// authoritative check).
inline AnswerVerdict verify_s_answer(const Term& answer, Signature& sig,
                                     std::uint32_t cap = 10000) {
    RuleSet rules = RuleSet::trcstar(sig);
    SymbolId a = sig.application();
    SymbolId k = *sig.lookup("k");
    SymbolId p2 = *sig.lookup("p2");
    SymbolId eq = *sig.lookup("eq");
    SymbolId pair = *sig.lookup("pair");
    Term k_t = Term::make(a, {Term::make(k), answer});
    Term k_p2 = Term::make(a, {Term::make(k), Term::make(p2)});
    Term rhs = Term::make(a, {Term::make(eq), Term::make(pair, {k_t, k_p2})});
    NormalizeResult nl = normalize(answer, rules, cap);
    NormalizeResult nr = normalize(rhs, rules, cap);
    if (nl.capped || nr.capped) return AnswerVerdict::unknown;
    return nl.term == nr.term ? AnswerVerdict::verified : AnswerVerdict::refuted;
}

} // namespace microtter::oracle
