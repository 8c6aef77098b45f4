#pragma once

#include "microtter/clause.hpp"
#include "microtter/unify.hpp"

#include <unordered_set>

namespace microtter {

/// A demodulator is an oriented positive unit equality. The copy id is the
/// separate clause number the rewrite copy received, as printed in the
/// "copy,source" pairs of proof listings.
struct Demodulator {
    ClauseId copy_id = 0;
    ClauseId source_id = 0;
    Term lhs;
    Term rhs;
};

class step_cap_exceeded : public std::runtime_error {
public:
    explicit step_cap_exceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Active rewrite rules, looked up through a small (root symbol, first
/// argument symbol) fingerprint so dense rule sets stay cheap to scan.
class DemodulatorSet {
public:
    static constexpr std::int64_t wildcard = -1;

    void install(Demodulator d) {
        std::size_t idx = rules_.size();
        fingerprints_.push_back(fingerprint(d.lhs));
        rules_.push_back(std::move(d));
        order_.push_back(idx);
    }

    void remove_by_source(ClauseId source_id) {
        for (std::size_t i = 0; i < rules_.size(); ++i)
            if (rules_[i].source_id == source_id) removed_.insert(rules_[i].copy_id);
    }

    bool empty() const { return rules_.size() == removed_.size(); }
    std::size_t size() const { return rules_.size() - removed_.size(); }

    /// First applicable rule at the root of t, lowest copy id first.
    const Demodulator* find_root_rule(const Term& t, Substitution& binding) const {
        if (t.is_variable()) return nullptr;
        auto fp = fingerprint(t);
        for (std::size_t i : order_) {
            const Demodulator& d = rules_[i];
            if (removed_.count(d.copy_id)) continue;
            const auto& rf = fingerprints_[i];
            if (rf.first != fp.first) continue;
            if (rf.second != wildcard && rf.second != fp.second) continue;
            if (d.lhs.weight() > t.weight()) continue;
            binding = Substitution{};
            if (match_extend(binding, d.lhs, t)) return &d;
        }
        return nullptr;
    }

    /// True if any rule's left side matches some subterm of t.
    bool has_redex(const Term& t) const {
        Substitution s;
        if (find_root_rule(t, s)) return true;
        if (t.is_variable()) return false;
        for (const Term& a : t.args())
            if (has_redex(a)) return true;
        return false;
    }

    std::vector<Demodulator> active_rules() const {
        std::vector<Demodulator> out;
        for (std::size_t i : order_)
            if (!removed_.count(rules_[i].copy_id)) out.push_back(rules_[i]);
        return out;
    }

private:
    static std::pair<std::int64_t, std::int64_t> fingerprint(const Term& t) {
        std::int64_t f0 = static_cast<std::int64_t>(t.symbol());
        std::int64_t f1 = wildcard;
        if (!t.args().empty()) {
            const Term& a0 = t.arg(0);
            f1 = a0.is_variable() ? wildcard : static_cast<std::int64_t>(a0.symbol());
        }
        return {f0, f1};
    }

    std::vector<Demodulator> rules_;
    std::vector<std::pair<std::int64_t, std::int64_t>> fingerprints_;
    std::vector<std::size_t> order_; // copy-id order (installation order)
    std::unordered_set<ClauseId> removed_;
};

namespace detail {

/// Rewrite the leftmost-outermost redex, if any.
inline std::optional<Term> rewrite_lmo(const Term& t, const DemodulatorSet& demods,
                                       ClauseId& applied) {
    Substitution binding;
    if (const Demodulator* d = demods.find_root_rule(t, binding)) {
        applied = d->copy_id;
        return apply_substitution(d->rhs, binding);
    }
    if (t.is_variable()) return std::nullopt;
    for (std::size_t i = 0; i < t.args().size(); ++i) {
        if (auto r = rewrite_lmo(t.arg(i), demods, applied)) {
            std::vector<Term> args(t.args().begin(), t.args().end());
            args[i] = std::move(*r);
            return Term::make(t.symbol(), std::move(args));
        }
    }
    return std::nullopt;
}

} // namespace detail

/// Leftmost-outermost normalization. Applied rule copy ids are appended to
/// `trace`; `steps` accumulates against the per-clause cap.
inline Term demodulate_term(Term t, const DemodulatorSet& demods, std::vector<ClauseId>& trace,
                            std::uint32_t& steps, std::uint32_t step_cap) {
    if (demods.empty()) return t;
    ClauseId applied = 0;
    while (auto r = detail::rewrite_lmo(t, demods, applied)) {
        if (++steps > step_cap)
            throw step_cap_exceeded("demodulation exceeded " + std::to_string(step_cap) +
                                    " rewrites in one clause");
        trace.push_back(applied);
        t = std::move(*r);
    }
    return t;
}

/// Demodulate every literal (both sides, $ans arguments included), returning
/// the applied copy ids in application order.
inline std::vector<ClauseId> demodulate_clause(Clause& c, const DemodulatorSet& demods,
                                               std::uint32_t step_cap) {
    std::vector<ClauseId> trace;
    std::uint32_t steps = 0;
    for (Literal& l : c.literals)
        for (Term& t : l.args) t = demodulate_term(t, demods, trace, steps, step_cap);
    return trace;
}

/// Single-shot form of the spec operation: normal form plus trace.
struct DemodResult {
    Term term;
    std::vector<ClauseId> applied;
};

inline DemodResult demodulate(const Term& t, const DemodulatorSet& demods,
                              std::uint32_t step_cap = 10000) {
    DemodResult out{t, {}};
    std::uint32_t steps = 0;
    out.term = demodulate_term(t, demods, out.applied, steps, step_cap);
    return out;
}

} // namespace microtter
