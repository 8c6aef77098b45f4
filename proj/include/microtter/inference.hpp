#pragma once

#include "microtter/order.hpp"
#include "microtter/store.hpp"
#include "microtter/unify.hpp"

namespace microtter {

// --- unit index -------------------------------------------------------------

/// Units kept for UR-resolution, unit conflict and unit deletion. An entry's
/// literal is the single non-$ans literal of the unit clause.
class UnitIndex {
public:
    struct Entry {
        ClauseId id = 0;
        unsigned lit_index = 1;
        Literal literal;
        std::uint32_t atom_weight = 0;
        bool in_usable = false;
        bool active = true;
    };

    void add(const Clause& c, const Signature& sig, bool in_usable) {
        if (!c.is_unit(sig)) return;
        unsigned idx = c.unit_literal_index(sig);
        Entry e;
        e.id = c.id;
        e.lit_index = idx;
        e.literal = c.literals[idx - 1];
        for (const Term& t : e.literal.args) e.atom_weight += t.weight();
        e.in_usable = in_usable;
        auto& group = groups_[group_of(e.literal)];
        group.push_back(std::move(e));
        by_id_.emplace(c.id, std::make_pair(group_of(c.literals[idx - 1]), group.size() - 1));
    }

    void deactivate(ClauseId id) {
        auto it = by_id_.find(id);
        if (it != by_id_.end()) groups_[it->second.first][it->second.second].active = false;
    }

    void move_to_usable(ClauseId id) {
        auto it = by_id_.find(id);
        if (it != by_id_.end()) groups_[it->second.first][it->second.second].in_usable = true;
    }

    /// Entries of the given sign/shape in id order.
    const std::vector<Entry>& group(bool positive, bool is_equality) const {
        return groups_[index_of(positive, is_equality)];
    }

private:
    static std::size_t index_of(bool positive, bool is_equality) {
        return (positive ? 2 : 0) + (is_equality ? 1 : 0);
    }
    static std::size_t group_of(const Literal& l) { return index_of(l.positive, l.is_equality); }

    std::vector<Entry> groups_[4];
    std::unordered_map<ClauseId, std::pair<std::size_t, std::size_t>> by_id_;
};

// --- helpers ----------------------------------------------------------------

namespace detail {

template <typename Fn>
inline void for_each_subterm(const Term& t, std::vector<unsigned>& path, Fn&& fn) {
    fn(path, t);
    if (t.is_variable()) return;
    for (std::size_t i = 0; i < t.args().size(); ++i) {
        path.push_back(static_cast<unsigned>(i + 1));
        for_each_subterm(t.arg(i), path, fn);
        path.pop_back();
    }
}

/// Unify two atoms; equality atoms are tried in both orientations.
/// Calls fn for every successful extension of base (fn on a scratch copy).
template <typename Fn>
inline void unify_atoms(const Substitution& base, const Literal& a, const Literal& b, Fn&& fn) {
    if (a.is_equality != b.is_equality) return;
    if (!a.is_equality) {
        if (a.predicate != b.predicate || a.args.size() != b.args.size()) return;
        Substitution s = base;
        bool ok = true;
        for (std::size_t i = 0; i < a.args.size() && ok; ++i)
            ok = unify_extend(s, a.args[i], b.args[i]);
        if (ok) fn(std::move(s));
        return;
    }
    {
        Substitution s = base;
        if (unify_extend(s, a.lhs(), b.lhs()) && unify_extend(s, a.rhs(), b.rhs()))
            fn(std::move(s));
    }
    {
        Substitution s = base;
        if (unify_extend(s, a.lhs(), b.rhs()) && unify_extend(s, a.rhs(), b.lhs()))
            fn(std::move(s));
    }
}

/// Is lit's negation an instance of the stored unit literal?
inline bool negation_is_instance(const Literal& unit, const Literal& lit) {
    if (unit.positive == lit.positive) return false; // need opposite sign to lit
    if (unit.is_equality != lit.is_equality) return false;
    if (!unit.is_equality) {
        if (unit.predicate != lit.predicate || unit.args.size() != lit.args.size()) return false;
        Substitution s;
        for (std::size_t i = 0; i < unit.args.size(); ++i)
            if (!match_extend(s, unit.args[i], lit.args[i])) return false;
        return true;
    }
    {
        Substitution s;
        if (match_extend(s, unit.lhs(), lit.lhs()) && match_extend(s, unit.rhs(), lit.rhs()))
            return true;
    }
    {
        Substitution s;
        if (match_extend(s, unit.lhs(), lit.rhs()) && match_extend(s, unit.rhs(), lit.lhs()))
            return true;
    }
    return false;
}

inline Literal shift_literal(const Literal& l, VarId offset) {
    Literal out = l;
    for (Term& t : out.args) t = shift_variables(t, offset);
    return out;
}

} // namespace detail

// --- paramodulation ----------------------------------------------------------

struct ParamodulationOptions {
    bool from_units_only = false;
    bool into_units_only = false;
    /// Skip from-orientations whose replaced side is strictly smaller in the
    /// term order (ordered paramodulation, on under knuth_bendix).
    const Precedence* ordered = nullptr;
    /// Render the justification from the given clause's perspective.
    bool given_is_from = true;
};

/// All paramodulants from the positive equalities of `from` into non-variable
/// subterm positions of `into` ($ans literals are never paramodulated into).
inline std::vector<Clause> paramodulate(const Clause& from, const Clause& into,
                                        const Signature& sig,
                                        const ParamodulationOptions& opt) {
    std::vector<Clause> out;
    if (opt.from_units_only && !from.is_unit(sig)) return out;
    if (opt.into_units_only && !into.is_unit(sig)) return out;

    // shift `from` above `into`'s variables; positions refer to `into` as is
    VarId offset = 0;
    if (auto m = clause_max_var(into)) offset = *m + 1;

    for (std::size_t fi = 0; fi < from.literals.size(); ++fi) {
        const Literal& flit_orig = from.literals[fi];
        if (!flit_orig.positive || !flit_orig.is_equality) continue;
        Literal flit = detail::shift_literal(flit_orig, offset);
        bool sides_equal = flit.lhs() == flit.rhs();
        for (unsigned side = 1; side <= (sides_equal ? 1u : 2u); ++side) {
            const Term& l = side == 1 ? flit.lhs() : flit.rhs();
            const Term& r = side == 1 ? flit.rhs() : flit.lhs();
            if (l.is_variable()) continue;
            if (opt.ordered && compare(l, r, *opt.ordered) == OrderResult::less) continue;
            for (std::size_t ii = 0; ii < into.literals.size(); ++ii) {
                const Literal& ilit = into.literals[ii];
                if (is_ans_literal(ilit, sig)) continue;
                for (std::size_t ai = 0; ai < ilit.args.size(); ++ai) {
                    std::vector<unsigned> path{static_cast<unsigned>(ai + 1)};
                    detail::for_each_subterm(ilit.args[ai], path, [&](std::vector<unsigned>& p,
                                                                      const Term& sub) {
                        if (sub.is_variable()) return;
                        auto sigma = unify(l, sub);
                        if (!sigma) return;
                        Clause c;
                        c.literals.reserve(from.literals.size() + into.literals.size() - 1);
                        for (std::size_t k = 0; k < into.literals.size(); ++k) {
                            Literal nl = k == ii ? replace_at(ilit, p, r) : into.literals[k];
                            c.literals.push_back(nl.apply(*sigma));
                        }
                        for (std::size_t k = 0; k < from.literals.size(); ++k) {
                            if (k == fi) continue;
                            c.literals.push_back(
                                detail::shift_literal(from.literals[k], offset).apply(*sigma));
                        }
                        Position pos{static_cast<unsigned>(ii + 1), p};
                        EqSideRef fref{from.id, static_cast<unsigned>(fi + 1), side};
                        PosRef iref{into.id, pos};
                        if (opt.given_is_from)
                            c.justification.step = JustParaFrom{fref, iref};
                        else
                            c.justification.step = JustParaInto{iref, fref};
                        out.push_back(normalize_variables(std::move(c)));
                    });
                }
            }
        }
    }
    return out;
}

// --- UR-resolution -----------------------------------------------------------

/// Unit-resulting resolution: every non-$ans literal of the nucleus except
/// one is resolved against a usable unit of opposite sign; the given clause
/// must appear among the parents.
inline std::vector<Clause> ur_resolve(const Clause& nucleus, ClauseId given_id,
                                      const UnitIndex& units, const ClauseStore& store,
                                      const Signature& sig) {
    std::vector<Clause> out;
    std::vector<std::size_t> non_ans;
    for (std::size_t i = 0; i < nucleus.literals.size(); ++i)
        if (!is_ans_literal(nucleus.literals[i], sig)) non_ans.push_back(i);
    if (non_ans.size() < 2) return out;

    VarId base_ceiling = 0;
    if (auto m = clause_max_var(nucleus)) base_ceiling = *m + 1;

    struct Chosen {
        ClauseId id;
        VarId offset;
    };
    std::vector<Chosen> chosen;

    std::function<void(std::size_t, std::size_t, const Substitution&, VarId)> descend =
        [&](std::size_t target, std::size_t k, const Substitution& sigma, VarId ceiling) {
            if (k == non_ans.size()) {
                if (nucleus.id != given_id) {
                    bool involves_given = false;
                    for (const Chosen& ch : chosen)
                        if (ch.id == given_id) involves_given = true;
                    if (!involves_given) return;
                }
                Clause c;
                c.literals.push_back(nucleus.literals[non_ans[target]].apply(sigma));
                for (std::size_t i = 0; i < nucleus.literals.size(); ++i)
                    if (is_ans_literal(nucleus.literals[i], sig))
                        c.literals.push_back(nucleus.literals[i].apply(sigma));
                for (const Chosen& ch : chosen) {
                    const Clause& sat = store.clause(ch.id);
                    for (const Literal& l : sat.literals)
                        if (is_ans_literal(l, sig))
                            c.literals.push_back(
                                detail::shift_literal(l, ch.offset).apply(sigma));
                }
                JustUR ur;
                ur.given = given_id;
                ur.nucleus = nucleus.id;
                ur.target_literal = static_cast<unsigned>(non_ans[target] + 1);
                for (const Chosen& ch : chosen) ur.satellites.push_back(ch.id);
                c.justification.step = std::move(ur);
                out.push_back(normalize_variables(std::move(c)));
                return;
            }
            if (k == target) {
                descend(target, k + 1, sigma, ceiling);
                return;
            }
            const Literal& lit = nucleus.literals[non_ans[k]];
            const auto& group = units.group(!lit.positive, lit.is_equality);
            for (const auto& e : group) {
                if (!e.active || !e.in_usable) continue;
                Literal sat = detail::shift_literal(e.literal, ceiling);
                VarId next_ceiling = ceiling;
                if (auto m = clause_max_var(store.clause(e.id))) next_ceiling += *m + 1;
                detail::unify_atoms(sigma, lit, sat, [&](Substitution s) {
                    chosen.push_back({e.id, ceiling});
                    descend(target, k + 1, s, next_ceiling);
                    chosen.pop_back();
                });
            }
        };

    Substitution empty;
    for (std::size_t target = 0; target < non_ans.size(); ++target)
        descend(target, 0, empty, base_ceiling);
    return out;
}

// --- unit conflict -----------------------------------------------------------

/// A unit conflicting with a stored unit of opposite sign ends the search:
/// the result carries only the instantiated $ans literals (empty = $F).
inline std::optional<Clause> unit_conflict(const Clause& new_unit, const UnitIndex& units,
                                           const ClauseStore& store, const Signature& sig) {
    unsigned my_index = new_unit.unit_literal_index(sig);
    const Literal& mine = new_unit.literals[my_index - 1];
    VarId offset = 0;
    if (auto m = clause_max_var(new_unit)) offset = *m + 1;

    const auto& group = units.group(!mine.positive, mine.is_equality);
    for (const auto& e : group) {
        if (!e.active || e.id == new_unit.id) continue;
        Literal other = detail::shift_literal(e.literal, offset);
        std::optional<Clause> found;
        detail::unify_atoms(Substitution{}, mine, other, [&](Substitution s) {
            if (found) return;
            Clause c;
            for (const Literal& l : new_unit.literals)
                if (is_ans_literal(l, sig)) c.literals.push_back(l.apply(s));
            const Clause& stored = store.clause(e.id);
            for (const Literal& l : stored.literals)
                if (is_ans_literal(l, sig))
                    c.literals.push_back(detail::shift_literal(l, offset).apply(s));
            c.justification.step =
                JustBinary{new_unit.id, my_index, e.id, e.lit_index};
            found = normalize_variables(std::move(c));
        });
        if (found) return found;
    }
    return std::nullopt;
}

// --- unit deletion -----------------------------------------------------------

/// Remove every literal whose negation is an instance of a stored unit;
/// the ids of the units used are recorded on the justification.
inline Clause unit_delete(Clause c, const UnitIndex& units, const Signature& sig) {
    std::vector<Literal> kept;
    kept.reserve(c.literals.size());
    for (const Literal& lit : c.literals) {
        if (is_ans_literal(lit, sig)) {
            kept.push_back(lit);
            continue;
        }
        std::uint32_t lit_weight = 0;
        for (const Term& t : lit.args) lit_weight += t.weight();
        const auto& group = units.group(!lit.positive, lit.is_equality);
        ClauseId deleted_by = 0;
        for (const auto& e : group) {
            if (!e.active || e.id == c.id) continue;
            if (e.atom_weight > lit_weight) continue;
            if (detail::negation_is_instance(e.literal, lit)) {
                deleted_by = e.id;
                break;
            }
        }
        if (deleted_by)
            c.justification.unit_del.push_back(deleted_by);
        else
            kept.push_back(lit);
    }
    c.literals = std::move(kept);
    return c;
}

} // namespace microtter
