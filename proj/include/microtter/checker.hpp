#pragma once

#include "microtter/saturation.hpp"

#include <algorithm>
#include <unordered_map>

namespace microtter {

struct CheckResult {
    bool valid = true;
    ClauseId line = 0;
    std::string reason;

    static CheckResult ok() { return {}; }
    static CheckResult bad(ClauseId line, std::string reason) {
        return CheckResult{false, line, std::move(reason)};
    }
};

namespace replay {

// --- clause equivalence up to variable renaming and equality-side flips ----

using VarMap = std::unordered_map<VarId, VarId>;

inline bool walk_terms(const Term& a, const Term& b, VarMap& ab, VarMap& ba) {
    if (a.is_variable() != b.is_variable()) return false;
    if (a.is_variable()) {
        auto ita = ab.find(a.var());
        auto itb = ba.find(b.var());
        if (ita == ab.end() && itb == ba.end()) {
            ab.emplace(a.var(), b.var());
            ba.emplace(b.var(), a.var());
            return true;
        }
        return ita != ab.end() && itb != ba.end() && ita->second == b.var() &&
               itb->second == a.var();
    }
    if (a.symbol() != b.symbol() || a.args().size() != b.args().size()) return false;
    for (std::size_t i = 0; i < a.args().size(); ++i)
        if (!walk_terms(a.arg(i), b.arg(i), ab, ba)) return false;
    return true;
}

inline bool literals_match(const Literal& a, const Literal& b, VarMap& ab, VarMap& ba) {
    if (a.positive != b.positive || a.is_equality != b.is_equality) return false;
    if (!a.is_equality) {
        if (a.predicate != b.predicate || a.args.size() != b.args.size()) return false;
        for (std::size_t i = 0; i < a.args.size(); ++i)
            if (!walk_terms(a.args[i], b.args[i], ab, ba)) return false;
        return true;
    }
    {
        VarMap ab2 = ab, ba2 = ba;
        if (walk_terms(a.lhs(), b.lhs(), ab2, ba2) && walk_terms(a.rhs(), b.rhs(), ab2, ba2)) {
            ab = std::move(ab2);
            ba = std::move(ba2);
            return true;
        }
    }
    {
        VarMap ab2 = ab, ba2 = ba;
        if (walk_terms(a.lhs(), b.rhs(), ab2, ba2) && walk_terms(a.rhs(), b.lhs(), ab2, ba2)) {
            ab = std::move(ab2);
            ba = std::move(ba2);
            return true;
        }
    }
    return false;
}

inline bool lits_equal_mod_flip(const Literal& a, const Literal& b) {
    if (a.positive != b.positive || a.is_equality != b.is_equality) return false;
    if (!a.is_equality) return a.predicate == b.predicate && a.args == b.args;
    return (a.lhs() == b.lhs() && a.rhs() == b.rhs()) ||
           (a.lhs() == b.rhs() && a.rhs() == b.lhs());
}

inline std::vector<Literal> merge_mod_flip(const std::vector<Literal>& lits) {
    std::vector<Literal> out;
    for (const Literal& l : lits) {
        bool dup = false;
        for (const Literal& m : out)
            if (lits_equal_mod_flip(m, l)) dup = true;
        if (!dup) out.push_back(l);
    }
    return out;
}

inline bool match_sequences(const std::vector<Literal>& a, const std::vector<Literal>& b,
                            std::size_t i, VarMap ab, VarMap ba) {
    if (i == a.size()) return true;
    VarMap ab2 = ab, ba2 = ba;
    if (!literals_match(a[i], b[i], ab2, ba2)) return false;
    return match_sequences(a, b, i + 1, std::move(ab2), std::move(ba2));
}

/// Same literal sequence up to renaming of variables and per-literal
/// orientation of equalities; duplicate literals collapse first.
inline bool equivalent_clauses(const std::vector<Literal>& a, const std::vector<Literal>& b) {
    std::vector<Literal> ma = merge_mod_flip(a);
    std::vector<Literal> mb = merge_mod_flip(b);
    if (ma.size() != mb.size()) return false;
    return match_sequences(ma, mb, 0, {}, {});
}

// --- replay of one justification -------------------------------------------

struct ProofIndex {
    std::unordered_map<ClauseId, Clause> clauses;
    std::unordered_map<ClauseId, Demodulator> copies;
};

inline const Clause* parent(const ProofIndex& idx, ClauseId id) {
    auto it = idx.clauses.find(id);
    return it == idx.clauses.end() ? nullptr : &it->second;
}

/// Apply a recorded demod trace: each entry rewrites at the leftmost-
/// outermost position where that rule matches, scanning literal sides in
/// order. Returns false if an entry never applies.
inline bool apply_demod_trace(std::vector<Literal>& lits, const std::vector<ClauseId>& trace,
                              const ProofIndex& idx, ClauseId line_id) {
    std::size_t j = 0;
    auto rewrite_with = [&](const Demodulator& rule, Term& t) -> bool {
        // leftmost-outermost occurrence of this one rule
        std::function<std::optional<Term>(const Term&)> go =
            [&](const Term& cur) -> std::optional<Term> {
            Substitution s;
            if (!cur.is_variable() && rule.lhs.weight() <= cur.weight() &&
                match_extend(s, rule.lhs, cur))
                return apply_substitution(rule.rhs, s);
            if (cur.is_variable()) return std::nullopt;
            for (std::size_t i = 0; i < cur.args().size(); ++i) {
                Substitution dummy;
                if (auto r = go(cur.arg(i))) {
                    std::vector<Term> args(cur.args().begin(), cur.args().end());
                    args[i] = std::move(*r);
                    return Term::make(cur.symbol(), std::move(args));
                }
            }
            return std::nullopt;
        };
        if (auto r = go(t)) {
            t = std::move(*r);
            return true;
        }
        return false;
    };
    for (Literal& l : lits) {
        for (Term& t : l.args) {
            while (j < trace.size()) {
                auto it = idx.copies.find(trace[j]);
                if (it == idx.copies.end() || trace[j] >= line_id) return false;
                if (!rewrite_with(it->second, t)) break;
                ++j;
            }
        }
    }
    return j == trace.size();
}

inline bool apply_unit_deletions(std::vector<Literal>& lits, const std::vector<ClauseId>& ids,
                                 const ProofIndex& idx, const Signature& sig) {
    for (ClauseId uid : ids) {
        const Clause* unit = parent(idx, uid);
        if (!unit || !unit->is_unit(sig)) return false;
        const Literal& ulit = unit->literals[unit->unit_literal_index(sig) - 1];
        bool deleted = false;
        for (std::size_t i = 0; i < lits.size(); ++i) {
            if (is_ans_literal(lits[i], sig)) continue;
            if (detail::negation_is_instance(ulit, lits[i])) {
                lits.erase(lits.begin() + static_cast<std::ptrdiff_t>(i));
                deleted = true;
                break;
            }
        }
        if (!deleted) return false;
    }
    return true;
}

inline std::optional<std::vector<Literal>> replay_paramodulation(const Clause& from,
                                                                 const Clause& into,
                                                                 const EqSideRef& fref,
                                                                 const PosRef& iref) {
    if (fref.literal == 0 || fref.literal > from.literals.size()) return std::nullopt;
    VarId offset = 0;
    if (auto m = clause_max_var(into)) offset = *m + 1;
    Literal flit = detail::shift_literal(from.literals[fref.literal - 1], offset);
    if (!flit.positive || !flit.is_equality) return std::nullopt;
    if (fref.side != 1 && fref.side != 2) return std::nullopt;
    const Term& l = fref.side == 1 ? flit.lhs() : flit.rhs();
    const Term& r = fref.side == 1 ? flit.rhs() : flit.lhs();
    if (iref.pos.literal == 0 || iref.pos.literal > into.literals.size()) return std::nullopt;
    const Literal& ilit = into.literals[iref.pos.literal - 1];
    const Term* sub = subterm_at(ilit, iref.pos.path);
    if (!sub) return std::nullopt;
    auto sigma = unify(l, *sub);
    if (!sigma) return std::nullopt;
    std::vector<Literal> out;
    for (std::size_t k = 0; k < into.literals.size(); ++k) {
        Literal nl = k + 1 == iref.pos.literal ? replace_at(ilit, iref.pos.path, r)
                                               : into.literals[k];
        out.push_back(nl.apply(*sigma));
    }
    for (std::size_t k = 0; k < from.literals.size(); ++k) {
        if (k + 1 == fref.literal) continue;
        out.push_back(detail::shift_literal(from.literals[k], offset).apply(*sigma));
    }
    return out;
}

} // namespace replay

/// Re-execute every non-input justification of an ancestor-closed proof and
/// confirm each recorded clause up to variable renaming (equality literals
/// may differ in orientation). Inputs are accepted as leaves.
inline CheckResult check_proof(const std::vector<ProofLine>& proof, const Signature& sig) {
    replay::ProofIndex idx;
    for (const ProofLine& line : proof) {
        idx.clauses[line.clause.id] = line.clause;
        if (line.show_twin && line.demod_copy) {
            const Clause& c = line.clause;
            if (c.literals.size() == 1 && c.literals[0].positive && c.literals[0].is_equality)
                idx.copies[*line.demod_copy] =
                    Demodulator{*line.demod_copy, c.id, c.literals[0].lhs(), c.literals[0].rhs()};
        }
    }

    for (const ProofLine& line : proof) {
        const Clause& c = line.clause;
        const Justification& j = c.justification;
        if (j.is_input()) continue;

        auto fail = [&](const std::string& why) { return CheckResult::bad(c.id, why); };
        auto parent_ok = [&](ClauseId id) {
            return id != 0 && id < c.id && idx.clauses.count(id) > 0;
        };

        std::vector<std::vector<Literal>> candidates;

        if (const auto* pf = std::get_if<JustParaFrom>(&j.step)) {
            if (!parent_ok(pf->from.id) || !parent_ok(pf->into.id))
                return fail("missing paramodulation parent");
            auto lits = replay::replay_paramodulation(*replay::parent(idx, pf->from.id),
                                                      *replay::parent(idx, pf->into.id),
                                                      pf->from, pf->into);
            if (!lits) return fail("paramodulation step does not apply");
            candidates.push_back(std::move(*lits));
        } else if (const auto* pi = std::get_if<JustParaInto>(&j.step)) {
            if (!parent_ok(pi->from.id) || !parent_ok(pi->into.id))
                return fail("missing paramodulation parent");
            auto lits = replay::replay_paramodulation(*replay::parent(idx, pi->from.id),
                                                      *replay::parent(idx, pi->into.id),
                                                      pi->from, pi->into);
            if (!lits) return fail("paramodulation step does not apply");
            candidates.push_back(std::move(*lits));
        } else if (const auto* ur = std::get_if<JustUR>(&j.step)) {
            // Collect the parent list; the nucleus may be unrecorded (parsed
            // proofs), in which case every multi-literal parent is tried.
            std::vector<ClauseId> parents;
            if (ur->given) parents.push_back(ur->given);
            if (ur->nucleus && ur->nucleus != ur->given) parents.push_back(ur->nucleus);
            for (ClauseId s : ur->satellites)
                parents.push_back(s);
            for (ClauseId p : parents)
                if (!parent_ok(p)) return fail("missing ur parent");

            std::vector<ClauseId> nucleus_candidates;
            if (ur->nucleus)
                nucleus_candidates.push_back(ur->nucleus);
            else
                for (ClauseId p : parents)
                    if (replay::parent(idx, p)->non_ans_count(sig) >= 2)
                        nucleus_candidates.push_back(p);

            for (ClauseId nid : nucleus_candidates) {
                const Clause& nucleus = *replay::parent(idx, nid);
                std::vector<std::size_t> non_ans;
                for (std::size_t i = 0; i < nucleus.literals.size(); ++i)
                    if (!is_ans_literal(nucleus.literals[i], sig)) non_ans.push_back(i);
                if (non_ans.size() < 2) continue;

                std::vector<ClauseId> sats;
                if (ur->nucleus) {
                    sats = ur->satellites;
                } else {
                    bool dropped = false;
                    for (ClauseId p : parents) {
                        if (!dropped && p == nid) {
                            dropped = true;
                            continue;
                        }
                        sats.push_back(p);
                    }
                }
                if (sats.size() != non_ans.size() - 1) continue;
                std::sort(sats.begin(), sats.end());
                do {
                    for (std::size_t target = 0; target < non_ans.size(); ++target) {
                        VarId ceiling = 0;
                        if (auto m = clause_max_var(nucleus)) ceiling = *m + 1;
                        Substitution sigma;
                        bool ok = true;
                        std::vector<std::pair<ClauseId, VarId>> used;
                        std::size_t si = 0;
                        for (std::size_t k = 0; k < non_ans.size() && ok; ++k) {
                            if (k == target) continue;
                            const Clause& sat = *replay::parent(idx, sats[si]);
                            if (!sat.is_unit(sig)) {
                                ok = false;
                                break;
                            }
                            Literal slit = detail::shift_literal(
                                sat.literals[sat.unit_literal_index(sig) - 1], ceiling);
                            const Literal& nlit = nucleus.literals[non_ans[k]];
                            if (slit.positive == nlit.positive) {
                                ok = false;
                                break;
                            }
                            bool unified = false;
                            detail::unify_atoms(sigma, nlit, slit, [&](Substitution s) {
                                if (unified) return;
                                unified = true;
                                sigma = std::move(s);
                            });
                            if (!unified) {
                                ok = false;
                                break;
                            }
                            used.push_back({sats[si], ceiling});
                            if (auto m = clause_max_var(sat)) ceiling += *m + 1;
                            ++si;
                        }
                        if (!ok) continue;
                        std::vector<Literal> lits;
                        lits.push_back(nucleus.literals[non_ans[target]].apply(sigma));
                        for (std::size_t i = 0; i < nucleus.literals.size(); ++i)
                            if (is_ans_literal(nucleus.literals[i], sig))
                                lits.push_back(nucleus.literals[i].apply(sigma));
                        for (auto [sid, off] : used) {
                            const Clause& sat = *replay::parent(idx, sid);
                            for (const Literal& l : sat.literals)
                                if (is_ans_literal(l, sig))
                                    lits.push_back(detail::shift_literal(l, off).apply(sigma));
                        }
                        candidates.push_back(std::move(lits));
                    }
                } while (std::next_permutation(sats.begin(), sats.end()));
            }
            if (candidates.empty()) return fail("no ur reconstruction applies");
        } else if (const auto* b = std::get_if<JustBinary>(&j.step)) {
            if (!parent_ok(b->id1) || !parent_ok(b->id2)) return fail("missing binary parent");
            const Clause& c1 = *replay::parent(idx, b->id1);
            const Clause& c2 = *replay::parent(idx, b->id2);
            if (b->lit1 == 0 || b->lit1 > c1.literals.size() || b->lit2 == 0 ||
                b->lit2 > c2.literals.size())
                return fail("binary literal index out of range");
            VarId offset = 0;
            if (auto m = clause_max_var(c1)) offset = *m + 1;
            const Literal& l1 = c1.literals[b->lit1 - 1];
            Literal l2 = detail::shift_literal(c2.literals[b->lit2 - 1], offset);
            if (l1.positive == l2.positive) return fail("binary literals have equal sign");
            detail::unify_atoms(Substitution{}, l1, l2, [&](Substitution s) {
                std::vector<Literal> lits;
                for (const Literal& l : c1.literals)
                    if (is_ans_literal(l, sig)) lits.push_back(l.apply(s));
                for (const Literal& l : c2.literals)
                    if (is_ans_literal(l, sig))
                        lits.push_back(detail::shift_literal(l, offset).apply(s));
                candidates.push_back(std::move(lits));
            });
            if (candidates.empty()) return fail("binary conflict does not unify");
        } else if (const auto* bd = std::get_if<JustBackDemod>(&j.step)) {
            if (!parent_ok(bd->target)) return fail("missing back_demod target");
            candidates.push_back(replay::parent(idx, bd->target)->literals);
        } else {
            return fail("unknown justification");
        }

        bool matched = false;
        std::string why = "replayed clause differs from recorded clause";
        for (std::vector<Literal>& lits : candidates) {
            std::vector<Literal> work = lits;
            if (!replay::apply_demod_trace(work, j.demod, idx, c.id)) {
                why = "demod trace does not replay";
                continue;
            }
            if (!replay::apply_unit_deletions(work, j.unit_del, idx, sig)) {
                why = "unit deletion does not replay";
                continue;
            }
            if (replay::equivalent_clauses(work, c.literals)) {
                matched = true;
                break;
            }
        }
        if (!matched) return fail(why);
    }
    return CheckResult::ok();
}

// --- proof-file parsing -------------------------------------------------------

/// Parse proof listing lines ("id [justification] clause.") out of prover
/// output; banner, echo separators and statistics lines are ignored.
struct ParsedProof {
    std::vector<ProofLine> lines;
    std::shared_ptr<Signature> signature;
};

namespace replay {

inline std::vector<ClauseId> parse_ref(detail::Lexer& lex) {
    std::vector<ClauseId> parts;
    parts.push_back(detail::parse_uint(lex.next()));
    while (lex.peek().kind == detail::Tok::period) {
        lex.next();
        parts.push_back(detail::parse_uint(lex.next()));
    }
    return parts;
}

inline Justification parse_justification(detail::Lexer& lex) {
    // Flatten "tag,ref,ref,tag,ref,..." into items, then interpret.
    struct Item {
        bool is_tag;
        std::string tag;
        std::vector<ClauseId> ref;
    };
    std::vector<Item> items;
    if (lex.peek().kind != detail::Tok::rbracket) {
        for (;;) {
            if (lex.peek().kind == detail::Tok::ident) {
                detail::Token t = lex.next();
                items.push_back(Item{true, t.text, {}});
            } else {
                items.push_back(Item{false, {}, parse_ref(lex)});
            }
            if (lex.peek().kind != detail::Tok::comma) break;
            lex.next();
        }
    }

    Justification j;
    std::size_t i = 0;
    auto need_ref = [&](const char* what) -> const std::vector<ClauseId>& {
        if (i >= items.size() || items[i].is_tag)
            throw ParseError(0, 0, std::string("expected reference after ") + what);
        return items[i++].ref;
    };
    auto mk_side = [](const std::vector<ClauseId>& r) {
        EqSideRef s;
        s.id = r[0];
        s.literal = r.size() > 1 ? static_cast<unsigned>(r[1]) : 1u;
        s.side = r.size() > 2 ? static_cast<unsigned>(r[2]) : 1u;
        return s;
    };
    auto mk_pos = [](const std::vector<ClauseId>& r) {
        PosRef p;
        p.id = r[0];
        p.pos.literal = r.size() > 1 ? static_cast<unsigned>(r[1]) : 1u;
        for (std::size_t k = 2; k < r.size(); ++k)
            p.pos.path.push_back(static_cast<unsigned>(r[k]));
        return p;
    };

    if (!items.empty() && items[0].is_tag && items[0].tag != "demod" &&
        items[0].tag != "unit_del") {
        std::string primary = items[0].tag;
        i = 1;
        if (primary == "para_from") {
            const auto& r1 = need_ref("para_from");
            const auto& r2 = need_ref("para_from");
            j.step = JustParaFrom{mk_side(r1), mk_pos(r2)};
        } else if (primary == "para_into") {
            const auto& r1 = need_ref("para_into");
            const auto& r2 = need_ref("para_into");
            j.step = JustParaInto{mk_pos(r1), mk_side(r2)};
        } else if (primary == "binary") {
            const auto& r1 = need_ref("binary");
            const auto& r2 = need_ref("binary");
            j.step = JustBinary{r1[0], r1.size() > 1 ? static_cast<unsigned>(r1[1]) : 1u, r2[0],
                                r2.size() > 1 ? static_cast<unsigned>(r2[1]) : 1u};
        } else if (primary == "ur") {
            JustUR ur;
            while (i < items.size() && !items[i].is_tag) {
                ClauseId id = items[i++].ref[0];
                if (ur.given == 0)
                    ur.given = id;
                else
                    ur.satellites.push_back(id);
            }
            j.step = std::move(ur);
        } else if (primary == "back_demod") {
            j.step = JustBackDemod{need_ref("back_demod")[0]};
        } else {
            throw ParseError(0, 0, "unknown justification tag '" + primary + "'");
        }
    }

    while (i < items.size()) {
        if (!items[i].is_tag)
            throw ParseError(0, 0, "expected demod or unit_del tag");
        std::string tag = items[i++].tag;
        std::vector<ClauseId>* list = nullptr;
        if (tag == "demod") list = &j.demod;
        else if (tag == "unit_del") list = &j.unit_del;
        else throw ParseError(0, 0, "unknown justification tag '" + tag + "'");
        while (i < items.size() && !items[i].is_tag) list->push_back(items[i++].ref[0]);
    }
    return j;
}

} // namespace replay

inline ParsedProof parse_proof(std::string_view text) {
    ParsedProof out;
    out.signature = std::make_shared<Signature>();

    std::istringstream is{std::string(text)};
    std::string raw;
    while (std::getline(is, raw)) {
        std::size_t start = raw.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        if (!std::isdigit(static_cast<unsigned char>(raw[start]))) continue;
        if (raw.find('[') == std::string::npos) continue;

        detail::Lexer lex(raw);
        ClauseId first = detail::parse_uint(lex.next());
        std::optional<ClauseId> copy_id;
        ClauseId clause_id = first;
        if (lex.peek().kind == detail::Tok::comma) {
            lex.next();
            copy_id = first;
            clause_id = detail::parse_uint(lex.next());
        }
        detail::expect_punct(lex, detail::Tok::lbracket, "'['");
        Justification just = replay::parse_justification(lex);
        detail::expect_punct(lex, detail::Tok::rbracket, "']'");

        detail::TermParser tp(lex, *out.signature);
        Clause c = tp.parse_clause_body();
        c.id = clause_id;
        c.justification = std::move(just);
        ProofLine line;
        line.clause = std::move(c);
        line.demod_copy = copy_id;
        line.show_twin = copy_id.has_value();
        out.lines.push_back(std::move(line));
    }
    return out;
}

} // namespace microtter
