#pragma once

#include "microtter/inference.hpp"
#include "microtter/parse.hpp"
#include "microtter/print.hpp"

#include <chrono>
#include <set>
#include <sstream>
#include <unordered_set>

namespace microtter {

struct Statistics {
    std::uint64_t generated = 0;
    std::uint64_t kept = 0;
    std::uint64_t given = 0;
    std::uint64_t demod_rewrites = 0;
    std::uint64_t back_demodulated = 0;
    std::uint64_t unit_deletions = 0;
    std::uint64_t tautologies_discarded = 0;
    std::uint64_t weight_discarded = 0;
    std::uint64_t variant_discarded = 0;
    std::uint64_t last_id = 0;
    double seconds = 0.0;
};

enum class OutcomeKind { proof_found, sos_exhausted, limit_reached };

struct ProofLine {
    Clause clause;
    std::optional<ClauseId> demod_copy;
    bool show_twin = false;
};

struct Outcome {
    OutcomeKind kind = OutcomeKind::sos_exhausted;
    std::string limit;              // which limit, for limit_reached
    std::optional<Clause> success;  // for proof_found
    std::vector<ProofLine> proof;   // ancestor closure, id-sorted
    std::vector<ProofLine> usable_echo;
    std::vector<ProofLine> sos_echo;
    Statistics stats;

    int exit_status() const {
        switch (kind) {
        case OutcomeKind::proof_found: return 0;
        case OutcomeKind::sos_exhausted: return 1;
        case OutcomeKind::limit_reached: return 2;
        }
        return 2;
    }
};

/// Ancestor closure of a success clause, id-sorted. Demodulator copies that
/// appear in demod traces pull in their source clause and get the twin
/// "copy,source" prefix when printed.
inline std::vector<ProofLine> extract_proof(const ClauseStore& store, const Clause& success) {
    std::set<ClauseId> clause_ids;
    std::set<ClauseId> referenced_copies;
    std::vector<ClauseId> work;

    auto push_clause = [&](ClauseId id) {
        if (id != 0 && store.is_clause(id) && clause_ids.insert(id).second) work.push_back(id);
    };
    auto push_ref = [&](ClauseId id) {
        if (id == 0 || !store.contains(id)) return;
        if (store.is_demod_copy(id)) {
            referenced_copies.insert(id);
            push_clause(store.copy(id).source_id);
        } else {
            push_clause(id);
        }
    };

    clause_ids.insert(success.id);
    work.push_back(success.id);
    // the success clause may not be in the store yet under the same id; walk
    // from its justification directly
    std::vector<Clause> pending{success};
    while (!work.empty() || !pending.empty()) {
        Clause c;
        if (!pending.empty()) {
            c = pending.back();
            pending.pop_back();
        } else {
            ClauseId id = work.back();
            work.pop_back();
            c = store.clause(id);
        }
        const Justification& j = c.justification;
        if (const auto* pf = std::get_if<JustParaFrom>(&j.step)) {
            push_clause(pf->from.id);
            push_clause(pf->into.id);
        } else if (const auto* pi = std::get_if<JustParaInto>(&j.step)) {
            push_clause(pi->into.id);
            push_clause(pi->from.id);
        } else if (const auto* ur = std::get_if<JustUR>(&j.step)) {
            push_clause(ur->given);
            push_clause(ur->nucleus);
            for (ClauseId s : ur->satellites) push_clause(s);
        } else if (const auto* b = std::get_if<JustBinary>(&j.step)) {
            push_clause(b->id1);
            push_clause(b->id2);
        } else if (const auto* bd = std::get_if<JustBackDemod>(&j.step)) {
            push_clause(bd->target);
        }
        for (ClauseId d : j.demod) push_ref(d);
        for (ClauseId u : j.unit_del) push_clause(u);
    }

    std::vector<ProofLine> out;
    for (ClauseId id : clause_ids) {
        ProofLine line;
        line.clause = id == success.id ? success : store.clause(id);
        line.demod_copy = store.is_clause(id) ? store.demod_copy_of(id) : std::nullopt;
        line.show_twin = line.demod_copy && referenced_copies.count(*line.demod_copy) > 0;
        out.push_back(std::move(line));
    }
    return out;
}

// --- the prover ---------------------------------------------------------------

class Prover {
public:
    explicit Prover(const ParsedInput& input)
        : sig_(input.signature), opt_(input.options), prec_(*input.signature),
          input_usable_(input.usable), input_sos_(input.sos) {
        if (!opt_.precedence_override.empty()) {
            std::vector<SymbolId> order;
            for (const std::string& name : opt_.precedence_override)
                order.push_back(*sig_->lookup(name));
            prec_.set_explicit(order);
        }
    }

    Outcome run() {
        start_ = std::chrono::steady_clock::now();
        if (auto reason = opt_.invalid_reason()) {
            limit_reason_ = *reason;
            return finish(OutcomeKind::limit_reached);
        }
        // input processing: usable first, then sos, in file order
        for (const Clause& c : input_usable_)
            if (handle(process(c, true, true))) return finish_current();
        for (const Clause& c : input_sos_)
            if (handle(process(c, true, false))) return finish_current();
        capture_echo();

        while (!sos_by_age_.empty()) {
            if (over_time_limit()) {
                limit_reason_ = "max_seconds";
                return finish(OutcomeKind::limit_reached);
            }
            ClauseId given_id = pick_given();
            stats_.given += 1;
            move_to_usable(given_id);
            Clause given = store_.clause(given_id);

            std::vector<Clause> partners;
            for (ClauseId id : usable_)
                if (store_.active(id)) partners.push_back(store_.clause(id));

            ParamodulationOptions popt;
            popt.from_units_only = opt_.para_from_units_only;
            popt.into_units_only = opt_.para_into_units_only;
            if (opt_.knuth_bendix) popt.ordered = &prec_;

            for (const Clause& partner : partners) {
                popt.given_is_from = true;
                for (Clause& c : paramodulate(given, partner, *sig_, popt)) {
                    stats_.generated += 1;
                    if (handle(process(std::move(c), false, false))) return finish_current();
                }
                if (partner.id != given.id) {
                    popt.given_is_from = false;
                    for (Clause& c : paramodulate(partner, given, *sig_, popt)) {
                        stats_.generated += 1;
                        if (handle(process(std::move(c), false, false))) return finish_current();
                    }
                }
                if (over_generated_limit()) return finish(OutcomeKind::limit_reached);
            }

            if (opt_.ur_res) {
                if (given.non_ans_count(*sig_) >= 2) {
                    for (Clause& c : ur_resolve(given, given.id, units_, store_, *sig_)) {
                        stats_.generated += 1;
                        if (handle(process(std::move(c), false, false))) return finish_current();
                    }
                } else if (given.is_unit(*sig_)) {
                    for (const Clause& partner : partners) {
                        if (partner.id == given.id || partner.non_ans_count(*sig_) < 2) continue;
                        for (Clause& c : ur_resolve(partner, given.id, units_, store_, *sig_)) {
                            stats_.generated += 1;
                            if (handle(process(std::move(c), false, false)))
                                return finish_current();
                        }
                    }
                }
                if (over_generated_limit()) return finish(OutcomeKind::limit_reached);
            }
        }
        return finish(OutcomeKind::sos_exhausted);
    }

    const ClauseStore& store() const { return store_; }
    const Statistics& statistics() const { return stats_; }

private:
    enum class Status { kept, discarded, success, limit };

    bool handle(Status s) { return s == Status::success || s == Status::limit; }

    Outcome finish_current() {
        return finish(success_ ? OutcomeKind::proof_found : OutcomeKind::limit_reached);
    }

    Outcome finish(OutcomeKind kind) {
        Outcome out;
        out.kind = kind;
        out.limit = limit_reason_;
        out.stats = stats_;
        out.stats.last_id = store_.size();
        out.stats.seconds = elapsed_seconds();
        out.usable_echo = usable_echo_;
        out.sos_echo = sos_echo_;
        if (success_) {
            out.kind = OutcomeKind::proof_found;
            out.success = *success_;
            out.proof = extract_proof(store_, *success_);
        }
        return out;
    }

    double elapsed_seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }
    bool over_time_limit() const {
        return opt_.max_seconds && elapsed_seconds() > static_cast<double>(*opt_.max_seconds);
    }
    bool over_generated_limit() {
        if (opt_.max_generated && stats_.generated > *opt_.max_generated) {
            limit_reason_ = "max_generated";
            return true;
        }
        return false;
    }

    void capture_echo() {
        store_.for_each_active_clause([&](const Clause& c) {
            ProofLine line;
            line.clause = c;
            line.demod_copy = store_.demod_copy_of(c.id);
            line.show_twin = line.demod_copy.has_value();
            if (store_.in_usable(c.id))
                usable_echo_.push_back(line);
            else
                sos_echo_.push_back(line);
        });
    }

    /// Ratio schedule: pick_given_ratio picks by least weight (ties by id),
    /// then one pick by age.
    ClauseId pick_given() {
        bool by_age = opt_.pick_given_ratio != ProverOptions::unlimited &&
                      ratio_position_ == opt_.pick_given_ratio;
        if (by_age)
            ratio_position_ = 0;
        else if (opt_.pick_given_ratio != ProverOptions::unlimited)
            ratio_position_ += 1;
        return by_age ? *sos_by_age_.begin() : sos_by_weight_.begin()->second;
    }

    void move_to_usable(ClauseId id) {
        const Clause& c = store_.clause(id);
        sos_by_weight_.erase({c.weight, id});
        sos_by_age_.erase(id);
        store_.move_to_usable(id);
        units_.move_to_usable(id);
        usable_.insert(std::lower_bound(usable_.begin(), usable_.end(), id), id);
    }

    void deactivate(ClauseId id) {
        const Clause& c = store_.clause(id);
        if (store_.in_usable(id)) {
            auto it = std::lower_bound(usable_.begin(), usable_.end(), id);
            if (it != usable_.end() && *it == id) usable_.erase(it);
        } else {
            sos_by_weight_.erase({c.weight, id});
            sos_by_age_.erase(id);
        }
        store_.deactivate(id);
        units_.deactivate(id);
        demods_.remove_by_source(id);
    }

    static bool atoms_equal_mod_flip(const Literal& a, const Literal& b) {
        if (a.is_equality != b.is_equality) return false;
        if (!a.is_equality) return a.predicate == b.predicate && a.args == b.args;
        return (a.lhs() == b.lhs() && a.rhs() == b.rhs()) ||
               (a.lhs() == b.rhs() && a.rhs() == b.lhs());
    }

    static bool is_tautology(const Clause& c) {
        for (std::size_t i = 0; i < c.literals.size(); ++i) {
            const Literal& li = c.literals[i];
            if (li.positive && li.is_equality && li.lhs() == li.rhs()) return true;
            for (std::size_t j = i + 1; j < c.literals.size(); ++j) {
                const Literal& lj = c.literals[j];
                if (li.positive != lj.positive && atoms_equal_mod_flip(li, lj)) return true;
            }
        }
        return false;
    }

    Status process(Clause c, bool is_input, bool to_usable) {
        // 1. demodulate to normal form
        if (!demods_.empty()) {
            std::vector<ClauseId> trace = demodulate_clause(c, demods_, opt_.demod_step_cap);
            stats_.demod_rewrites += trace.size();
            for (ClauseId t : trace) c.justification.demod.push_back(t);
        }
        // 2. orient equality literals, greater side first
        if (opt_.knuth_bendix) {
            for (Literal& l : c.literals) {
                if (!l.is_equality) continue;
                if (compare(l.lhs(), l.rhs(), prec_) == OrderResult::less)
                    std::swap(l.args[0], l.args[1]);
            }
        }
        // 3. merge identical literals
        {
            std::vector<Literal> merged;
            for (const Literal& l : c.literals) {
                bool dup = false;
                for (const Literal& m : merged)
                    if (m == l) dup = true;
                if (!dup) merged.push_back(l);
            }
            c.literals = std::move(merged);
        }
        // 4. unit deletion
        if (opt_.unit_deletion) {
            std::size_t before = c.literals.size();
            c = unit_delete(std::move(c), units_, *sig_);
            stats_.unit_deletions += before - c.literals.size();
        }
        c = normalize_variables(std::move(c));
        c.weight = clause_weight(c, *sig_);

        if (!is_input) {
            if (is_tautology(c)) {
                stats_.tautologies_discarded += 1;
                return Status::discarded;
            }
            if (c.weight > opt_.max_weight) {
                stats_.weight_discarded += 1;
                return Status::discarded;
            }
        }
        std::string key = variant_key(c);
        if (!variant_keys_.insert(key).second) {
            stats_.variant_discarded += 1;
            return Status::discarded;
        }

        // retain
        ClauseId id = store_.add_clause(std::move(c), to_usable);
        stats_.kept += 1;
        if (stats_.kept > opt_.max_retained) {
            limit_reason_ = "max_mem (retained clauses)";
            return Status::limit;
        }
        const Clause& stored = store_.clause(id);
        if (stored.is_success(*sig_)) {
            success_ = stored;
            return Status::success;
        }
        if (to_usable)
            usable_.insert(std::lower_bound(usable_.begin(), usable_.end(), id), id);
        else {
            sos_by_weight_.insert({stored.weight, id});
            sos_by_age_.insert(id);
        }
        units_.add(stored, *sig_, to_usable);

        // unit conflict, checked eagerly on every retained unit
        if (stored.is_unit(*sig_)) {
            if (auto conflict = unit_conflict(stored, units_, store_, *sig_)) {
                ClauseId cid = store_.add_clause(std::move(*conflict), false);
                stats_.kept += 1;
                success_ = store_.clause(cid);
                return Status::success;
            }
        }

        // demodulator installation + back demodulation
        if (opt_.knuth_bendix && stored.literals.size() == 1 && stored.literals[0].positive &&
            stored.literals[0].is_equality &&
            compare(stored.literals[0].lhs(), stored.literals[0].rhs(), prec_) ==
                OrderResult::greater) {
            ClauseId copy_id =
                store_.add_demod_copy(id, stored.literals[0].lhs(), stored.literals[0].rhs());
            Demodulator rule{copy_id, id, stored.literals[0].lhs(), stored.literals[0].rhs()};
            demods_.install(rule);
            Status s = back_demodulate(rule);
            if (s == Status::success || s == Status::limit) return s;
        }
        return Status::kept;
    }

    /// Re-simplify every retained clause containing a redex of the new rule;
    /// originals become inactive, replacements re-enter sos processing.
    Status back_demodulate(const Demodulator& rule) {
        std::vector<ClauseId> affected;
        store_.for_each_active_clause([&](const Clause& c) {
            if (c.id == rule.source_id) return;
            for (const Literal& l : c.literals)
                for (const Term& t : l.args)
                    if (term_has_match(rule.lhs, t)) {
                        affected.push_back(c.id);
                        return;
                    }
        });
        for (ClauseId id : affected) {
            if (!store_.active(id)) continue; // already displaced by a cascade
            Clause raw;
            raw.literals = store_.clause(id).literals;
            raw.justification.step = JustBackDemod{id};
            deactivate(id);
            stats_.back_demodulated += 1;
            Status s = process(std::move(raw), false, false);
            if (s == Status::success || s == Status::limit) return s;
        }
        return Status::kept;
    }

    static bool term_has_match(const Term& pattern, const Term& t) {
        if (pattern.weight() <= t.weight()) {
            Substitution s;
            if (match_extend(s, pattern, t)) return true;
        }
        if (t.is_variable()) return false;
        for (const Term& a : t.args())
            if (term_has_match(pattern, a)) return true;
        return false;
    }

    std::shared_ptr<Signature> sig_;
    ProverOptions opt_;
    Precedence prec_;
    std::vector<Clause> input_usable_;
    std::vector<Clause> input_sos_;

    ClauseStore store_;
    DemodulatorSet demods_;
    UnitIndex units_;
    std::set<std::pair<std::uint32_t, ClauseId>> sos_by_weight_;
    std::set<ClauseId> sos_by_age_;
    std::vector<ClauseId> usable_;
    std::unordered_set<std::string> variant_keys_;
    std::uint32_t ratio_position_ = 0;
    Statistics stats_;
    std::optional<Clause> success_;
    std::string limit_reason_;
    std::vector<ProofLine> usable_echo_;
    std::vector<ProofLine> sos_echo_;
    std::chrono::steady_clock::time_point start_;
};

/// Run the given-clause loop on a parsed problem.
inline Outcome saturate(const ParsedInput& input) { return Prover(input).run(); }

// --- output rendering ----------------------------------------------------------

inline std::string render_proof_block(const std::vector<ProofLine>& proof, const Signature& sig,
                                      bool bird) {
    std::ostringstream os;
    os << "---------------- PROOF ----------------\n\n";
    for (const ProofLine& line : proof)
        os << render_clause_line(line.clause, sig, bird,
                                 line.show_twin ? line.demod_copy : std::nullopt)
           << "\n";
    os << "\n------------ end of proof -------------\n";
    return os.str();
}

inline std::string render_run_output(const Outcome& outcome, const Signature& sig,
                                     const ProverOptions& opt) {
    std::ostringstream os;
    bool bird = opt.bird_print;
    auto echo_list = [&](const char* name, const std::vector<ProofLine>& lines) {
        os << "list(" << name << ").\n";
        for (const ProofLine& l : lines)
            os << render_clause_line(l.clause, sig, bird, l.demod_copy) << "\n";
        os << "end_of_list.\n\n";
    };
    echo_list("usable", outcome.usable_echo);
    echo_list("sos", outcome.sos_echo);

    if (outcome.kind == OutcomeKind::proof_found && outcome.success) {
        char banner[64];
        std::snprintf(banner, sizeof banner, "----> UNIT CONFLICT at %6.2f sec ----> ",
                      outcome.stats.seconds);
        os << banner
           << render_clause_line(*outcome.success, sig, bird) << "\n\n";
        os << render_proof_block(outcome.proof, sig, bird) << "\n";
    } else if (outcome.kind == OutcomeKind::sos_exhausted) {
        os << "----> sos empty: no proof found.\n\n";
    } else {
        os << "----> search stopped: " << outcome.limit << ".\n\n";
    }

    const Statistics& st = outcome.stats;
    os << "-------------- statistics -------------\n";
    os << "clauses generated    " << st.generated << "\n";
    os << "clauses kept         " << st.kept << "\n";
    os << "given clauses        " << st.given << "\n";
    os << "demod rewrites       " << st.demod_rewrites << "\n";
    os << "back demodulated     " << st.back_demodulated << "\n";
    os << "unit deletions       " << st.unit_deletions << "\n";
    os << "tautologies          " << st.tautologies_discarded << "\n";
    os << "over weight limit    " << st.weight_discarded << "\n";
    os << "variant duplicates   " << st.variant_discarded << "\n";
    os << "last clause id       " << st.last_id << "\n";
    os << "elapsed (ms)         " << static_cast<long long>(st.seconds * 1000.0) << "\n";
    return os.str();
}

} // namespace microtter
