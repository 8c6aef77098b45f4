#pragma once

#include "microtter/clause.hpp"
#include "microtter/rewrite.hpp"

#include <deque>

namespace microtter {

/// All numbered objects of a run: retained clauses and demodulator copies
/// share one id sequence, ids start at 1 and never get reused.
class ClauseStore {
public:
    struct Entry {
        bool is_demod_copy = false;
        Clause clause;                         // valid when !is_demod_copy
        Demodulator copy;                      // valid when is_demod_copy
        bool active = false;
        bool in_usable = false;
        std::optional<ClauseId> demod_copy_id; // copy derived from this clause
    };

    ClauseId next_id() const { return static_cast<ClauseId>(entries_.size() + 1); }

    ClauseId add_clause(Clause c, bool in_usable) {
        c.id = next_id();
        Entry e;
        e.clause = std::move(c);
        e.active = true;
        e.in_usable = in_usable;
        entries_.push_back(std::move(e));
        return entries_.back().clause.id;
    }

    ClauseId add_demod_copy(ClauseId source, Term lhs, Term rhs) {
        Entry e;
        e.is_demod_copy = true;
        e.copy = Demodulator{next_id(), source, std::move(lhs), std::move(rhs)};
        e.active = true;
        ClauseId id = e.copy.copy_id;
        entries_.push_back(std::move(e));
        entry_mut(source).demod_copy_id = id;
        return id;
    }

    bool contains(ClauseId id) const { return id >= 1 && id <= entries_.size(); }
    bool is_clause(ClauseId id) const { return contains(id) && !entries_[id - 1].is_demod_copy; }
    bool is_demod_copy(ClauseId id) const {
        return contains(id) && entries_[id - 1].is_demod_copy;
    }

    const Entry& entry(ClauseId id) const { return entries_.at(id - 1); }
    const Clause& clause(ClauseId id) const { return entries_.at(id - 1).clause; }
    const Demodulator& copy(ClauseId id) const { return entries_.at(id - 1).copy; }

    bool active(ClauseId id) const { return entry(id).active; }
    bool in_usable(ClauseId id) const { return entry(id).in_usable; }
    std::optional<ClauseId> demod_copy_of(ClauseId id) const { return entry(id).demod_copy_id; }

    void deactivate(ClauseId id) { entry_mut(id).active = false; }
    void move_to_usable(ClauseId id) { entry_mut(id).in_usable = true; }

    std::size_t size() const { return entries_.size(); }

    template <typename Fn>
    void for_each_active_clause(Fn&& fn) const {
        for (const Entry& e : entries_)
            if (!e.is_demod_copy && e.active) fn(e.clause);
    }

private:
    Entry& entry_mut(ClauseId id) { return entries_.at(id - 1); }

    std::deque<Entry> entries_;
};

} // namespace microtter
