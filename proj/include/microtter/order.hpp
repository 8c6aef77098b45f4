#pragma once

#include "microtter/term.hpp"

#include <algorithm>

namespace microtter {

enum class OrderResult { greater, less, equal, incomparable };
enum class Orientation { left_to_right, right_to_left, unorientable };

/// Total strict order on the symbols of one problem. The default ranks
/// symbols by name (byte-wise), which reproduces the equation orientations
/// visible in the reference proofs; an explicit order can be installed from
/// the precedence(...) input directive.
class Precedence {
public:
    explicit Precedence(const Signature& sig) : sig_(&sig) {}

    /// Install an explicit order, greatest symbol first. Symbols not listed
    /// rank below every listed one, by name among themselves.
    void set_explicit(const std::vector<SymbolId>& greatest_first) {
        explicit_rank_.assign(sig_->size(), -1);
        int rank = static_cast<int>(greatest_first.size());
        for (SymbolId s : greatest_first) explicit_rank_[s] = rank--;
    }

    bool greater(SymbolId f, SymbolId g) const {
        if (f == g) return false;
        int rf = rank(f), rg = rank(g);
        if (rf != rg) return rf > rg;
        return sig_->name(f) > sig_->name(g);
    }

    const Signature& signature() const { return *sig_; }

private:
    int rank(SymbolId s) const {
        if (s < explicit_rank_.size()) return explicit_rank_[s];
        return -1;
    }

    const Signature* sig_;
    std::vector<int> explicit_rank_;
};

namespace detail {

inline bool lpo_greater(const Term& s, const Term& t, const Precedence& prec);

inline bool lpo_greater_eq(const Term& s, const Term& t, const Precedence& prec) {
    return s == t || lpo_greater(s, t, prec);
}

inline bool lpo_greater(const Term& s, const Term& t, const Precedence& prec) {
    if (s.is_variable()) return false;
    if (t.is_variable()) return s.contains_var(t.var());
    // case 1: some argument of s dominates t
    for (const Term& si : s.args())
        if (lpo_greater_eq(si, t, prec)) return true;
    if (prec.greater(s.symbol(), t.symbol())) {
        // case 2: head precedence decides, s must dominate every argument
        for (const Term& tj : t.args())
            if (!lpo_greater(s, tj, prec)) return false;
        return true;
    }
    if (s.symbol() == t.symbol()) {
        // case 3: lexicographic on arguments, with the same majorization
        std::size_t i = 0;
        for (; i < s.args().size(); ++i)
            if (!(s.arg(i) == t.arg(i))) break;
        if (i == s.args().size()) return false; // syntactically equal
        if (!lpo_greater(s.arg(i), t.arg(i), prec)) return false;
        for (const Term& tj : t.args())
            if (!lpo_greater(s, tj, prec)) return false;
        return true;
    }
    return false;
}

} // namespace detail

/// Lexicographic path ordering. Equal only for identical terms.
inline OrderResult compare(const Term& t1, const Term& t2, const Precedence& prec) {
    if (t1 == t2) return OrderResult::equal;
    if (detail::lpo_greater(t1, t2, prec)) return OrderResult::greater;
    if (detail::lpo_greater(t2, t1, prec)) return OrderResult::less;
    return OrderResult::incomparable;
}

inline Orientation orient(const Term& lhs, const Term& rhs, const Precedence& prec) {
    switch (compare(lhs, rhs, prec)) {
    case OrderResult::greater: return Orientation::left_to_right;
    case OrderResult::less: return Orientation::right_to_left;
    default: return Orientation::unorientable;
    }
}

} // namespace microtter
