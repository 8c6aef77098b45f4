#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace microtter {

using SymbolId = std::uint32_t;
using VarId = std::uint32_t;
using ClauseId = std::uint32_t;

enum class SymbolKind {
    application,      // the binary application symbol `a`
    plain_function,   // pair, k(.), n, b, c, ...
    constant,         // k, p1, p2, abst, eq, id, F, s, cp1, cp2, ...
    skolem,           // Skolem functions introduced by the problem files
    answer_predicate, // $ans
    false_predicate,  // $F
};

struct SymbolInfo {
    std::string name;
    unsigned arity = 0;
    SymbolKind kind = SymbolKind::constant;
};

class arity_error : public std::runtime_error {
public:
    explicit arity_error(const std::string& what) : std::runtime_error(what) {}
};

/// Per-problem symbol table. A name has exactly one arity; reusing a name at
/// a different arity is an error (this is what separates TRC's unary k(.)
/// from TRC*'s constant k).
class Signature {
public:
    Signature() {
        intern("a", 2, SymbolKind::application);
        intern("$ans", 1, SymbolKind::answer_predicate);
        intern("$F", 0, SymbolKind::false_predicate);
    }

    SymbolId intern(std::string_view name, unsigned arity, SymbolKind kind) {
        auto it = by_name_.find(std::string(name));
        if (it != by_name_.end()) {
            const SymbolInfo& have = symbols_[it->second];
            if (have.arity != arity)
                throw arity_error("symbol '" + std::string(name) + "' used with arity " +
                                  std::to_string(arity) + " but declared with arity " +
                                  std::to_string(have.arity));
            return it->second;
        }
        SymbolId id = static_cast<SymbolId>(symbols_.size());
        symbols_.push_back(SymbolInfo{std::string(name), arity, kind});
        by_name_.emplace(std::string(name), id);
        return id;
    }

    std::optional<SymbolId> lookup(std::string_view name) const {
        auto it = by_name_.find(std::string(name));
        if (it == by_name_.end()) return std::nullopt;
        return it->second;
    }

    const SymbolInfo& info(SymbolId id) const { return symbols_.at(id); }
    const std::string& name(SymbolId id) const { return symbols_.at(id).name; }
    unsigned arity(SymbolId id) const { return symbols_.at(id).arity; }
    std::size_t size() const { return symbols_.size(); }

    SymbolId application() const { return 0; }
    SymbolId ans() const { return 1; }
    SymbolId falsum() const { return 2; }

    /// Next unused constant from the reserved c1, c2, ... namespace.
    SymbolId fresh_constant() {
        for (;;) {
            std::string name = "c" + std::to_string(++fresh_counter_);
            if (!lookup(name)) return intern(name, 0, SymbolKind::constant);
        }
    }

private:
    std::vector<SymbolInfo> symbols_;
    std::unordered_map<std::string, SymbolId> by_name_;
    unsigned fresh_counter_ = 0;
};

/// First-order term: a variable (by index) or a symbol applied to arguments.
/// Immutable after construction; copies share nodes.
class Term {
public:
    Term() = default;

    static Term variable(VarId v) {
        auto node = std::make_shared<Node>();
        node->is_var = true;
        node->var = v;
        node->weight = 1;
        node->max_var = static_cast<std::int64_t>(v);
        node->hash = hash_combine(0x9e3779b97f4a7c15ull, v);
        return Term(std::move(node));
    }

    static Term make(SymbolId sym, std::vector<Term> args = {}) {
        auto node = std::make_shared<Node>();
        node->is_var = false;
        node->sym = sym;
        node->weight = 1;
        node->max_var = -1;
        std::size_t h = hash_combine(0x2545f4914f6cdd1dull, sym);
        for (const Term& t : args) {
            node->weight += t.weight();
            if (t.max_var_raw() > node->max_var) node->max_var = t.max_var_raw();
            h = hash_combine(h, t.hash());
        }
        node->args = std::move(args);
        node->hash = h;
        return Term(std::move(node));
    }

    bool empty() const { return node_ == nullptr; }
    bool is_variable() const { return node_->is_var; }
    VarId var() const { return node_->var; }
    SymbolId symbol() const { return node_->sym; }
    std::span<const Term> args() const { return node_->args; }
    const Term& arg(std::size_t i) const { return node_->args[i]; }

    /// Number of symbol and variable occurrences.
    std::uint32_t weight() const { return node_->weight; }
    bool is_ground() const { return node_->max_var < 0; }
    /// Largest variable index occurring in the term, or nullopt if ground.
    std::optional<VarId> max_var() const {
        if (node_->max_var < 0) return std::nullopt;
        return static_cast<VarId>(node_->max_var);
    }
    std::size_t hash() const { return node_->hash; }

    bool operator==(const Term& other) const {
        if (node_ == other.node_) return true;
        if (node_->hash != other.node_->hash) return false;
        if (node_->is_var != other.node_->is_var) return false;
        if (node_->is_var) return node_->var == other.node_->var;
        if (node_->sym != other.node_->sym) return false;
        if (node_->args.size() != other.node_->args.size()) return false;
        for (std::size_t i = 0; i < node_->args.size(); ++i)
            if (!(node_->args[i] == other.node_->args[i])) return false;
        return true;
    }
    bool operator!=(const Term& other) const { return !(*this == other); }

    bool contains_var(VarId v) const {
        if (node_->max_var < static_cast<std::int64_t>(v)) return false;
        if (node_->is_var) return node_->var == v;
        for (const Term& t : node_->args)
            if (t.contains_var(v)) return true;
        return false;
    }

    /// True if `sub` occurs as a (not necessarily proper) subterm.
    bool contains(const Term& sub) const {
        if (*this == sub) return true;
        if (node_->is_var) return false;
        for (const Term& t : node_->args)
            if (t.contains(sub)) return true;
        return false;
    }

private:
    struct Node {
        bool is_var = false;
        VarId var = 0;
        SymbolId sym = 0;
        std::vector<Term> args;
        std::uint32_t weight = 0;
        std::int64_t max_var = -1; // -1 when ground
        std::size_t hash = 0;
    };

    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::int64_t max_var_raw() const { return node_->max_var; }

    static std::size_t hash_combine(std::size_t seed, std::size_t v) {
        return seed ^ (v + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2));
    }

    std::shared_ptr<const Node> node_;
};

/// Finite map from variable index to term. Kept in solved (idempotent) form:
/// no binding's right-hand side mentions a bound variable.
class Substitution {
public:
    bool empty() const { return bindings_.empty(); }
    std::size_t size() const { return bindings_.size(); }

    const Term* find(VarId v) const {
        auto it = bindings_.find(v);
        return it == bindings_.end() ? nullptr : &it->second;
    }

    /// Bind v to t, keeping the solved form. The caller must already have
    /// applied the substitution to t and run the occurs check.
    void bind_resolved(VarId v, const Term& t);

    /// Insert without rewriting existing bindings. For matching, where the
    /// range lives in the target's variable space and must stay untouched.
    void bind_raw(VarId v, const Term& t) { bindings_.emplace(v, t); }

    const std::unordered_map<VarId, Term>& bindings() const { return bindings_; }

private:
    std::unordered_map<VarId, Term> bindings_;
};

/// Simultaneous replacement of bound variables; unbound variables unchanged.
/// Returns the original term (shared) when nothing applies.
inline Term apply_substitution(const Term& t, const Substitution& s) {
    if (s.empty() || t.is_ground()) return t;
    if (t.is_variable()) {
        if (const Term* bound = s.find(t.var())) return *bound;
        return t;
    }
    std::vector<Term> new_args;
    bool changed = false;
    new_args.reserve(t.args().size());
    for (const Term& a : t.args()) {
        Term na = apply_substitution(a, s);
        if (!(na == a)) changed = true;
        new_args.push_back(std::move(na));
    }
    if (!changed) return t;
    return Term::make(t.symbol(), std::move(new_args));
}

inline void Substitution::bind_resolved(VarId v, const Term& t) {
    // Substitute v in the existing right-hand sides so the map stays solved.
    Substitution single;
    single.bindings_.emplace(v, t);
    for (auto& [var, bound] : bindings_)
        bound = apply_substitution(bound, single);
    bindings_.emplace(v, t);
}

/// Shift every variable index by `offset`.
inline Term shift_variables(const Term& t, VarId offset) {
    if (offset == 0 || t.is_ground()) return t;
    if (t.is_variable()) return Term::variable(t.var() + offset);
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const Term& a : t.args()) args.push_back(shift_variables(a, offset));
    return Term::make(t.symbol(), std::move(args));
}

} // namespace microtter

template <>
struct std::hash<microtter::Term> {
    std::size_t operator()(const microtter::Term& t) const { return t.hash(); }
};
