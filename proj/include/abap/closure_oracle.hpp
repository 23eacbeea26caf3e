#ifndef ABAP_CLOSURE_ORACLE_HPP
#define ABAP_CLOSURE_ORACLE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "abap/extension.hpp"

namespace abap {

/// The closure produced a ≺-cycle (some u with u < u): the construction is broken.
class ClosureCycle : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A finite universe with generator pairs per symbol.
struct GeneratorSet {
    std::vector<Term> universe;
    RelationTable relations;
};

namespace detail {

// Square boolean matrix with 64-bit word rows.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

    std::size_t size() const { return n_; }
    bool get(std::size_t i, std::size_t j) const { return (bits_[i * words_ + j / 64] >> (j % 64)) & 1u; }
    void set(std::size_t i, std::size_t j) { bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64); }
    void or_row(std::size_t into, std::size_t from) {
        for (std::size_t w = 0; w < words_; ++w) bits_[into * words_ + w] |= bits_[from * words_ + w];
    }

private:
    std::size_t n_ = 0, words_ = 0;
    std::vector<std::uint64_t> bits_;
};

inline void transitive_close(Matrix& m) {
    for (std::size_t k = 0; k < m.size(); ++k)
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m.get(i, k)) m.or_row(i, k);
}

inline void symmetric_close(Matrix& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
            if (m.get(i, j)) m.set(j, i);
}

// x ∼ z, y ≁ z and z < y force x < y in a convex equivalence (and dually).
inline bool convexity_step(Matrix& less, const Matrix& eq) {
    const std::size_t n = less.size();
    bool changed = false;
    for (std::size_t z = 0; z < n; ++z)
        for (std::size_t x = 0; x < n; ++x) {
            if (x == z || !eq.get(x, z)) continue;
            for (std::size_t y = 0; y < n; ++y) {
                if (y == x || y == z || eq.get(y, z)) continue;
                if (less.get(z, y) && !less.get(x, y)) less.set(x, y), changed = true;
                if (less.get(y, z) && !less.get(y, x)) less.set(y, x), changed = true;
            }
        }
    return changed;
}

}  // namespace detail

/// Explicit closure of a generator set: transitive closure of the order
/// relations, symmetric closure of adjacency, and for equivalence tags the
/// transitive closure of ∼ plus convexity inference, to a fixed point.
inline Structure closure_oracle(const GeneratorSet& g, const ClassTag& tag) {
    const std::size_t n = g.universe.size();
    std::map<Term, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index.emplace(g.universe[i], i);
    std::map<Symbol, detail::Matrix> m;
    for (auto sym : tag.signature()) m[sym] = detail::Matrix(n);
    for (const auto& [sym, pairs] : g.relations) {
        if (!tag.has(sym)) throw ConfigError("generator for a symbol outside the signature");
        for (const auto& [u, v] : pairs) {
            auto iu = index.find(u), iv = index.find(v);
            if (iu == index.end() || iv == index.end())
                throw std::invalid_argument("generator mentions a term outside the universe");
            m[sym].set(iu->second, iv->second);
        }
    }
    for (auto sym : tag.signature()) {
        auto& r = m[sym];
        if (sym == Symbol::Adj) {
            detail::symmetric_close(r);
            if (tag.is_equivalence()) detail::transitive_close(r);
        } else if (sym != Symbol::Arrow) {
            detail::transitive_close(r);
        }
    }
    if (tag.family == Family::ConvexOrderedEquiv) {
        while (detail::convexity_step(m[Symbol::Less], m[Symbol::Adj])) detail::transitive_close(m[Symbol::Less]);
    }
    for (auto sym : tag.signature()) {
        if (sym == Symbol::Adj || sym == Symbol::Arrow) continue;
        for (std::size_t i = 0; i < n; ++i)
            if (m[sym].get(i, i))
                throw ClosureCycle("closure of " + std::string(symbol_name(sym)) + " has a cycle through " +
                                   g.universe[i].key());
    }
    RelationTable rels;
    for (auto sym : tag.signature()) {
        auto& pairs = rels[sym];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j && m[sym].get(i, j)) pairs.emplace_back(g.universe[i], g.universe[j]);
    }
    return make_finite(tag, g.universe, rels);
}

namespace detail {

// Generator bullets for one extension window, written from the placement
// rules without consulting the closed-form comparators.
class GeneratorBuilder {
public:
    GeneratorBuilder(const ExtensionPresentation& e, std::span<const Term> window)
        : base_(e.base()), window_(window.begin(), window.end()) {
        for (const auto& t : window_) {
            if (t.is_witness() && t.stage() == e.stage()) {
                wits_.push_back(t);
                slots_.push_back(*e.placement(t.type()));
            } else {
                olds_.push_back(t);
            }
        }
    }

    GeneratorSet build() {
        GeneratorSet g{window_, {}};
        for (auto sym : base_.tag().signature()) {
            auto& out = g.relations[sym];
            for (const auto& u : olds_)
                for (const auto& v : olds_)
                    if (!(u == v) && base_.holds(sym, u, v)) out.emplace_back(u, v);
        }
        const auto fam = base_.tag().family;
        if (base_.tag().has(Symbol::Less)) {
            if (fam == Family::ConvexOrderedEquiv) convex(g);
            else linear(g, Symbol::Less, &Placement::order);
        }
        if (fam == Family::OrderedLinearOrder) linear(g, Symbol::Lhd, &Placement::lhd);
        if (fam == Family::LinExtPartialOrder) linext(g);
        if (base_.tag().has(Symbol::Arrow)) local(g);
        if (base_.tag().is_graph()) graph(g);
        if (fam == Family::BoundedOrderedEquiv) bounded(g);
        return g;
    }

private:
    bool rel(Symbol s, const Term& u, const Term& v) const { return base_.holds(s, u, v); }
    bool tie(std::size_t i, std::size_t j) const {
        if (wits_[i].type() == wits_[j].type()) return wits_[i].index() < wits_[j].index();
        return precedes(wits_[i].type(), wits_[j].type(), base_);
    }

    // a_τ < x, x < b for base b above a_τ, chains increasing, ≺ at shared anchors.
    void linear(GeneratorSet& g, Symbol s, std::optional<LinearSlot> Placement::* f) {
        auto& out = g.relations[s];
        for (std::size_t i = 0; i < wits_.size(); ++i) {
            const auto& slot = *(slots_[i].*f);
            const auto& x = wits_[i];
            for (const auto& b : olds_) {
                if (slot.bottom) {
                    out.emplace_back(x, b);
                } else if (b == slot.anchor) {
                    out.emplace_back(b, x);
                } else if (rel(s, slot.anchor, b)) {
                    out.emplace_back(x, b);
                }
            }
            for (std::size_t j = 0; j < wits_.size(); ++j) {
                if (i == j) continue;
                const auto& other = *(slots_[j].*f);
                bool shared = slot.bottom ? other.bottom : (!other.bottom && other.anchor == slot.anchor);
                if (shared && tie(i, j)) out.emplace_back(x, wits_[j]);
            }
        }
    }

    void linext(GeneratorSet& g) {
        auto& out = g.relations[Symbol::Lhd];
        for (std::size_t i = 0; i < wits_.size(); ++i) {
            for (const auto& c : slots_[i].lhd_below) out.emplace_back(c, wits_[i]);
            for (const auto& d : slots_[i].lhd_above) out.emplace_back(wits_[i], d);
        }
    }

    // Case (a): x is an immediate successor of a_τ. Case (b): the predecessors
    // of x are exactly the successors of b_τ.
    void local(GeneratorSet& g) {
        auto& out = g.relations[Symbol::Arrow];
        for (std::size_t i = 0; i < wits_.size(); ++i) {
            const auto& x = wits_[i];
            const auto& s = *slots_[i].arrow;
            for (const auto& y : olds_) {
                bool pred = s.after_anchor ? (y == s.anchor || rel(Symbol::Arrow, y, s.anchor))
                                           : rel(Symbol::Arrow, s.anchor, y);
                if (pred) out.emplace_back(y, x);
                else out.emplace_back(x, y);
            }
            for (std::size_t j = 0; j < wits_.size(); ++j) {
                if (i == j) continue;
                const auto& t = *slots_[j].arrow;
                bool forward;
                if (!s.anchor.valid() || !t.anchor.valid()) forward = tie(i, j);
                else if (s.anchor == t.anchor && s.after_anchor != t.after_anchor) forward = s.after_anchor;
                else if (s.anchor == t.anchor)
                    forward = wits_[i].type() == wits_[j].type()
                                  ? wits_[i].index() < wits_[j].index()
                                  : compare_types_at(wits_[i].type(), wits_[j].type(), base_, s.anchor) < 0;
                else if (s.after_anchor && t.after_anchor) forward = rel(Symbol::Arrow, s.anchor, t.anchor);
                else if (!s.after_anchor && !t.after_anchor) forward = rel(Symbol::Arrow, s.anchor, t.anchor);
                else if (s.after_anchor) forward = rel(Symbol::Arrow, t.anchor, s.anchor);  // b′ → a
                else forward = !rel(Symbol::Arrow, s.anchor, t.anchor);                   // a′ → b
                if (forward) out.emplace_back(x, wits_[j]);
            }
        }
    }

    void graph(GeneratorSet& g) {
        auto& out = g.relations[Symbol::Adj];
        for (std::size_t i = 0; i < wits_.size(); ++i)
            for (const auto& c : slots_[i].adjacent) out.emplace_back(wits_[i], c);
    }

    void bounded(GeneratorSet& g) {
        auto& out = g.relations[Symbol::Adj];
        std::optional<Term> first_fresh;
        for (std::size_t i = 0; i < wits_.size(); ++i) {
            if (slots_[i].class_anchor) {
                out.emplace_back(wits_[i], *slots_[i].class_anchor);
            } else if (!first_fresh) {
                first_fresh = wits_[i];
            } else {
                out.emplace_back(wits_[i], *first_fresh);
            }
        }
    }

    // Convex placements: above a inside its class, below the class minimum k,
    // after the whole class of e, or below everything. ∼ only to the anchor
    // class or along a fresh chain.
    void convex(GeneratorSet& g) {
        auto& lt = g.relations[Symbol::Less];
        auto& eq = g.relations[Symbol::Adj];
        for (std::size_t i = 0; i < wits_.size(); ++i) {
            const auto& x = wits_[i];
            const auto& p = slots_[i];
            const Term& e = p.convex_anchor;
            switch (p.convex) {
                case ConvexMode::AboveInClass:
                    eq.emplace_back(x, e);
                    lt.emplace_back(e, x);
                    for (const auto& b : olds_)
                        if (rel(Symbol::Less, e, b)) lt.emplace_back(x, b);
                    break;
                case ConvexMode::BelowInClass:
                    eq.emplace_back(x, e);
                    lt.emplace_back(x, e);
                    for (const auto& b : olds_)
                        if (rel(Symbol::Less, b, e)) lt.emplace_back(b, x);
                    break;
                case ConvexMode::AfterClass:
                    for (const auto& b : olds_) {
                        if (b == e || rel(Symbol::Adj, b, e)) lt.emplace_back(b, x);
                        else if (rel(Symbol::Less, e, b)) lt.emplace_back(x, b);
                        else lt.emplace_back(b, x);
                    }
                    break;
                case ConvexMode::Bottom:
                    for (const auto& b : olds_) lt.emplace_back(x, b);
                    break;
            }
            for (std::size_t j = 0; j < wits_.size(); ++j) {
                if (i == j) continue;
                const auto& q = slots_[j];
                bool fresh_i = p.convex == ConvexMode::AfterClass || p.convex == ConvexMode::Bottom;
                if (fresh_i && x.type() == wits_[j].type()) eq.emplace_back(x, wits_[j]);
                bool same_gap = p.convex == q.convex &&
                                (p.convex == ConvexMode::Bottom || e == q.convex_anchor ||
                                 (p.convex == ConvexMode::AfterClass && rel(Symbol::Adj, e, q.convex_anchor)));
                if (same_gap && tie(i, j)) lt.emplace_back(x, wits_[j]);
                if (p.convex == ConvexMode::Bottom && q.convex != ConvexMode::Bottom) lt.emplace_back(x, wits_[j]);
            }
        }
    }

    const Structure& base_;
    std::vector<Term> window_;
    std::vector<Term> olds_, wits_;
    std::vector<Placement> slots_;
};

}  // namespace detail

/// Generator relations of an extension window (base relations plus bullets).
inline GeneratorSet generators(const Structure& e, std::span<const Term> window) {
    auto* ext = as_extension(e);
    if (!ext) throw ConfigError("generators need an extension structure");
    return detail::GeneratorBuilder(*ext, window).build();
}

struct OracleReport {
    std::size_t pairs = 0;
    std::size_t mismatches = 0;
    std::string first_mismatch;
    bool ok() const { return mismatches == 0; }
};

/// Compare the closed-form comparators of `e` with the closure oracle on
/// every ordered pair of the window. Throws ClosureCycle on a cycle.
inline OracleReport compare_to_oracle(const Structure& e, std::span<const Term> window) {
    auto closed = closure_oracle(generators(e, window), e.tag());
    OracleReport r;
    for (auto sym : e.tag().signature())
        for (const auto& u : window)
            for (const auto& v : window) {
                if (u == v) continue;
                ++r.pairs;
                bool want = closed.holds(sym, u, v);
                if (e.holds(sym, u, v) != want) {
                    if (r.mismatches++ == 0)
                        r.first_mismatch = u.key() + " " + std::string(symbol_name(sym)) + " " + v.key() +
                                           ": comparator " + (want ? "false" : "true") + ", closure " +
                                           (want ? "true" : "false");
                }
            }
    return r;
}

}  // namespace abap

#endif  // ABAP_CLOSURE_ORACLE_HPP
