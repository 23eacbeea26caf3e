#ifndef ABAP_ENCODINGS_HPP
#define ABAP_ENCODINGS_HPP

#include <stdexcept>

#include "abap/structure.hpp"

namespace abap {

namespace detail {

inline void require_finite(const Structure& s, const char* op) {
    if (!s.is_finite()) throw std::invalid_argument(std::string(op) + " works on finite structures only");
}

inline TermPairs pairs_of(const Structure& s, Symbol sym) {
    TermPairs out;
    for (const auto& u : s.universe())
        for (const auto& v : s.universe())
            if (!(u == v) && s.holds(sym, u, v)) out.emplace_back(u, v);
    return out;
}

}  // namespace detail

/// (<, →) ↦ (<, ∼) with a∼b iff the arrow between a and b points up in <.
inline Structure tournament_to_ordered_graph(const Structure& t) {
    detail::require_finite(t, "tournament_to_ordered_graph");
    if (!t.tag().has(Symbol::Less) || !t.tag().has(Symbol::Arrow))
        throw ConfigError("tournament_to_ordered_graph needs < and ->");
    TermPairs adj;
    const auto& u = t.universe();
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = i + 1; j < u.size(); ++j) {
            bool f = t.holds(Symbol::Arrow, u[i], u[j]), b = t.holds(Symbol::Arrow, u[j], u[i]);
            if (f == b) throw std::invalid_argument("-> is not a tournament on " + u[i].key() + ", " + u[j].key());
            const Term& lo = t.less(u[i], u[j]) ? u[i] : u[j];
            const Term& hi = lo == u[i] ? u[j] : u[i];
            if (t.holds(Symbol::Arrow, lo, hi)) adj.emplace_back(lo, hi);
        }
    return make_finite(ClassTag::ordered_graph(), u, {{Symbol::Less, detail::pairs_of(t, Symbol::Less)}, {Symbol::Adj, adj}});
}

/// Inverse of tournament_to_ordered_graph: a→b iff (a<b and a∼b) or (b<a and a≁b).
inline Structure ordered_graph_to_tournament(const Structure& g, const ClassTag& tag = ClassTag::ordered_local()) {
    detail::require_finite(g, "ordered_graph_to_tournament");
    TermPairs arrows;
    const auto& u = g.universe();
    for (const auto& a : u)
        for (const auto& b : u) {
            if (a == b) continue;
            bool up = g.less(a, b);
            if (up == g.holds(Symbol::Adj, a, b)) arrows.emplace_back(a, b);
        }
    return make_finite(tag, u, {{Symbol::Less, detail::pairs_of(g, Symbol::Less)}, {Symbol::Arrow, arrows}});
}

/// (<, ⊲) ↦ (<, ∼) with a∼b iff a⊲b or b⊲a.
inline Structure partial_to_ordered_graph(const Structure& p) {
    detail::require_finite(p, "partial_to_ordered_graph");
    if (p.tag().family != Family::LinExtPartialOrder) throw ConfigError("partial_to_ordered_graph needs linext");
    TermPairs adj;
    for (const auto& [a, b] : detail::pairs_of(p, Symbol::Lhd)) {
        if (!p.less(a, b)) throw std::invalid_argument("< does not extend lhd at " + a.key() + ", " + b.key());
        adj.emplace_back(a, b);
    }
    return make_finite(ClassTag::ordered_graph(), p.universe(), {{Symbol::Less, detail::pairs_of(p, Symbol::Less)}, {Symbol::Adj, adj}});
}

/// Inverse of partial_to_ordered_graph: a⊲b iff a<b and a∼b.
inline Structure ordered_graph_to_partial(const Structure& g) {
    detail::require_finite(g, "ordered_graph_to_partial");
    TermPairs lhd;
    for (const auto& [a, b] : detail::pairs_of(g, Symbol::Adj))
        if (g.less(a, b)) lhd.emplace_back(a, b);
    return make_finite(ClassTag::linext(), g.universe(), {{Symbol::Less, detail::pairs_of(g, Symbol::Less)}, {Symbol::Lhd, lhd}});
}

/// (L,<) ↦ (L,<,<).
inline Structure bc_reduction_diag(const Structure& l) {
    detail::require_finite(l, "bc_reduction_diag");
    auto lt = detail::pairs_of(l, Symbol::Less);
    return make_finite(ClassTag::ordered_linear(), l.universe(), {{Symbol::Less, lt}, {Symbol::Lhd, lt}});
}

/// (L,<) ↦ (L,<,⊥): the edgeless ordered graph.
inline Structure bc_reduction_empty(const Structure& l) {
    detail::require_finite(l, "bc_reduction_empty");
    return make_finite(ClassTag::ordered_graph(), l.universe(), {{Symbol::Less, detail::pairs_of(l, Symbol::Less)}, {Symbol::Adj, {}}});
}

/// Complement of ∼ off the diagonal; < and the tag are kept.
inline Structure complement(const Structure& g) {
    detail::require_finite(g, "complement");
    if (!g.tag().is_graph()) throw ConfigError("complement needs a graph tag");
    RelationTable rels;
    if (g.tag().has(Symbol::Less)) rels[Symbol::Less] = detail::pairs_of(g, Symbol::Less);
    auto& adj = rels[Symbol::Adj];
    for (const auto& a : g.universe())
        for (const auto& b : g.universe())
            if (!(a == b) && !g.holds(Symbol::Adj, a, b)) adj.emplace_back(a, b);
    auto tag = g.tag().has(Symbol::Less) ? ClassTag::ordered_graph() : ClassTag::graph();
    return make_finite(tag, g.universe(), rels);
}

}  // namespace abap

#endif  // ABAP_ENCODINGS_HPP
