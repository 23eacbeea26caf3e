#ifndef ABAP_TYPES_HPP
#define ABAP_TYPES_HPP

#include <algorithm>
#include <compare>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "abap/structure.hpp"

namespace abap {

// ---------------------------------------------------------------------------
// Placement data: the anchors a canonical type contributes to the extension.
// ---------------------------------------------------------------------------

/// Position in a linear coordinate: immediately above `anchor`, or in the
/// chain below the minimum (`bottom`).
struct LinearSlot {
    bool bottom = false;
    Term anchor;
};

/// Position in a local order: immediate successor of a_τ (`after_anchor`),
/// or immediate successor of the antipode of b_τ.
struct LocalSlot {
    bool after_anchor = true;
    Term anchor;  // invalid only for the empty type over an empty structure
};

enum class ConvexMode { AboveInClass, BelowInClass, AfterClass, Bottom };

struct Placement {
    std::optional<LinearSlot> order;  // <
    std::optional<LinearSlot> lhd;    // ⊲ as a second linear order
    std::optional<LocalSlot> arrow;   // →
    std::vector<Term> adjacent;       // graph neighbours of the witness
    std::vector<Term> lhd_below;      // c with c ⊲ x
    std::vector<Term> lhd_above;      // d with x ⊲ d
    ConvexMode convex = ConvexMode::Bottom;
    Term convex_anchor;
    std::optional<Term> class_anchor;  // bounded equivalence; nullopt = fresh class
};

namespace detail {

inline bool rel(const Structure& s, Symbol sym, const Term& u, const Term& v) {
    return s.presentation().holds(sym, u, v);
}

inline bool equiv(const Structure& s, const Term& u, const Term& v) {
    return u == v || rel(s, Symbol::Adj, u, v);
}

/// Greatest element of `xs` under `sym` (every other element relates to it).
inline std::optional<Term> greatest(const Structure& s, Symbol sym, const std::vector<Term>& xs) {
    for (const auto& m : xs) {
        bool top = true;
        for (const auto& o : xs)
            if (!(o == m) && !rel(s, sym, o, m)) top = false;
        if (top) return m;
    }
    return std::nullopt;
}

inline std::optional<Term> least(const Structure& s, Symbol sym, const std::vector<Term>& xs) {
    for (const auto& m : xs) {
        bool bottom = true;
        for (const auto& o : xs)
            if (!(o == m) && !rel(s, sym, m, o)) bottom = false;
        if (bottom) return m;
    }
    return std::nullopt;
}

inline bool only_kinds(const AdmissibleType& t, std::initializer_list<LiteralKind> allowed) {
    for (const auto& l : t.literals())
        if (std::find(allowed.begin(), allowed.end(), l.kind) == allowed.end()) return false;
    return true;
}

// Canonical linear coordinate: {a<x}, {a<x, x<b} with a<b, or {x<b0} for
// the minimum b0.
inline std::optional<LinearSlot> linear_part(const AdmissibleType& t, const Structure& s, Symbol sym,
                                             LiteralKind gt, LiteralKind lt) {
    auto g = t.params_of(gt);
    auto l = t.params_of(lt);
    if (g.size() == 1 && l.size() <= 1) {
        if (l.size() == 1 && (g[0] == l[0] || !rel(s, sym, g[0], l[0]))) return std::nullopt;
        return LinearSlot{false, g[0]};
    }
    if (g.empty() && l.size() == 1) {
        auto m = s.minimum(sym);
        if (m && *m == l[0]) return LinearSlot{true, l[0]};
    }
    return std::nullopt;
}

// One-point local-order test on params ∪ {x}. `in`/`out` give x's arrows.
inline bool local_extension_ok(const Structure& s, const std::vector<Term>& in, const std::vector<Term>& out) {
    std::vector<Term> v = in;
    v.insert(v.end(), out.begin(), out.end());
    const std::size_t n = v.size() + 1;  // x is the last vertex
    std::vector<char> arr(n * n, 0);
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            if (i != j) arr[i * n + j] = rel(s, Symbol::Arrow, v[i], v[j]);
    for (std::size_t i = 0; i < v.size(); ++i) {
        bool to_x = i < in.size();
        arr[i * n + (n - 1)] = to_x;
        arr[(n - 1) * n + i] = !to_x;
    }
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (arr[i * n + j] == arr[j * n + i]) return false;
    for (std::size_t y = 0; y < n; ++y)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c) {
                    if (a == y || b == y || c == y || a == b || b == c || a == c) continue;
                    if (!(arr[a * n + b] && arr[b * n + c] && arr[c * n + a])) continue;
                    bool all_in = arr[a * n + y] && arr[b * n + y] && arr[c * n + y];
                    bool all_out = arr[y * n + a] && arr[y * n + b] && arr[y * n + c];
                    if (all_in || all_out) return false;
                }
    return true;
}

inline bool has_clique(const Structure& s, const std::vector<Term>& xs, int k) {
    if (k <= 0) return true;
    std::vector<Term> pick;
    std::function<bool(std::size_t)> rec = [&](std::size_t from) {
        if (static_cast<int>(pick.size()) == k) return true;
        for (std::size_t i = from; i < xs.size(); ++i) {
            bool ok = true;
            for (const auto& p : pick)
                if (!rel(s, Symbol::Adj, p, xs[i])) ok = false;
            if (!ok) continue;
            pick.push_back(xs[i]);
            if (rec(i + 1)) return true;
            pick.pop_back();
        }
        return false;
    };
    return rec(0);
}

// Local part: one arrow literal per parameter, consistent, and no literal
// implied by the others (flipping any single literal must stay consistent).
inline std::optional<LocalSlot> local_part(const AdmissibleType& t, const Structure& s) {
    auto in = t.params_of(LiteralKind::In);
    auto out = t.params_of(LiteralKind::Out);
    if (in.empty() && out.empty()) return std::nullopt;
    for (const auto& a : in)
        if (std::find(out.begin(), out.end(), a) != out.end()) return std::nullopt;
    if (!local_extension_ok(s, in, out)) return std::nullopt;
    for (std::size_t i = 0; i < in.size(); ++i) {
        auto in2 = in, out2 = out;
        out2.push_back(in2[i]);
        in2.erase(in2.begin() + static_cast<long>(i));
        if (!local_extension_ok(s, in2, out2)) return std::nullopt;
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        auto in2 = in, out2 = out;
        in2.push_back(out2[i]);
        out2.erase(out2.begin() + static_cast<long>(i));
        if (!local_extension_ok(s, in2, out2)) return std::nullopt;
    }
    auto a = greatest(s, Symbol::Arrow, in);
    auto b = greatest(s, Symbol::Arrow, out);
    if (!in.empty() && (out.empty() || rel(s, Symbol::Arrow, *a, *b))) return LocalSlot{true, *a};
    return LocalSlot{false, *b};
}

inline bool fresh_class_allowed(const Structure& s) {
    if (!s.tag().n) return true;
    auto k = s.class_count();
    return k && static_cast<int>(*k) < *s.tag().n;
}

inline Placement empty_type_placement(const ClassTag& tag) {
    Placement p;
    if (tag.has(Symbol::Less)) p.order = LinearSlot{true, Term()};
    if (tag.family == Family::OrderedLinearOrder) p.lhd = LinearSlot{true, Term()};
    if (tag.has(Symbol::Arrow)) p.arrow = LocalSlot{false, Term()};
    p.convex = ConvexMode::Bottom;
    return p;
}

}  // namespace detail

/// Canonical-form analysis of τ over `s`: the placement anchors when τ is a
/// canonical admissible type of the enumeration, nullopt otherwise.
inline std::optional<Placement> analyze(const AdmissibleType& t, const Structure& s) {
    using K = LiteralKind;
    const auto& tag = s.tag();
    for (const auto& l : t.literals())
        if (!s.contains(l.param)) return std::nullopt;

    if (t.empty()) {
        if (tag.family == Family::Graph || tag.family == Family::KnFreeGraph || s.empty())
            return detail::empty_type_placement(tag);
        return std::nullopt;
    }

    Placement p;
    switch (tag.family) {
        case Family::LinearOrder:
            if (!detail::only_kinds(t, {K::Gt, K::Lt})) return std::nullopt;
            p.order = detail::linear_part(t, s, Symbol::Less, K::Gt, K::Lt);
            if (!p.order) return std::nullopt;
            return p;

        case Family::OrderedLinearOrder:
            if (!detail::only_kinds(t, {K::Gt, K::Lt, K::PoGt, K::PoLt})) return std::nullopt;
            p.order = detail::linear_part(t, s, Symbol::Less, K::Gt, K::Lt);
            p.lhd = detail::linear_part(t, s, Symbol::Lhd, K::PoGt, K::PoLt);
            if (!p.order || !p.lhd) return std::nullopt;
            return p;

        case Family::LocalOrder:
            if (!detail::only_kinds(t, {K::In, K::Out})) return std::nullopt;
            p.arrow = detail::local_part(t, s);
            if (!p.arrow) return std::nullopt;
            return p;

        case Family::OrderedLocalOrder:
            if (!detail::only_kinds(t, {K::Gt, K::Lt, K::In, K::Out})) return std::nullopt;
            p.order = detail::linear_part(t, s, Symbol::Less, K::Gt, K::Lt);
            p.arrow = detail::local_part(t, s);
            if (!p.order || !p.arrow) return std::nullopt;
            return p;

        case Family::Graph:
        case Family::KnFreeGraph:
        case Family::OrderedGraph:
        case Family::OrderedKnFreeGraph: {
            if (!detail::only_kinds(t, {K::Gt, K::Lt, K::Adj})) return std::nullopt;
            if (tag.has(Symbol::Less)) {
                p.order = detail::linear_part(t, s, Symbol::Less, K::Gt, K::Lt);
                if (!p.order) return std::nullopt;
            } else if (!t.params_of(K::Gt).empty() || !t.params_of(K::Lt).empty()) {
                return std::nullopt;
            }
            p.adjacent = t.params_of(K::Adj);
            if (auto n = tag.clique_bound(); n && detail::has_clique(s, p.adjacent, *n - 1)) return std::nullopt;
            return p;
        }

        case Family::LinExtPartialOrder: {
            if (!detail::only_kinds(t, {K::Gt, K::Lt, K::PoGt, K::PoLt})) return std::nullopt;
            auto g = t.params_of(K::Gt), l = t.params_of(K::Lt);
            auto c = t.params_of(K::PoGt), d = t.params_of(K::PoLt);
            if (g.size() > 1 || l.size() > 1) return std::nullopt;
            if (t.params().size() != t.size()) return std::nullopt;  // one literal per parameter
            for (const auto& u : c)
                for (const auto& v : c)
                    if (detail::rel(s, Symbol::Lhd, u, v)) return std::nullopt;
            for (const auto& u : d)
                for (const auto& v : d)
                    if (detail::rel(s, Symbol::Lhd, u, v)) return std::nullopt;
            for (const auto& u : c)
                for (const auto& v : d)
                    if (!detail::rel(s, Symbol::Lhd, u, v)) return std::nullopt;
            for (const auto& u : c)
                if (!g.empty() && !detail::rel(s, Symbol::Less, u, g[0])) return std::nullopt;
            for (const auto& v : d)
                if (!l.empty() && !detail::rel(s, Symbol::Less, l[0], v)) return std::nullopt;
            auto lower = g;
            lower.insert(lower.end(), c.begin(), c.end());
            auto upper = l;
            upper.insert(upper.end(), d.begin(), d.end());
            auto lo = detail::greatest(s, Symbol::Less, lower);
            auto up = detail::least(s, Symbol::Less, upper);
            if (lo && up && !detail::rel(s, Symbol::Less, *lo, *up)) return std::nullopt;
            if (lo) {
                p.order = LinearSlot{false, *lo};
            } else {
                auto m = s.minimum(Symbol::Less);
                if (!m || !up || !(*up == *m)) return std::nullopt;
                p.order = LinearSlot{true, *m};
            }
            p.lhd_below = c;
            p.lhd_above = d;
            return p;
        }

        case Family::ConvexOrderedEquiv: {
            if (!detail::only_kinds(t, {K::Gt, K::Lt, K::Adj})) return std::nullopt;
            auto g = t.params_of(K::Gt), l = t.params_of(K::Lt), a = t.params_of(K::Adj);
            if (g.size() > 1 || l.size() > 1 || a.size() > 1) return std::nullopt;
            if (g.size() == 1) {
                if (l.size() == 1 && !detail::rel(s, Symbol::Less, g[0], l[0])) return std::nullopt;
                if (a.size() == 1) {
                    if (!(a[0] == g[0]) || !l.empty()) return std::nullopt;
                    p.convex = ConvexMode::AboveInClass;
                } else if (l.size() == 1 && detail::rel(s, Symbol::Adj, g[0], l[0])) {
                    p.convex = ConvexMode::AboveInClass;
                } else {
                    p.convex = ConvexMode::AfterClass;
                }
                p.convex_anchor = g[0];
                return p;
            }
            if (l.size() == 1 && a.size() == 1) {
                if (!(a[0] == l[0])) return std::nullopt;
                auto km = s.class_minimum(l[0]);
                if (!km || !(*km == l[0])) return std::nullopt;
                p.convex = ConvexMode::BelowInClass;
                p.convex_anchor = l[0];
                return p;
            }
            if (l.size() == 1 && a.empty()) {
                auto m = s.minimum(Symbol::Less);
                if (!m || !(*m == l[0])) return std::nullopt;
                p.convex = ConvexMode::Bottom;
                p.convex_anchor = l[0];
                return p;
            }
            return std::nullopt;
        }

        case Family::BoundedOrderedEquiv: {
            if (!detail::only_kinds(t, {K::Gt, K::Lt, K::Adj})) return std::nullopt;
            p.order = detail::linear_part(t, s, Symbol::Less, K::Gt, K::Lt);
            if (!p.order) return std::nullopt;
            auto a = t.params_of(K::Adj);
            if (a.size() > 1) return std::nullopt;
            if (a.empty()) {
                if (!detail::fresh_class_allowed(s)) return std::nullopt;
                return p;
            }
            const Term& c = a[0];
            auto g = t.params_of(K::Gt), l = t.params_of(K::Lt);
            Term rep;
            if (!g.empty() && detail::equiv(s, g[0], c)) rep = g[0];
            else if (!l.empty() && detail::equiv(s, l[0], c)) rep = l[0];
            else rep = s.class_minimum(c).value_or(c);
            if (!(rep == c)) return std::nullopt;
            p.class_anchor = c;
            return p;
        }
    }
    return std::nullopt;
}

/// True iff τ is realizable in some one-point extension within the class.
/// The check runs over the substructure induced on τ's parameters.
inline bool is_admissible(const AdmissibleType& t, const Structure& s, const ClassTag& tag) {
    using K = LiteralKind;
    using detail::rel;
    if (s.tag().signature() != tag.signature())
        throw ConfigError("type over " + s.tag().name() + " checked against " + tag.name());
    for (const auto& l : t.literals())
        if (!s.contains(l.param)) return false;

    auto allowed = [&](K k) {
        switch (k) {
            case K::Gt:
            case K::Lt: return tag.has(Symbol::Less);
            case K::PoGt:
            case K::PoLt: return tag.has(Symbol::Lhd);
            case K::PoInc: return tag.family == Family::LinExtPartialOrder;
            case K::In:
            case K::Out: return tag.has(Symbol::Arrow);
            case K::Adj:
            case K::NonAdj: return tag.has(Symbol::Adj);
        }
        return false;
    };
    for (const auto& l : t.literals())
        if (!allowed(l.kind)) return false;

    // One literal per parameter and relation family.
    auto family_of = [](K k) {
        switch (k) {
            case K::Gt:
            case K::Lt: return 0;
            case K::PoGt:
            case K::PoLt:
            case K::PoInc: return 1;
            case K::In:
            case K::Out: return 2;
            default: return 3;
        }
    };
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i + 1; j < t.size(); ++j)
            if (t.literals()[i].param == t.literals()[j].param &&
                family_of(t.literals()[i].kind) == family_of(t.literals()[j].kind))
                return false;

    auto gt = t.params_of(K::Gt), lt = t.params_of(K::Lt);
    auto all_below = [&](Symbol sym, const std::vector<Term>& lo, const std::vector<Term>& hi) {
        for (const auto& a : lo)
            for (const auto& b : hi)
                if (!rel(s, sym, a, b)) return false;
        return true;
    };

    switch (tag.family) {
        case Family::LinearOrder: return all_below(Symbol::Less, gt, lt);
        case Family::OrderedLinearOrder:
            return all_below(Symbol::Less, gt, lt) &&
                   all_below(Symbol::Lhd, t.params_of(K::PoGt), t.params_of(K::PoLt));
        case Family::LocalOrder:
        case Family::OrderedLocalOrder:
            return all_below(Symbol::Less, gt, lt) &&
                   detail::local_extension_ok(s, t.params_of(K::In), t.params_of(K::Out));
        case Family::Graph:
        case Family::KnFreeGraph:
        case Family::OrderedGraph:
        case Family::OrderedKnFreeGraph: {
            if (!all_below(Symbol::Less, gt, lt)) return false;
            auto n = tag.clique_bound();
            return !n || !detail::has_clique(s, t.params_of(K::Adj), *n - 1);
        }
        case Family::LinExtPartialOrder: {
            auto c = t.params_of(K::PoGt), d = t.params_of(K::PoLt), e = t.params_of(K::PoInc);
            if (!all_below(Symbol::Lhd, c, d)) return false;
            auto lower = gt, upper = lt;
            lower.insert(lower.end(), c.begin(), c.end());
            upper.insert(upper.end(), d.begin(), d.end());
            if (!all_below(Symbol::Less, lower, upper)) return false;
            for (const auto& y : e) {
                for (const auto& cc : c)
                    if (rel(s, Symbol::Lhd, y, cc)) return false;
                for (const auto& dd : d)
                    if (rel(s, Symbol::Lhd, dd, y)) return false;
            }
            return true;
        }
        case Family::ConvexOrderedEquiv:
        case Family::BoundedOrderedEquiv: {
            if (!all_below(Symbol::Less, gt, lt)) return false;
            auto adj = t.params_of(K::Adj), non = t.params_of(K::NonAdj);
            for (const auto& a : adj)
                for (const auto& b : adj)
                    if (!detail::equiv(s, a, b)) return false;
            for (const auto& a : adj)
                for (const auto& b : non)
                    if (detail::equiv(s, a, b)) return false;
            auto params = t.params();
            auto lo = detail::greatest(s, Symbol::Less, gt);
            auto hi = detail::least(s, Symbol::Less, lt);
            auto below = [&](const std::optional<Term>& a, const std::optional<Term>& b) {
                return !a || !b || rel(s, Symbol::Less, *a, *b);
            };
            // x joins the class of k: no outsider may sit between x and the class.
            auto joins = [&](const Term& k) {
                for (const auto& b : non)
                    if (detail::equiv(s, k, b)) return false;
                if (tag.family == Family::BoundedOrderedEquiv) return true;
                std::vector<Term> cls, lower_out, upper_out;
                for (const auto& y : params)
                    if (detail::equiv(s, y, k)) cls.push_back(y);
                auto cmin = detail::least(s, Symbol::Less, cls);
                auto cmax = detail::greatest(s, Symbol::Less, cls);
                for (const auto& y : params) {
                    if (detail::equiv(s, y, k)) continue;
                    if (rel(s, Symbol::Less, y, *cmin)) lower_out.push_back(y);
                    else upper_out.push_back(y);
                }
                auto zlo = detail::greatest(s, Symbol::Less, lower_out);
                auto zhi = detail::least(s, Symbol::Less, upper_out);
                return below(lo, zhi) && below(zlo, hi);
            };
            if (!adj.empty()) return joins(adj[0]);
            for (const auto& k : params)
                if (joins(k)) return true;
            if (tag.family == Family::BoundedOrderedEquiv) {
                std::size_t classes = 0;
                for (std::size_t i = 0; i < params.size(); ++i) {
                    bool first = true;
                    for (std::size_t j = 0; j < i; ++j)
                        if (detail::equiv(s, params[i], params[j])) first = false;
                    if (first) ++classes;
                }
                return !tag.n || static_cast<int>(classes) + 1 <= *tag.n;
            }
            // Fresh convex class: some gap of the parameters inside (lo, hi)
            // that is not interior to a class.
            std::vector<Term> inside;
            for (const auto& y : params)
                if (below(lo, y) && below(y, hi)) inside.push_back(y);
            std::sort(inside.begin(), inside.end(), [&](const Term& a, const Term& b) { return rel(s, Symbol::Less, a, b); });
            std::vector<std::optional<Term>> fence;
            fence.push_back(lo);
            for (const auto& y : inside) fence.emplace_back(y);
            fence.push_back(hi);
            for (std::size_t i = 0; i + 1 < fence.size(); ++i) {
                const auto& a = fence[i];
                const auto& b = fence[i + 1];
                if (a && b && (*a == *b)) continue;
                if (!a || !b || !detail::equiv(s, *a, *b)) return true;
            }
            return false;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// TypeOrder
// ---------------------------------------------------------------------------

enum class OrderMode { Linear, Tournament, Label };

inline OrderMode order_mode(const ClassTag& tag) {
    if (tag.has(Symbol::Less)) return OrderMode::Linear;
    if (tag.has(Symbol::Arrow)) return OrderMode::Tournament;
    return OrderMode::Label;
}

namespace detail {

inline std::vector<int> shape(const AdmissibleType& t) {
    std::vector<int> out;
    for (const auto& l : t.literals()) out.push_back(static_cast<int>(l.kind));
    return out;
}

// Parameters grouped by literal kind, each group in structure order.
inline std::vector<Term> ordered_params(const AdmissibleType& t, const Structure& s, OrderMode mode) {
    std::vector<Term> out;
    const auto& lits = t.literals();
    for (std::size_t i = 0; i < lits.size();) {
        std::size_t j = i;
        std::vector<Term> group;
        while (j < lits.size() && lits[j].kind == lits[i].kind) group.push_back(lits[j++].param);
        if (mode == OrderMode::Linear) {
            std::sort(group.begin(), group.end(), [&](const Term& a, const Term& b) { return rel(s, Symbol::Less, a, b); });
        } else if (mode == OrderMode::Tournament) {
            // Repeatedly take a source of the remaining sub-tournament.
            std::vector<Term> sorted;
            while (!group.empty()) {
                std::size_t pick = 0;
                for (std::size_t k = 0; k < group.size(); ++k) {
                    bool source = true;
                    for (std::size_t q = 0; q < group.size(); ++q)
                        if (q != k && !rel(s, Symbol::Arrow, group[k], group[q])) source = false;
                    if (source) {
                        pick = k;
                        break;
                    }
                }
                sorted.push_back(group[pick]);
                group.erase(group.begin() + static_cast<long>(pick));
            }
            group = std::move(sorted);
        }
        out.insert(out.end(), group.begin(), group.end());
        i = j;
    }
    return out;
}

}  // namespace detail

/// The type order ≺: shapes first (literal kinds, lexicographically), then
/// parameter tuples compared through the structure's < (linear mode) or →
/// (tournament mode, where the result need not be transitive). Unordered
/// graphs fall back to term order, which is stable but not equivariant.
inline std::strong_ordering compare_types(const AdmissibleType& a, const AdmissibleType& b, const Structure& s) {
    if (a == b) return std::strong_ordering::equal;
    auto sa = detail::shape(a), sb = detail::shape(b);
    if (sa != sb) return std::lexicographical_compare_three_way(sa.begin(), sa.end(), sb.begin(), sb.end());
    auto mode = order_mode(s.tag());
    auto pa = detail::ordered_params(a, s, mode);
    auto pb = detail::ordered_params(b, s, mode);
    for (std::size_t i = 0; i < pa.size(); ++i) {
        if (pa[i] == pb[i]) continue;
        switch (mode) {
            case OrderMode::Linear:
                return detail::rel(s, Symbol::Less, pa[i], pb[i]) ? std::strong_ordering::less
                                                                   : std::strong_ordering::greater;
            case OrderMode::Tournament:
                return detail::rel(s, Symbol::Arrow, pa[i], pb[i]) ? std::strong_ordering::less
                                                                    : std::strong_ordering::greater;
            case OrderMode::Label: return pa[i] <=> pb[i];
        }
    }
    return a.encoding() <=> b.encoding();
}

inline bool precedes(const AdmissibleType& a, const AdmissibleType& b, const Structure& s) {
    return compare_types(a, b, s) < 0;
}

/// The local order cut open at `pivot`: in-neighbours of the pivot (by →),
/// then the pivot, then its out-neighbours (by →). A linear order on the
/// universe of a local order.
inline bool cut_less(const Structure& s, const Term& pivot, const Term& u, const Term& v) {
    auto side = [&](const Term& t) {
        if (t == pivot) return 0;
        return detail::rel(s, Symbol::Arrow, t, pivot) ? -1 : 1;
    };
    int su = side(u), sv = side(v);
    if (su != sv) return su < sv;
    return !(u == v) && detail::rel(s, Symbol::Arrow, u, v);
}

/// ≺ for types sharing the →-anchor `pivot`: shape first, then parameter
/// tuples compared through cut_less. Unlike the tournament mode this is
/// transitive, so a cluster of witnesses at one anchor is linearly ordered.
inline std::strong_ordering compare_types_at(const AdmissibleType& a, const AdmissibleType& b, const Structure& s,
                                             const Term& pivot) {
    if (a == b) return std::strong_ordering::equal;
    auto sa = detail::shape(a), sb = detail::shape(b);
    if (sa != sb) return std::lexicographical_compare_three_way(sa.begin(), sa.end(), sb.begin(), sb.end());
    auto sorted = [&](const AdmissibleType& t) {
        std::vector<Term> out;
        const auto& lits = t.literals();
        for (std::size_t i = 0; i < lits.size();) {
            std::size_t j = i;
            std::vector<Term> group;
            while (j < lits.size() && lits[j].kind == lits[i].kind) group.push_back(lits[j++].param);
            std::sort(group.begin(), group.end(), [&](const Term& x, const Term& y) { return cut_less(s, pivot, x, y); });
            out.insert(out.end(), group.begin(), group.end());
            i = j;
        }
        return out;
    };
    auto pa = sorted(a), pb = sorted(b);
    for (std::size_t i = 0; i < pa.size(); ++i) {
        if (pa[i] == pb[i]) continue;
        return cut_less(s, pivot, pa[i], pb[i]) ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return a.encoding() <=> b.encoding();
}

/// Pointwise image of τ under a map on terms.
inline AdmissibleType map_type(const std::function<Term(const Term&)>& f, const AdmissibleType& t) {
    std::vector<Literal> lits;
    lits.reserve(t.size());
    for (const auto& l : t.literals()) lits.push_back({l.kind, f(l.param)});
    return AdmissibleType(std::move(lits));
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

namespace detail {

// Per-parameter literal choices offered to the canonical filter.
inline std::vector<std::vector<LiteralKind>> literal_choices(const ClassTag& tag) {
    using K = LiteralKind;
    switch (tag.family) {
        case Family::LinearOrder: return {{K::Gt}, {K::Lt}};
        case Family::LocalOrder: return {{K::In}, {K::Out}};
        case Family::Graph:
        case Family::KnFreeGraph: return {{K::Adj}};
        case Family::LinExtPartialOrder: return {{K::Gt}, {K::Lt}, {K::PoGt}, {K::PoLt}};
        case Family::OrderedLinearOrder:
        case Family::OrderedLocalOrder: {
            K a = tag.family == Family::OrderedLinearOrder ? K::PoGt : K::In;
            K b = tag.family == Family::OrderedLinearOrder ? K::PoLt : K::Out;
            return {{K::Gt}, {K::Lt}, {a}, {b}, {K::Gt, a}, {K::Gt, b}, {K::Lt, a}, {K::Lt, b}};
        }
        case Family::OrderedGraph:
        case Family::OrderedKnFreeGraph:
        case Family::ConvexOrderedEquiv:
        case Family::BoundedOrderedEquiv:
            return {{K::Gt}, {K::Lt}, {K::Adj}, {K::Gt, K::Adj}, {K::Lt, K::Adj}};
    }
    return {};
}

}  // namespace detail

/// Every canonical admissible type over `elems` with at most `max_params`
/// parameters, duplicate-free and sorted by the type order (tournament
/// mode sorts by shape, then encoding, since ≺ need not be transitive).
inline std::vector<AdmissibleType> enumerate_types(const Structure& s, std::span<const Term> elems, int max_params) {
    std::vector<AdmissibleType> out;
    if (max_params <= 0) return out;
    std::set<std::string> seen;
    auto consider = [&](std::vector<Literal> lits) {
        AdmissibleType t(std::move(lits));
        if (seen.count(t.encoding())) return;
        if (analyze(t, s)) {
            seen.insert(t.encoding());
            out.push_back(std::move(t));
        }
    };
    consider({});
    const auto choices = detail::literal_choices(s.tag());
    std::vector<std::size_t> subset;
    std::vector<Literal> lits;
    std::function<void(std::size_t)> assign = [&](std::size_t i) {
        if (i == subset.size()) {
            consider(lits);
            return;
        }
        for (const auto& ch : choices) {
            for (auto k : ch) lits.push_back({k, elems[subset[i]]});
            assign(i + 1);
            lits.resize(lits.size() - ch.size());
        }
    };
    std::function<void(std::size_t)> grow = [&](std::size_t from) {
        if (!subset.empty()) assign(0);
        if (static_cast<int>(subset.size()) == max_params) return;
        for (std::size_t i = from; i < elems.size(); ++i) {
            subset.push_back(i);
            grow(i + 1);
            subset.pop_back();
        }
    };
    grow(0);

    if (order_mode(s.tag()) == OrderMode::Linear) {
        std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return precedes(a, b, s); });
    } else {
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
            auto sa = detail::shape(a), sb = detail::shape(b);
            if (sa != sb) return sa < sb;
            return a.encoding() < b.encoding();
        });
    }
    return out;
}

inline std::vector<AdmissibleType> enumerate_types(const Structure& s, const FiniteWindow& w) {
    auto elems = s.window(w);
    return enumerate_types(s, elems, w.params);
}

}  // namespace abap

#endif  // ABAP_TYPES_HPP
