#ifndef ABAP_EXTENSION_HPP
#define ABAP_EXTENSION_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "abap/types.hpp"
#include "abap/validate.hpp"

namespace abap {

/// E(A): the base plus one Z-chain of witnesses per canonical admissible
/// type, all relations decided by closed-form comparators on the anchors.
class ExtensionPresentation final : public Presentation {
public:
    explicit ExtensionPresentation(Structure base) : base_(std::move(base)), stage_(base_.stage() + 1) {}

    const Structure& base() const { return base_; }
    int stage() const override { return stage_; }

    /// Placement of τ, or nullptr when τ is not canonical admissible over the
    /// base. The pointer stays valid for the lifetime of the presentation.
    const Placement* placement(const AdmissibleType& t) const {
        {
            std::lock_guard lock(mu_);
            auto it = placements_.find(t.encoding());
            if (it != placements_.end()) return it->second.get();
        }
        auto p = analyze(t, base_);
        std::lock_guard lock(mu_);
        auto it = placements_.try_emplace(t.encoding(), p ? std::make_unique<const Placement>(*p) : nullptr).first;
        return it->second.get();
    }

    bool contains(const Term& t) const override {
        if (!t.valid()) return false;
        if (t.is_base() || t.stage() < stage_) return base_.contains(t);
        return t.stage() == stage_ && placement(t.type()) != nullptr;
    }

    bool holds(Symbol sym, const Term& u, const Term& v) const override {
        if (!base_.tag().has(sym) || u == v || !contains(u) || !contains(v)) return false;
        if (own(u) || own(v)) return decide(sym, u, v);
        return base_.presentation().holds(sym, u, v);
    }

    /// Base window plus, when this stage is within the bound, chains
    /// m ∈ [-chain, chain] for every type enumerated over the base window.
    std::vector<Term> window(const FiniteWindow& w) const override {
        auto key = std::make_tuple(w.stage_bound, w.chain, w.params);
        {
            std::lock_guard lock(mu_);
            auto it = windows_.find(key);
            if (it != windows_.end()) return it->second;
        }
        auto elems = base_.window(w);
        std::vector<Term> out = elems;
        if (stage_ <= w.stage_bound) {
            for (const auto& t : enumerate_types(base_, elems, w.params))
                for (long m = -w.chain; m <= w.chain; ++m) out.push_back(Term::witness(stage_, t, m));
        }
        std::sort(out.begin(), out.end());
        std::lock_guard lock(mu_);
        windows_.emplace(key, out);
        return out;
    }

    bool empty() const override { return false; }

    std::optional<std::size_t> class_count() const override {
        if (base_.tag().family != Family::BoundedOrderedEquiv) return std::nullopt;
        auto k = base_.class_count();
        if (!k) return std::nullopt;
        return *k + (detail::fresh_class_allowed(base_) ? 1 : 0);
    }

private:
    bool own(const Term& t) const { return t.is_witness() && t.stage() == stage_; }

    const Placement* slot(const Term& t) const {
        auto* p = placement(t.type());
        if (!p) throw std::logic_error("witness with a non-canonical type: " + t.key());
        return p;
    }

    bool rel(Symbol s, const Term& u, const Term& v) const { return base_.presentation().holds(s, u, v); }

    // Chain order inside one type, ≺ across types.
    bool tie(const Term& x, const Term& y) const {
        if (x.type() == y.type()) return x.index() < y.index();
        return precedes(x.type(), y.type(), base_);
    }

    // "Immediately above the anchor" placement in a linear coordinate.
    bool linear(Symbol s, const Term& u, const LinearSlot* su, const Term& v, const LinearSlot* sv) const {
        if (!su) {  // u is a base element
            if (sv->bottom) return false;
            return u == sv->anchor || rel(s, u, sv->anchor);
        }
        if (!sv) {
            if (su->bottom) return true;
            return rel(s, su->anchor, v);
        }
        if (su->bottom || sv->bottom) {
            if (su->bottom && sv->bottom) return tie(u, v);
            return su->bottom;
        }
        if (su->anchor == sv->anchor) return tie(u, v);
        return rel(s, su->anchor, sv->anchor);
    }

    bool arrow(const Term& u, const LocalSlot* su, const Term& v, const LocalSlot* sv) const {
        if (!su) {
            const auto& x = *sv;
            if (x.after_anchor) return u == x.anchor || rel(Symbol::Arrow, u, x.anchor);
            return rel(Symbol::Arrow, x.anchor, u);
        }
        if (!sv) return !arrow(v, sv, u, su);
        const auto& x = *su;
        const auto& y = *sv;
        if (!x.anchor.valid() || !y.anchor.valid()) return tie(u, v);
        if (x.anchor == y.anchor) {
            // The successor of c points into the successor of c's antipode.
            if (x.after_anchor != y.after_anchor) return x.after_anchor;
            if (u.type() == v.type()) return u.index() < v.index();
            return compare_types_at(u.type(), v.type(), base_, x.anchor) < 0;
        }
        if (x.after_anchor == y.after_anchor) return rel(Symbol::Arrow, x.anchor, y.anchor);
        // Mixed cases: x after a, x' opposite b' gives x→x' iff b'→a.
        return rel(Symbol::Arrow, y.anchor, x.anchor);
    }

    bool lhd_linext(const Term& u, const Placement* pu, const Term& v, const Placement* pv) const {
        auto below = [&](const Term& y, const Term& c) { return y == c || rel(Symbol::Lhd, y, c); };
        if (!pu) {
            for (const auto& c : pv->lhd_below)
                if (below(u, c)) return true;
            return false;
        }
        if (!pv) {
            for (const auto& d : pu->lhd_above)
                if (below(d, v)) return true;
            return false;
        }
        for (const auto& d : pu->lhd_above)
            for (const auto& c : pv->lhd_below)
                if (below(d, c)) return true;
        return false;
    }

    bool same_class(const Term& a, const Term& b) const { return a == b || rel(Symbol::Adj, a, b); }

    bool convex_less(const Term& u, const Placement* pu, const Term& v, const Placement* pv) const {
        if (!pu) {
            const Term& e = pv->convex_anchor;
            switch (pv->convex) {
                case ConvexMode::AboveInClass: return u == e || rel(Symbol::Less, u, e);
                case ConvexMode::BelowInClass: return rel(Symbol::Less, u, e);
                case ConvexMode::AfterClass: return u == e || rel(Symbol::Less, u, e) || rel(Symbol::Adj, u, e);
                case ConvexMode::Bottom: return false;
            }
        }
        if (!pv) return !convex_less(v, pv, u, pu);
        auto mu = pu->convex, mv = pv->convex;
        const Term& a = pu->convex_anchor;
        const Term& b = pv->convex_anchor;
        if (mu == ConvexMode::Bottom || mv == ConvexMode::Bottom) {
            if (mu == mv) return tie(u, v);
            return mu == ConvexMode::Bottom;
        }
        if (mu == mv) {
            bool same = mu == ConvexMode::AfterClass ? same_class(a, b) : a == b;
            if (same) return tie(u, v);
            return rel(Symbol::Less, a, b);
        }
        auto rank = [](ConvexMode m) { return m == ConvexMode::BelowInClass ? 0 : m == ConvexMode::AboveInClass ? 1 : 2; };
        if (rank(mu) > rank(mv)) return !convex_less(v, pv, u, pu);
        if (mu == ConvexMode::BelowInClass && mv == ConvexMode::AboveInClass) return !rel(Symbol::Less, b, a);
        // u is in-class (above a or below k), v sits after the class of b.
        return same_class(a, b) || rel(Symbol::Less, a, b);
    }

    bool convex_adj(const Term& u, const Placement* pu, const Term& v, const Placement* pv) const {
        auto in_class = [](const Placement* p) {
            return p->convex == ConvexMode::AboveInClass || p->convex == ConvexMode::BelowInClass;
        };
        if (!pu) return in_class(pv) && same_class(u, pv->convex_anchor);
        if (!pv) return in_class(pu) && same_class(v, pu->convex_anchor);
        if (in_class(pu) != in_class(pv)) return false;
        if (in_class(pu)) return same_class(pu->convex_anchor, pv->convex_anchor);
        return u.type() == v.type();
    }

    bool bounded_adj(const Term& u, const Placement* pu, const Term& v, const Placement* pv) const {
        if (!pu) return pv->class_anchor && same_class(u, *pv->class_anchor);
        if (!pv) return pu->class_anchor && same_class(v, *pu->class_anchor);
        if (pu->class_anchor.has_value() != pv->class_anchor.has_value()) return false;
        if (!pu->class_anchor) return true;
        return same_class(*pu->class_anchor, *pv->class_anchor);
    }

    bool decide(Symbol sym, const Term& u, const Term& v) const {
        const Placement* a = own(u) ? slot(u) : nullptr;
        const Placement* b = own(v) ? slot(v) : nullptr;
        auto lin = [&](std::optional<LinearSlot> Placement::* f) {
            return linear(sym, u, a ? &*(a->*f) : nullptr, v, b ? &*(b->*f) : nullptr);
        };
        const auto fam = base_.tag().family;
        switch (sym) {
            case Symbol::Less:
                if (fam == Family::ConvexOrderedEquiv) return convex_less(u, a, v, b);
                return lin(&Placement::order);
            case Symbol::Lhd:
                if (fam == Family::LinExtPartialOrder) return lhd_linext(u, a, v, b);
                return lin(&Placement::lhd);
            case Symbol::Arrow:
                return arrow(u, a ? &*a->arrow : nullptr, v, b ? &*b->arrow : nullptr);
            case Symbol::Adj:
                if (fam == Family::ConvexOrderedEquiv) return convex_adj(u, a, v, b);
                if (fam == Family::BoundedOrderedEquiv) return bounded_adj(u, a, v, b);
                if (a && b) return false;  // no edges between witnesses
                if (a) return std::find(a->adjacent.begin(), a->adjacent.end(), v) != a->adjacent.end();
                return std::find(b->adjacent.begin(), b->adjacent.end(), u) != b->adjacent.end();
        }
        return false;
    }

    Structure base_;
    int stage_;
    mutable std::mutex mu_;
    mutable std::unordered_map<std::string, std::unique_ptr<const Placement>> placements_;
    mutable std::map<std::tuple<int, int, int>, std::vector<Term>> windows_;
};

inline const ExtensionPresentation* as_extension(const Structure& s) {
    return dynamic_cast<const ExtensionPresentation*>(&s.presentation());
}

namespace detail {

inline void require_family(const Structure& s, std::initializer_list<Family> fams, const char* op) {
    for (auto f : fams)
        if (s.tag().family == f) {
            if (s.is_finite()) {
                auto report = validate_class(s, s.tag());
                if (!report.ok())
                    throw std::invalid_argument(std::string(op) + ": input is not a valid " + s.tag().name() +
                                                " structure (" + report.summary() + ")");
            }
            return;
        }
    throw ConfigError(std::string(op) + " does not accept class " + s.tag().name());
}

}  // namespace detail

/// E(A) for any supported class.
inline Structure extend(const Structure& a) {
    if (a.tag().family == Family::BoundedOrderedEquiv && a.tag().n) {
        auto k = a.class_count();
        if (k && static_cast<int>(*k) > *a.tag().n)
            throw std::invalid_argument("structure has more classes than the bound");
    }
    return Structure(a.tag(), std::make_shared<ExtensionPresentation>(a));
}

inline Structure extend_linear(const Structure& l) {
    detail::require_family(l, {Family::LinearOrder}, "extend_linear");
    return extend(l);
}

inline Structure extend_ordered_linear(const Structure& p) {
    detail::require_family(p, {Family::OrderedLinearOrder}, "extend_ordered_linear");
    return extend(p);
}

inline Structure extend_local(const Structure& o) {
    detail::require_family(o, {Family::LocalOrder}, "extend_local");
    return extend(o);
}

inline Structure extend_ordered_local(const Structure& o) {
    detail::require_family(o, {Family::OrderedLocalOrder}, "extend_ordered_local");
    return extend(o);
}

inline Structure extend_graph(const Structure& g) {
    detail::require_family(g, {Family::Graph, Family::KnFreeGraph, Family::OrderedGraph, Family::OrderedKnFreeGraph},
                           "extend_graph");
    return extend(g);
}

inline Structure extend_linext(const Structure& p) {
    detail::require_family(p, {Family::LinExtPartialOrder}, "extend_linext");
    return extend(p);
}

inline Structure extend_equiv(const Structure& r) {
    detail::require_family(r, {Family::ConvexOrderedEquiv, Family::BoundedOrderedEquiv}, "extend_equiv");
    return extend(r);
}

/// Window containing every stage up to the structure's own.
inline std::vector<Term> full_window(const Structure& s, int chain, int params) {
    return s.window(FiniteWindow{s.stage(), chain, params});
}

}  // namespace abap

#endif  // ABAP_EXTENSION_HPP
