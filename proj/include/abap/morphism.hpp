#ifndef ABAP_MORPHISM_HPP
#define ABAP_MORPHISM_HPP

#include <functional>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "abap/extension.hpp"
#include "abap/iso.hpp"

namespace abap {

/// A total map on terms between two structures, with an optional inverse.
struct Morphism {
    using Rule = std::function<Term(const Term&)>;

    Structure domain;
    Structure codomain;
    Rule rule;
    Rule inverse;  // may be empty

    Term operator()(const Term& t) const { return rule(t); }

    static Morphism from_map(const Structure& dom, const Structure& cod, const TermMap& m) {
        TermMap inv;
        for (const auto& [k, v] : m) inv.emplace(v, k);
        auto look = [](const TermMap& table) {
            return [table](const Term& t) {
                auto it = table.find(t);
                if (it == table.end()) throw std::out_of_range("term outside the morphism table: " + t.key());
                return it->second;
            };
        };
        return Morphism{dom, cod, look(m), look(inv)};
    }

    static Morphism identity(const Structure& s) {
        auto id = [](const Term& t) { return t; };
        return Morphism{s, s, id, id};
    }
};

/// f ∘ g.
inline Morphism compose(const Morphism& f, const Morphism& g) {
    Morphism::Rule inv;
    if (f.inverse && g.inverse) inv = [fi = f.inverse, gi = g.inverse](const Term& t) { return gi(fi(t)); };
    return Morphism{g.domain, f.codomain, [fr = f.rule, gr = g.rule](const Term& t) { return fr(gr(t)); }, inv};
}

/// The unique map sending `s` onto `t` along `m` (for finite structures).
inline Morphism automorphism_from_map(const Structure& s, const TermMap& m) { return Morphism::from_map(s, s, m); }

struct PreservationReport {
    std::size_t pairs = 0;
    std::optional<std::string> failure;
    bool ok() const { return !failure; }
};

/// Checks that f maps the window into its codomain injectively and that every
/// relation holds between u, v exactly when it holds between f(u), f(v).
/// Images need not lie in any window of the codomain.
inline PreservationReport check_preservation(const Morphism& f, std::span<const Term> window) {
    PreservationReport r;
    std::vector<Term> img;
    img.reserve(window.size());
    std::set<Term> seen;
    for (const auto& t : window) {
        Term x = f(t);
        if (!f.codomain.contains(x)) {
            r.failure = "image of " + t.key() + " is not in the codomain: " + x.key();
            return r;
        }
        if (!seen.insert(x).second) {
            r.failure = "not injective: two terms map to " + x.key();
            return r;
        }
        img.push_back(x);
    }
    for (auto sym : f.domain.tag().signature())
        for (std::size_t i = 0; i < window.size(); ++i)
            for (std::size_t j = 0; j < window.size(); ++j) {
                if (i == j) continue;
                ++r.pairs;
                if (f.domain.holds(sym, window[i], window[j]) != f.codomain.holds(sym, img[i], img[j])) {
                    r.failure = std::string(symbol_name(sym)) + " not preserved on (" + window[i].key() + ", " +
                                window[j].key() + ")";
                    return r;
                }
            }
    return r;
}

/// Relation preservation on `samples` random pairs of the window.
inline PreservationReport check_preservation_sampled(const Morphism& f, std::span<const Term> window,
                                                     std::size_t samples = 100, std::uint64_t seed = 1) {
    PreservationReport r;
    if (window.size() < 2) return r;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, window.size() - 1);
    for (std::size_t k = 0; k < samples; ++k) {
        std::size_t i = pick(rng), j = pick(rng);
        if (i == j) continue;
        Term u = f(window[i]), v = f(window[j]);
        if (!f.codomain.contains(u) || !f.codomain.contains(v) || u == v) {
            r.failure = "sampled image outside the codomain or collapsed: " + window[i].key();
            return r;
        }
        for (auto sym : f.domain.tag().signature()) {
            ++r.pairs;
            if (f.domain.holds(sym, window[i], window[j]) != f.codomain.holds(sym, u, v)) {
                r.failure = std::string(symbol_name(sym)) + " not preserved on sampled pair (" + window[i].key() +
                            ", " + window[j].key() + ")";
                return r;
            }
        }
    }
    return r;
}

namespace detail {

inline void require_isomorphism(const Morphism& f, const char* op) {
    const auto& d = f.domain;
    PreservationReport r;
    if (d.is_finite()) {
        if (f.codomain.is_finite() && f.codomain.size() != d.size())
            throw std::invalid_argument(std::string(op) + ": domain and codomain differ in size");
        r = check_preservation(f, d.universe());
    } else {
        auto w = d.window(FiniteWindow{d.stage(), 1, 1});
        r = check_preservation_sampled(f, w, 100, 1);
    }
    if (!r.ok()) throw std::invalid_argument(std::string(op) + ": " + *r.failure);
}

inline const ExtensionPresentation& extension_of(const Structure& e, const Structure& base, const char* op) {
    auto* ext = as_extension(e);
    if (!ext || ext->stage() != base.stage() + 1)
        throw ConfigError(std::string(op) + ": target is not an extension of the morphism's structure");
    return *ext;
}

// Stage-s witnesses move to the image type (mapped by the lower-stage rule)
// with the index shifted by `shift`; everything older goes through `lower`.
inline Morphism::Rule lift_rule(Morphism::Rule lower, int stage, long shift) {
    return [lower = std::move(lower), stage, shift](const Term& t) {
        if (t.is_witness() && t.stage() == stage)
            return Term::witness(stage, map_type(lower, t.type()), t.index() + shift);
        return lower(t);
    };
}

}  // namespace detail

/// φ̃ on E(A): φ on A, and x_{τ,m} ↦ x_{φ(τ),m+1}.
inline Morphism lift_automorphism(const Morphism& phi, const Structure& e) {
    detail::require_isomorphism(phi, "lift_automorphism");
    const auto& ext = detail::extension_of(e, phi.domain, "lift_automorphism");
    Morphism::Rule inv;
    if (phi.inverse) inv = detail::lift_rule(phi.inverse, ext.stage(), -1);
    return Morphism{e, e, detail::lift_rule(phi.rule, ext.stage(), 1), inv};
}

inline Morphism lift_automorphism(const Morphism& phi) { return lift_automorphism(phi, extend(phi.domain)); }

/// α̂ : E(A₀) → E(A₁): α on A₀, and x_{τ,m} ↦ x_{α(τ),m} with the index kept.
inline Morphism lift_isomorphism(const Morphism& alpha, const Structure& e0, const Structure& e1) {
    detail::require_isomorphism(alpha, "lift_isomorphism");
    const auto& x0 = detail::extension_of(e0, alpha.domain, "lift_isomorphism");
    detail::extension_of(e1, alpha.codomain, "lift_isomorphism");
    Morphism::Rule inv;
    if (alpha.inverse) inv = detail::lift_rule(alpha.inverse, x0.stage(), 0);
    return Morphism{e0, e1, detail::lift_rule(alpha.rule, x0.stage(), 0), inv};
}

inline Morphism lift_isomorphism(const Morphism& alpha) {
    return lift_isomorphism(alpha, extend(alpha.domain), extend(alpha.codomain));
}

struct ConjugationResult {
    bool ok = true;
    std::optional<Term> witness;  // first term where the two sides differ
    explicit operator bool() const { return ok; }
};

/// α̂∘φ̃₀ = φ̃₁∘α̂ on every term of the window.
inline ConjugationResult check_conjugation(const Morphism& alpha_hat, const Morphism& phi0, const Morphism& phi1,
                                           std::span<const Term> window) {
    for (const auto& t : window)
        if (!(alpha_hat(phi0(t)) == phi1(alpha_hat(t)))) return {false, t};
    return {};
}

inline std::vector<Term> fixed_points(const Morphism& f, std::span<const Term> window) {
    std::vector<Term> out;
    for (const auto& t : window)
        if (f(t) == t) out.push_back(t);
    return out;
}

/// The shift n ↦ n+1 on the lazily presented integers.
inline Morphism integer_shift(const Structure& z, long by = 1) {
    auto mk = [](long d) {
        return [d](const Term& t) {
            auto v = integer_atom(t);
            if (!v) return t;
            return Term::base(std::to_string(*v + d));
        };
    };
    return Morphism{z, z, mk(by), mk(-by)};
}

}  // namespace abap

#endif  // ABAP_MORPHISM_HPP
