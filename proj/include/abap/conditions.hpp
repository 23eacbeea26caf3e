#ifndef ABAP_CONDITIONS_HPP
#define ABAP_CONDITIONS_HPP

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "abap/closure_oracle.hpp"
#include "abap/morphism.hpp"
#include "abap/tower.hpp"

namespace abap {

struct CheckResult {
    std::string name;
    bool passed = true;
    std::string detail;
};

/// x satisfies every literal of τ (and is not one of its parameters).
inline bool realizes(const Structure& s, const Term& x, const AdmissibleType& t) {
    using K = LiteralKind;
    for (const auto& l : t.literals()) {
        const Term& p = l.param;
        if (p == x) return false;
        bool ok = false;
        switch (l.kind) {
            case K::Gt: ok = s.holds(Symbol::Less, p, x); break;
            case K::Lt: ok = s.holds(Symbol::Less, x, p); break;
            case K::PoGt: ok = s.holds(Symbol::Lhd, p, x); break;
            case K::PoLt: ok = s.holds(Symbol::Lhd, x, p); break;
            case K::PoInc: ok = !s.holds(Symbol::Lhd, p, x) && !s.holds(Symbol::Lhd, x, p); break;
            case K::In: ok = s.holds(Symbol::Arrow, p, x); break;
            case K::Out: ok = s.holds(Symbol::Arrow, x, p); break;
            case K::Adj: ok = s.holds(Symbol::Adj, x, p); break;
            case K::NonAdj: ok = !s.holds(Symbol::Adj, x, p); break;
        }
        if (!ok) return false;
    }
    return true;
}

/// Literal alternatives per relation family of the tag.
inline std::vector<std::vector<LiteralKind>> literal_vocabulary(const ClassTag& tag) {
    using K = LiteralKind;
    std::vector<std::vector<LiteralKind>> out;
    if (tag.has(Symbol::Less)) out.push_back({K::Gt, K::Lt});
    if (tag.family == Family::OrderedLinearOrder) out.push_back({K::PoGt, K::PoLt});
    if (tag.family == Family::LinExtPartialOrder) out.push_back({K::PoGt, K::PoLt, K::PoInc});
    if (tag.has(Symbol::Arrow)) out.push_back({K::In, K::Out});
    if (tag.has(Symbol::Adj)) out.push_back({K::Adj, K::NonAdj});
    return out;
}

/// Every literal set over `elems` with at most `max_params` parameters, each
/// parameter carrying at most one literal per relation family (the empty
/// type included). No admissibility or canonical filtering.
inline void for_each_raw_type(const ClassTag& tag, std::span<const Term> elems, int max_params,
                              const std::function<void(const AdmissibleType&)>& f) {
    auto vocab = literal_vocabulary(tag);
    // Per-parameter choices: one option (or none) per family, not all none.
    std::vector<std::vector<LiteralKind>> choices{{}};
    for (const auto& fam : vocab) {
        std::vector<std::vector<LiteralKind>> next;
        for (const auto& c : choices) {
            next.push_back(c);
            for (auto k : fam) {
                auto d = c;
                d.push_back(k);
                next.push_back(d);
            }
        }
        choices = std::move(next);
    }
    choices.erase(choices.begin());
    f(AdmissibleType{});
    std::vector<std::size_t> subset;
    std::vector<Literal> lits;
    std::function<void(std::size_t)> assign = [&](std::size_t i) {
        if (i == subset.size()) {
            f(AdmissibleType(lits));
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
}

/// Extra parameters a canonical form may need beyond the raw type: one
/// lower anchor per linear coordinate.
inline int anchor_slack(const ClassTag& tag) {
    if (tag.family == Family::OrderedLinearOrder) return 2;
    return tag.has(Symbol::Less) ? 1 : 0;
}

/// Condition (a): every admissible type with at most `params` parameters
/// from the base window is realized in the window of E, whose types may use
/// anchor_slack more parameters.
inline CheckResult check_witness_completeness(const Structure& e, int chain, int params) {
    auto* ext = as_extension(e);
    if (!ext) throw ConfigError("condition (a) needs an extension structure");
    const auto& base = ext->base();
    auto elems = base.window(FiniteWindow{base.stage(), chain, params});
    auto win = full_window(e, chain, params + anchor_slack(base.tag()));
    CheckResult r{"witness completeness", true, ""};
    std::size_t admissible = 0;
    for_each_raw_type(base.tag(), elems, params, [&](const AdmissibleType& t) {
        if (!r.passed || !is_admissible(t, base, base.tag())) return;
        ++admissible;
        for (const auto& x : win)
            if (realizes(e, x, t)) return;
        r.passed = false;
        r.detail = "no witness for {" + t.encoding() + "}";
    });
    if (r.passed) r.detail = std::to_string(admissible) + " admissible types realized";
    return r;
}

/// Condition (b) for one automorphism: φ̃ extends φ, preserves relations on
/// the window and fixes no witness.
inline CheckResult check_automorphism_lift(const Morphism& phi, const Structure& e, int chain, int params) {
    CheckResult r{"automorphism lift", true, ""};
    auto lifted = lift_automorphism(phi, e);
    auto win = full_window(e, chain, params);
    for (const auto& t : win) {
        if (!(t.is_witness() && t.stage() == e.stage())) {
            if (!(lifted(t) == phi(t))) return {r.name, false, "lift disagrees with φ at " + t.key()};
        } else if (lifted(t) == t) {
            return {r.name, false, "fixed witness " + t.key()};
        }
    }
    auto pres = check_preservation(lifted, win);
    if (!pres.ok()) return {r.name, false, *pres.failure};
    r.detail = std::to_string(win.size()) + " terms, " + std::to_string(pres.pairs) + " pairs";
    return r;
}

/// Class axioms and comparator/closure agreement on the window.
inline CheckResult check_class_window(const Structure& e, int chain, int params) {
    auto win = full_window(e, chain, params);
    auto v = validate_class(e, win, e.tag());
    if (!v.ok()) {
        const auto* f = v.first_failure();
        std::string w;
        for (const auto& k : f->witness) w += (w.empty() ? "" : ", ") + k;
        return {"class preservation", false, f->axiom + " (" + w + ")"};
    }
    try {
        auto o = compare_to_oracle(e, win);
        if (!o.ok()) return {"class preservation", false, o.first_mismatch};
    } catch (const ClosureCycle& c) {
        return {"class preservation", false, c.what()};
    }
    return {"class preservation", true, std::to_string(win.size()) + " terms"};
}

}  // namespace abap

#endif  // ABAP_CONDITIONS_HPP
