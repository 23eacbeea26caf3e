#ifndef ABAP_TOWER_HPP
#define ABAP_TOWER_HPP

#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "abap/iso.hpp"
#include "abap/morphism.hpp"
#include "abap/validate.hpp"

namespace abap {

/// A = A₀ ⊂ A₁ = E(A₀) ⊂ … ⊂ A_d, with one finite window per stage. Stage-s
/// windows take type parameters from the stage-(s−1) window only.
struct Tower {
    std::vector<Structure> stages;
    FiniteWindow window;

    const Structure& seed() const { return stages.front(); }
    const Structure& top() const { return stages.back(); }
    int depth() const { return static_cast<int>(stages.size()) - 1; }

    std::vector<Term> window_at(int s) const {
        return stages.at(static_cast<std::size_t>(s)).window(FiniteWindow{s, window.chain, window.params});
    }
    std::vector<Term> top_window() const { return window_at(depth()); }
};

/// Thrown when a stage window fails its class axioms.
class StageError : public std::runtime_error {
public:
    StageError(int stage, const std::string& what)
        : std::runtime_error("stage " + std::to_string(stage) + ": " + what), stage_(stage) {}
    int stage() const { return stage_; }

private:
    int stage_;
};

inline Tower build_tower(const Structure& a, int depth, const FiniteWindow& w, bool validate = true) {
    if (depth < 0) throw ConfigError("tower depth must be non-negative");
    w.check();
    Tower t{{a}, w};
    if (validate && a.is_finite()) {
        auto r = validate_class(a, a.tag());
        if (!r.ok()) throw StageError(0, r.summary());
    }
    for (int s = 1; s <= depth; ++s) {
        t.stages.push_back(extend(t.stages.back()));
        if (validate) {
            auto win = t.window_at(s);
            auto r = validate_class(t.stages.back(), win, a.tag());
            if (!r.ok()) throw StageError(s, r.summary());
        }
    }
    return t;
}

/// Lifts of a seed automorphism up the tower: entry s acts on stage s.
inline std::vector<Morphism> lift_up(const Tower& t, const Morphism& phi) {
    std::vector<Morphism> out{phi};
    for (int s = 1; s <= t.depth(); ++s)
        out.push_back(lift_automorphism(out.back(), t.stages[static_cast<std::size_t>(s)]));
    return out;
}

struct Reduction {
    Tower tower;
    std::vector<Term> window;
    Morphism phi;  // stage-d lift of the identity on the seed
};

/// A ↦ φ_{A∞}, truncated at depth d.
inline Reduction reduction(const Tower& t) {
    auto lifts = lift_up(t, Morphism::identity(t.seed()));
    auto win = t.top_window();
    return Reduction{t, win, lifts.back()};
}

inline Reduction reduction(const Structure& a, int depth, const FiniteWindow& w) {
    return reduction(build_tower(a, depth, w));
}

struct ForwardReport {
    bool ok = true;
    std::string detail;
};

/// Condition (c) on prebuilt towers of A₀ ≅ A₁: with φ₁ = αφ₀α⁻¹, each
/// stage's α̂ is a window isomorphism and α̂φ̃₀ = φ̃₁α̂ holds on the stage window.
inline ForwardReport check_forward(const Tower& t0, const Tower& t1, const Morphism& alpha, const Morphism& phi0) {
    if (!alpha.inverse) throw std::invalid_argument("check_forward needs an invertible isomorphism");
    if (t0.depth() != t1.depth()) throw std::invalid_argument("check_forward needs towers of equal depth");
    Morphism phi1{t1.seed(), t1.seed(), [&](const Term& t) { return alpha(phi0(alpha.inverse(t))); },
                  phi0.inverse ? Morphism::Rule([&](const Term& t) { return alpha(phi0.inverse(alpha.inverse(t))); })
                               : Morphism::Rule()};
    Morphism ah = alpha, f0 = phi0, f1 = phi1;
    for (int s = 0; s <= t0.depth(); ++s) {
        if (s > 0) {
            const auto& e0 = t0.stages[static_cast<std::size_t>(s)];
            const auto& e1 = t1.stages[static_cast<std::size_t>(s)];
            ah = lift_isomorphism(ah, e0, e1);
            f0 = lift_automorphism(f0, e0);
            f1 = lift_automorphism(f1, e1);
        }
        auto win = t0.window_at(s);
        auto pres = check_preservation(ah, win);
        if (!pres.ok()) return {false, "stage " + std::to_string(s) + ": " + *pres.failure};
        auto c = check_conjugation(ah, f0, f1, win);
        if (!c) return {false, "stage " + std::to_string(s) + ": conjugation fails at " + c.witness->key()};
    }
    return {};
}

inline ForwardReport check_forward(const Structure& a0, const Structure& a1, const Morphism& alpha,
                                   const Morphism& phi0, int depth, const FiniteWindow& w) {
    return check_forward(build_tower(a0, depth, w), build_tower(a1, depth, w), alpha, phi0);
}

inline bool verify_forward(const Structure& a0, const Structure& a1, const Morphism& alpha, int depth,
                           const FiniteWindow& w) {
    return check_forward(a0, a1, alpha, Morphism::identity(a0), depth, w).ok;
}

/// Fixed set of the reduction morphism with its induced relations.
inline Structure fixed_structure(const Reduction& r) {
    auto fixed = fixed_points(r.phi, r.window);
    return induced(r.tower.top(), fixed);
}

/// True iff the fixed sets recover each seed and are isomorphic exactly when
/// the seeds are.
inline bool verify_backward(const Structure& a0, const Structure& a1, int depth, const FiniteWindow& w) {
    if (!a0.is_finite() || !a1.is_finite()) throw std::invalid_argument("verify_backward needs finite seeds");
    auto f0 = fixed_structure(reduction(a0, depth, w));
    auto f1 = fixed_structure(reduction(a1, depth, w));
    if (!isomorphic(f0, a0) || !isomorphic(f1, a1)) return false;
    bool same = a0.tag().signature() == a1.tag().signature();
    bool seeds_iso = same && isomorphic(a0, a1).has_value();
    bool fixed_iso = same && isomorphic(f0, f1).has_value();
    return seeds_iso == fixed_iso;
}

struct ProbeReport {
    std::size_t trials = 0;    // partial isomorphisms sampled
    std::size_t extended = 0;  // of those, extended by one more point inside the window
    double fraction() const { return trials ? static_cast<double>(extended) / static_cast<double>(trials) : 0.0; }
};

/// Diagnostic only: samples partial isomorphisms between small window
/// subsets and checks whether one more point extends inside the window.
inline ProbeReport homogeneity_probe(const Tower& t, std::size_t trials, std::uint64_t seed = 1,
                                     std::size_t max_domain = 2) {
    ProbeReport r;
    const auto& s = t.top();
    auto win = t.top_window();
    if (win.size() < 2) return r;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, win.size() - 1);
    auto sig = s.tag().signature();
    auto agrees = [&](const std::vector<std::size_t>& dom, const std::vector<std::size_t>& img) {
        for (std::size_t i = 0; i < dom.size(); ++i)
            for (std::size_t j = 0; j < dom.size(); ++j) {
                if (i == j) continue;
                for (auto sym : sig)
                    if (s.holds(sym, win[dom[i]], win[dom[j]]) != s.holds(sym, win[img[i]], win[img[j]]))
                        return false;
            }
        return true;
    };
    const std::size_t attempts = trials * 20;
    for (std::size_t a = 0; a < attempts && r.trials < trials; ++a) {
        std::size_t k = 1 + pick(rng) % std::min(max_domain, win.size() - 1);
        std::vector<std::size_t> dom, img;
        std::set<std::size_t> used_d, used_i;
        while (dom.size() < k) {
            auto x = pick(rng);
            if (used_d.insert(x).second) dom.push_back(x);
        }
        while (img.size() < k) {
            auto x = pick(rng);
            if (used_i.insert(x).second) img.push_back(x);
        }
        if (!agrees(dom, img)) continue;
        std::size_t y;
        do y = pick(rng);
        while (used_d.count(y));
        ++r.trials;
        dom.push_back(y);
        img.push_back(0);
        for (std::size_t z = 0; z < win.size(); ++z) {
            if (used_i.count(z)) continue;
            img.back() = z;
            if (agrees(dom, img)) {
                ++r.extended;
                break;
            }
        }
    }
    return r;
}

}  // namespace abap

#endif  // ABAP_TOWER_HPP
