#ifndef ABAP_VALIDATE_HPP
#define ABAP_VALIDATE_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "abap/structure.hpp"

namespace abap {

/// Fixed-size bitset with the handful of set operations the validators need.
class Bitset {
public:
    explicit Bitset(std::size_t n = 0) : n_(n), words_((n + 63) / 64, 0) {}

    void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
    void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
    bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
    std::size_t size() const { return n_; }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    std::size_t count_and(const Bitset& o) const {
        std::size_t c = 0;
        for (std::size_t k = 0; k < words_.size(); ++k)
            c += static_cast<std::size_t>(std::popcount(words_[k] & o.words_[k]));
        return c;
    }
    /// First index set in (*this & ~o), if any.
    std::optional<std::size_t> first_outside(const Bitset& o) const {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (auto w = words_[k] & ~o.words_[k]) return k * 64 + static_cast<std::size_t>(std::countr_zero(w));
        return std::nullopt;
    }
    Bitset operator&(const Bitset& o) const {
        Bitset r(n_);
        for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] = words_[k] & o.words_[k];
        return r;
    }
    template <class F>
    void for_each(F&& f) const {
        for (std::size_t k = 0; k < words_.size(); ++k) {
            auto w = words_[k];
            while (w) {
                f(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }
    bool any() const {
        return std::any_of(words_.begin(), words_.end(), [](auto w) { return w != 0; });
    }

private:
    std::size_t n_;
    std::vector<std::uint64_t> words_;
};

/// Relation matrices of a finite window, read through a structure's rules.
struct WindowMatrix {
    std::vector<Term> elems;
    std::vector<Bitset> rows[4];

    WindowMatrix(const Structure& s, std::span<const Term> window) : elems(window.begin(), window.end()) {
        const std::size_t n = elems.size();
        for (auto sym : s.tag().signature()) {
            auto& r = rows[static_cast<int>(sym)];
            r.assign(n, Bitset(n));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (i != j && s.holds(sym, elems[i], elems[j])) r[i].set(j);
        }
    }
    const std::vector<Bitset>& of(Symbol s) const { return rows[static_cast<int>(s)]; }
    bool at(Symbol s, std::size_t i, std::size_t j) const { return of(s)[i].test(j); }
};

struct AxiomCheck {
    std::string axiom;
    bool passed = true;
    /// First violating tuple, by term key.
    std::vector<std::string> witness;
};

struct ValidationReport {
    ClassTag tag;
    std::size_t window_size = 0;
    std::vector<AxiomCheck> checks;

    bool ok() const {
        return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
    }
    const AxiomCheck* first_failure() const {
        for (const auto& c : checks)
            if (!c.passed) return &c;
        return nullptr;
    }
    std::string summary() const {
        std::string out = tag.name() + " on " + std::to_string(window_size) + " elements:";
        for (const auto& c : checks) {
            out += "\n  " + c.axiom + ": " + (c.passed ? "ok" : "FAIL");
            if (!c.passed) {
                out += " (";
                for (std::size_t i = 0; i < c.witness.size(); ++i) out += (i ? ", " : "") + c.witness[i];
                out += ")";
            }
        }
        return out;
    }
};

namespace detail {

class Checker {
public:
    Checker(const WindowMatrix& m, ValidationReport& r) : m_(m), r_(r) {}

    void fail(const std::string& axiom, std::initializer_list<std::size_t> idx) {
        auto& c = get(axiom);
        if (!c.passed) return;
        c.passed = false;
        for (auto i : idx) c.witness.push_back(m_.elems[i].key());
    }
    AxiomCheck& get(const std::string& axiom) {
        for (auto& c : r_.checks)
            if (c.axiom == axiom) return c;
        r_.checks.push_back({axiom, true, {}});
        return r_.checks.back();
    }

    void strict_order(Symbol s, const std::string& name, bool total) {
        const auto& rows = m_.of(s);
        const std::size_t n = rows.size();
        get(name + " irreflexive");  // diagonal is never stored
        get(name + " asymmetric");
        if (total) get(name + " total");
        get(name + " transitive");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                bool a = rows[i].test(j), b = rows[j].test(i);
                if (a && b) fail(name + " asymmetric", {i, j});
                if (total && !a && !b) fail(name + " total", {i, j});
            }
        for (std::size_t i = 0; i < n; ++i)
            rows[i].for_each([&](std::size_t j) {
                if (auto k = rows[j].first_outside(rows[i]); k && *k != i) fail(name + " transitive", {i, j, *k});
            });
    }

    void tournament(Symbol s, const std::string& name) {
        const auto& rows = m_.of(s);
        get(name + " irreflexive");
        get(name + " tournament");
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = i + 1; j < rows.size(); ++j)
                if (rows[i].test(j) == rows[j].test(i)) fail(name + " tournament", {i, j});
    }

    // A sub-tournament is transitive iff its internal out-degrees are distinct.
    void local_linearity(Symbol s) {
        const auto& out = m_.of(s);
        const std::size_t n = out.size();
        std::vector<Bitset> in(n, Bitset(n));
        for (std::size_t i = 0; i < n; ++i) out[i].for_each([&](std::size_t j) { in[j].set(i); });
        get("predecessors linearly ordered");
        get("successors linearly ordered");
        auto check = [&](const Bitset& set, std::size_t x, const std::string& axiom) {
            std::vector<std::size_t> members;
            set.for_each([&](std::size_t y) { members.push_back(y); });
            std::vector<char> seen(members.size(), 0);
            bool ok = true;
            for (auto y : members) {
                auto d = out[y].count_and(set);
                if (d >= members.size() || seen[d]) {
                    ok = false;
                    break;
                }
                seen[d] = 1;
            }
            if (ok) return;
            for (auto a : members)
                for (auto b : members)
                    if (out[a].test(b))
                        for (auto c : members)
                            if (out[b].test(c) && out[c].test(a)) {
                                fail(axiom, {x, a, b, c});
                                return;
                            }
        };
        for (std::size_t x = 0; x < n; ++x) {
            check(in[x], x, "predecessors linearly ordered");
            check(out[x], x, "successors linearly ordered");
        }
    }

    void symmetric_irreflexive(Symbol s, const std::string& name) {
        const auto& rows = m_.of(s);
        get(name + " symmetric");
        for (std::size_t i = 0; i < rows.size(); ++i)
            rows[i].for_each([&](std::size_t j) {
                if (!rows[j].test(i)) fail(name + " symmetric", {i, j});
            });
    }

    void equivalence(Symbol s) {
        symmetric_irreflexive(s, "~");
        const auto& rows = m_.of(s);
        get("~ transitive");
        for (std::size_t i = 0; i < rows.size(); ++i)
            rows[i].for_each([&](std::size_t j) {
                if (auto k = rows[j].first_outside(rows[i]); k && *k != i) fail("~ transitive", {i, j, *k});
            });
    }

    void clique_free(Symbol s, int n) {
        const std::string axiom = "K" + std::to_string(n) + "-free";
        get(axiom);
        const auto& rows = m_.of(s);
        const std::size_t sz = rows.size();
        std::vector<std::size_t> clique;
        // Grow cliques in increasing index order.
        std::function<bool(const Bitset&)> grow = [&](const Bitset& cand) {
            if (static_cast<int>(clique.size()) == n) return true;
            bool found = false;
            cand.for_each([&](std::size_t v) {
                if (found) return;
                if (!clique.empty() && v < clique.back()) return;
                clique.push_back(v);
                if (grow(cand & rows[v])) found = true;
                else clique.pop_back();
            });
            return found;
        };
        for (std::size_t v = 0; v < sz; ++v) {
            clique = {v};
            if (grow(rows[v])) {
                auto& c = get(axiom);
                c.passed = false;
                for (auto i : clique) c.witness.push_back(m_.elems[i].key());
                return;
            }
        }
    }

    void extends(Symbol big, Symbol small, const std::string& axiom) {
        get(axiom);
        const auto& rs = m_.of(small);
        for (std::size_t i = 0; i < rs.size(); ++i)
            rs[i].for_each([&](std::size_t j) {
                if (!m_.at(big, i, j)) fail(axiom, {i, j});
            });
    }

    // Classes must be intervals of <; assumes < already checked linear.
    void convexity() {
        get("~ classes convex");
        const std::size_t n = m_.elems.size();
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return m_.at(Symbol::Less, a, b); });
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 2; j < n; ++j)
                if (m_.at(Symbol::Adj, order[i], order[j]))
                    for (std::size_t k = i + 1; k < j; ++k)
                        if (!m_.at(Symbol::Adj, order[i], order[k])) {
                            fail("~ classes convex", {order[i], order[k], order[j]});
                            return;
                        }
    }

    void class_bound(int bound) {
        const std::string axiom = "at most " + std::to_string(bound) + " classes";
        get(axiom);
        const auto& rows = m_.of(Symbol::Adj);
        std::vector<std::size_t> reps;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            bool fresh = true;
            for (auto r : reps)
                if (rows[r].test(i)) fresh = false;
            if (fresh) reps.push_back(i);
        }
        if (static_cast<int>(reps.size()) > bound) {
            auto& c = get(axiom);
            c.passed = false;
            for (std::size_t k = 0; k <= static_cast<std::size_t>(bound); ++k) c.witness.push_back(m_.elems[reps[k]].key());
        }
    }

private:
    const WindowMatrix& m_;
    ValidationReport& r_;
};

}  // namespace detail

/// Check the class axioms of `tag` on a finite window of `s`.
///
/// Throws ConfigError when the signatures of `s` and `tag` differ; axiom
/// violations are reported, not thrown.
inline ValidationReport validate_class(const Structure& s, std::span<const Term> window, const ClassTag& tag) {
    if (s.tag().signature() != tag.signature())
        throw ConfigError("structure of class " + s.tag().name() + " cannot be validated as " + tag.name());
    ValidationReport report{tag, window.size(), {}};
    WindowMatrix m(s, window);
    detail::Checker c(m, report);
    switch (tag.family) {
        case Family::LinearOrder:
            c.strict_order(Symbol::Less, "<", true);
            break;
        case Family::OrderedLinearOrder:
            c.strict_order(Symbol::Less, "<", true);
            c.strict_order(Symbol::Lhd, "lhd", true);
            break;
        case Family::LocalOrder:
            c.tournament(Symbol::Arrow, "->");
            c.local_linearity(Symbol::Arrow);
            break;
        case Family::OrderedLocalOrder:
            c.strict_order(Symbol::Less, "<", true);
            c.tournament(Symbol::Arrow, "->");
            c.local_linearity(Symbol::Arrow);
            break;
        case Family::Graph:
        case Family::KnFreeGraph:
        case Family::OrderedGraph:
        case Family::OrderedKnFreeGraph:
            if (tag.has(Symbol::Less)) c.strict_order(Symbol::Less, "<", true);
            c.symmetric_irreflexive(Symbol::Adj, "adj");
            if (auto n = tag.clique_bound()) c.clique_free(Symbol::Adj, *n);
            break;
        case Family::LinExtPartialOrder:
            c.strict_order(Symbol::Less, "<", true);
            c.strict_order(Symbol::Lhd, "lhd", false);
            c.extends(Symbol::Less, Symbol::Lhd, "< extends lhd");
            break;
        case Family::ConvexOrderedEquiv:
            c.strict_order(Symbol::Less, "<", true);
            c.equivalence(Symbol::Adj);
            if (report.ok()) c.convexity();
            break;
        case Family::BoundedOrderedEquiv:
            c.strict_order(Symbol::Less, "<", true);
            c.equivalence(Symbol::Adj);
            if (tag.n && report.ok()) c.class_bound(*tag.n);
            break;
    }
    return report;
}

inline ValidationReport validate_class(const Structure& s, const ClassTag& tag) {
    return validate_class(s, s.universe(), tag);
}

}  // namespace abap

#endif  // ABAP_VALIDATE_HPP
