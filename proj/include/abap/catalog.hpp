#ifndef ABAP_CATALOG_HPP
#define ABAP_CATALOG_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "abap/iso.hpp"
#include "abap/validate.hpp"

namespace abap {

/// Atoms "a", "b", ... for catalog members.
inline std::vector<Term> letters(int n) {
    std::vector<Term> out;
    for (int i = 0; i < n; ++i) out.push_back(Term::base(std::string(1, static_cast<char>('a' + i))));
    return out;
}

namespace detail {

inline TermPairs index_order(const std::vector<Term>& u) {
    TermPairs out;
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = i + 1; j < u.size(); ++j) out.emplace_back(u[i], u[j]);
    return out;
}

// Every subset of the unordered pairs, as a bitmask over index_order(u).
inline void for_each_pair_subset(std::size_t n, const std::function<void(std::uint32_t)>& f) {
    const std::size_t m = n * (n - 1) / 2;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) f(mask);
}

// Labeled candidates for one size; ordered tags fix < as the index order.
inline std::vector<Structure> labeled(const ClassTag& tag, int n) {
    auto u = letters(n);
    auto pairs = index_order(u);
    auto lt = pairs;
    std::vector<Structure> out;
    auto emit = [&](RelationTable rels) {
        auto s = make_finite(tag, u, rels);
        if (validate_class(s, tag).ok()) out.push_back(std::move(s));
    };
    auto select = [&](std::uint32_t mask, bool flip_rest) {
        TermPairs sel;
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            if (mask >> k & 1u) sel.push_back(pairs[k]);
            else if (flip_rest) sel.emplace_back(pairs[k].second, pairs[k].first);
        }
        return sel;
    };
    switch (tag.family) {
        case Family::LinearOrder: emit({{Symbol::Less, lt}}); break;
        case Family::OrderedLinearOrder: {
            std::vector<int> perm(static_cast<std::size_t>(n));
            std::iota(perm.begin(), perm.end(), 0);
            do {
                TermPairs lhd;
                for (int i = 0; i < n; ++i)
                    for (int j = i + 1; j < n; ++j)
                        lhd.emplace_back(u[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])],
                                         u[static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])]);
                emit({{Symbol::Less, lt}, {Symbol::Lhd, lhd}});
            } while (std::next_permutation(perm.begin(), perm.end()));
            break;
        }
        case Family::LocalOrder:
            for_each_pair_subset(u.size(), [&](std::uint32_t m) { emit({{Symbol::Arrow, select(m, true)}}); });
            break;
        case Family::OrderedLocalOrder:
            for_each_pair_subset(u.size(), [&](std::uint32_t m) {
                emit({{Symbol::Less, lt}, {Symbol::Arrow, select(m, true)}});
            });
            break;
        case Family::Graph:
        case Family::KnFreeGraph:
            for_each_pair_subset(u.size(), [&](std::uint32_t m) { emit({{Symbol::Adj, select(m, false)}}); });
            break;
        case Family::OrderedGraph:
        case Family::OrderedKnFreeGraph:
            for_each_pair_subset(u.size(), [&](std::uint32_t m) {
                emit({{Symbol::Less, lt}, {Symbol::Adj, select(m, false)}});
            });
            break;
        case Family::LinExtPartialOrder:
            for_each_pair_subset(u.size(), [&](std::uint32_t m) {
                emit({{Symbol::Less, lt}, {Symbol::Lhd, select(m, false)}});
            });
            break;
        case Family::ConvexOrderedEquiv:
        case Family::BoundedOrderedEquiv: {
            // Restricted growth strings give every set partition once.
            std::vector<int> cls(static_cast<std::size_t>(n), 0);
            std::function<void(int, int)> rec = [&](int i, int used) {
                if (i == n) {
                    TermPairs eq;
                    for (int a = 0; a < n; ++a)
                        for (int b = a + 1; b < n; ++b)
                            if (cls[static_cast<std::size_t>(a)] == cls[static_cast<std::size_t>(b)])
                                eq.emplace_back(u[static_cast<std::size_t>(a)], u[static_cast<std::size_t>(b)]);
                    emit({{Symbol::Less, lt}, {Symbol::Adj, eq}});
                    return;
                }
                for (int c = 0; c <= used && c <= n; ++c) {
                    cls[static_cast<std::size_t>(i)] = c;
                    rec(i + 1, std::max(used, c + 1));
                }
            };
            if (n == 0) emit({{Symbol::Less, {}}, {Symbol::Adj, {}}});
            else rec(0, 0);
            break;
        }
    }
    return out;
}

// Cheap isomorphism invariant: sorted (out, in) degree pairs per symbol.
inline std::vector<int> invariant(const Structure& s) {
    std::vector<int> out;
    for (auto sym : s.tag().signature()) {
        std::vector<int> deg;
        for (const auto& u : s.universe()) {
            int o = 0, i = 0;
            for (const auto& v : s.universe()) {
                if (u == v) continue;
                o += s.holds(sym, u, v);
                i += s.holds(sym, v, u);
            }
            deg.push_back(o * 64 + i);
        }
        std::sort(deg.begin(), deg.end());
        out.insert(out.end(), deg.begin(), deg.end());
    }
    return out;
}

}  // namespace detail

/// One representative per isomorphism class of members of size exactly n.
/// With < fixed to the index order, distinct labeled ordered structures are
/// never isomorphic, so only unordered tags need deduplication.
inline std::vector<Structure> catalog_exact(const ClassTag& tag, int n) {
    if (n < 0 || n > 6) throw ConfigError("catalog sizes are limited to 0..6");
    auto all = detail::labeled(tag, n);
    if (tag.has(Symbol::Less)) return all;
    std::vector<Structure> reps;
    std::map<std::vector<int>, std::vector<std::size_t>> buckets;
    for (auto& s : all) {
        auto& bucket = buckets[detail::invariant(s)];
        bool fresh = true;
        for (auto i : bucket)
            if (isomorphic(reps[i], s)) {
                fresh = false;
                break;
            }
        if (fresh) {
            bucket.push_back(reps.size());
            reps.push_back(std::move(s));
        }
    }
    return reps;
}

/// Members of sizes 1..max_size, one per isomorphism class, by size.
inline std::vector<Structure> catalog(const ClassTag& tag, int max_size) {
    if (max_size > 6) throw ConfigError("catalog sizes are limited to 0..6");
    std::vector<Structure> out;
    for (int n = 1; n <= max_size; ++n) {
        auto part = catalog_exact(tag, n);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

}  // namespace abap

#endif  // ABAP_CATALOG_HPP
