#ifndef ABAP_ISO_HPP
#define ABAP_ISO_HPP

#include <map>
#include <optional>
#include <vector>

#include "abap/structure.hpp"

namespace abap {

using TermMap = std::map<Term, Term>;

namespace detail {

// Backtracking over the target elements, assigning source elements in term
// order and pruning on every relation between already-assigned pairs.
class IsoSearch {
public:
    IsoSearch(const Structure& s, const Structure& t, bool all) : s_(s), t_(t), all_(all) {
        const auto& su = s.universe();
        const auto& tu = t.universe();
        n_ = su.size();
        for (auto sym : s.tag().signature()) {
            auto& sm = smat_[static_cast<int>(sym)];
            auto& tm = tmat_[static_cast<int>(sym)];
            sm.assign(n_ * n_, 0);
            tm.assign(n_ * n_, 0);
            for (std::size_t i = 0; i < n_; ++i)
                for (std::size_t j = 0; j < n_; ++j)
                    if (i != j) {
                        sm[i * n_ + j] = s.holds(sym, su[i], su[j]);
                        tm[i * n_ + j] = t.holds(sym, tu[i], tu[j]);
                    }
        }
    }

    std::vector<TermMap> run() {
        assign_.assign(n_, 0);
        used_.assign(n_, false);
        search(0);
        return found_;
    }

private:
    bool consistent(std::size_t i, std::size_t img) const {
        for (auto sym : s_.tag().signature()) {
            const auto& sm = smat_[static_cast<int>(sym)];
            const auto& tm = tmat_[static_cast<int>(sym)];
            for (std::size_t j = 0; j < i; ++j) {
                if (sm[i * n_ + j] != tm[img * n_ + assign_[j]]) return false;
                if (sm[j * n_ + i] != tm[assign_[j] * n_ + img]) return false;
            }
        }
        return true;
    }

    bool search(std::size_t i) {
        if (i == n_) {
            TermMap m;
            for (std::size_t k = 0; k < n_; ++k) m.emplace(s_.universe()[k], t_.universe()[assign_[k]]);
            found_.push_back(std::move(m));
            return !all_;
        }
        for (std::size_t img = 0; img < n_; ++img) {
            if (used_[img] || !consistent(i, img)) continue;
            used_[img] = true;
            assign_[i] = img;
            if (search(i + 1)) return true;
            used_[img] = false;
        }
        return false;
    }

    const Structure& s_;
    const Structure& t_;
    bool all_;
    std::size_t n_ = 0;
    std::vector<char> smat_[4], tmat_[4];
    std::vector<std::size_t> assign_;
    std::vector<bool> used_;
    std::vector<TermMap> found_;
};

inline void require_comparable(const Structure& s, const Structure& t) {
    if (s.tag().signature() != t.tag().signature())
        throw ConfigError("isomorphism between different signatures: " + s.tag().name() + " vs " + t.tag().name());
}

}  // namespace detail

/// A relation-preserving bijection s -> t, or none. The first one found in
/// term order is returned, so the answer is deterministic.
inline std::optional<TermMap> isomorphic(const Structure& s, const Structure& t) {
    detail::require_comparable(s, t);
    if (s.size() != t.size()) return std::nullopt;
    auto found = detail::IsoSearch(s, t, false).run();
    if (found.empty()) return std::nullopt;
    return found.front();
}

inline std::vector<TermMap> isomorphisms(const Structure& s, const Structure& t) {
    detail::require_comparable(s, t);
    if (s.size() != t.size()) return {};
    return detail::IsoSearch(s, t, true).run();
}

/// The full automorphism group of a finite structure; the identity comes first.
inline std::vector<TermMap> automorphisms(const Structure& s) { return isomorphisms(s, s); }

}  // namespace abap

#endif  // ABAP_ISO_HPP
