#ifndef ABAP_STRUCTURE_HPP
#define ABAP_STRUCTURE_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "abap/class_tag.hpp"
#include "abap/term.hpp"

namespace abap {

/// Finite truncation of a (possibly infinite) structure: stages up to
/// `stage_bound`, witness chain indices in [-chain, chain], and at most
/// `params` parameters per enumerated type.
struct FiniteWindow {
    int stage_bound = 1;
    int chain = 0;
    int params = 1;

    void check() const {
        if (stage_bound < 0 || chain < 0 || params < 0)
            throw ConfigError("window bounds must be non-negative");
    }
    friend bool operator==(const FiniteWindow&, const FiniteWindow&) = default;
};

/// Backing implementation of a Structure. All queries are pure.
class Presentation {
public:
    virtual ~Presentation() = default;

    /// Total decision rule for a relation on terms of the structure.
    virtual bool holds(Symbol s, const Term& u, const Term& v) const = 0;
    virtual bool contains(const Term& t) const = 0;
    /// Finite induced window, in term order.
    virtual std::vector<Term> window(const FiniteWindow& w) const = 0;

    virtual bool empty() const { return false; }
    /// Least element of a linear coordinate, if the structure has one.
    virtual std::optional<Term> minimum(Symbol) const { return std::nullopt; }
    /// <-least member of the ∼-class of t, if it exists.
    virtual std::optional<Term> class_minimum(const Term&) const { return std::nullopt; }
    /// Number of ∼-classes, if finite and known.
    virtual std::optional<std::size_t> class_count() const { return std::nullopt; }
    virtual int stage() const { return 0; }
    virtual const std::vector<Term>* finite_universe() const { return nullptr; }
};

class Structure {
public:
    Structure(ClassTag tag, std::shared_ptr<const Presentation> p)
        : tag_(tag), impl_(std::move(p)) {}

    const ClassTag& tag() const { return tag_; }
    const Presentation& presentation() const { return *impl_; }
    std::shared_ptr<const Presentation> shared_presentation() const { return impl_; }

    bool holds(Symbol s, const Term& u, const Term& v) const {
        if (!tag_.has(s))
            throw ConfigError("symbol " + std::string(symbol_name(s)) + " is not in the signature of " +
                              tag_.name());
        return impl_->holds(s, u, v);
    }
    bool less(const Term& u, const Term& v) const { return holds(Symbol::Less, u, v); }
    bool contains(const Term& t) const { return impl_->contains(t); }
    std::vector<Term> window(const FiniteWindow& w) const {
        w.check();
        return impl_->window(w);
    }
    bool empty() const { return impl_->empty(); }
    std::optional<Term> minimum(Symbol s) const { return impl_->minimum(s); }
    std::optional<Term> class_minimum(const Term& t) const { return impl_->class_minimum(t); }
    std::optional<std::size_t> class_count() const { return impl_->class_count(); }
    int stage() const { return impl_->stage(); }

    bool is_finite() const { return impl_->finite_universe() != nullptr; }
    const std::vector<Term>& universe() const {
        auto* u = impl_->finite_universe();
        if (!u) throw std::logic_error("structure is not finite");
        return *u;
    }
    std::size_t size() const { return universe().size(); }

private:
    ClassTag tag_;
    std::shared_ptr<const Presentation> impl_;
};

using TermPairs = std::vector<std::pair<Term, Term>>;
using RelationTable = std::map<Symbol, TermPairs>;

/// Explicit finite structure: a universe plus one adjacency matrix per symbol.
class FinitePresentation final : public Presentation {
public:
    FinitePresentation(const ClassTag& tag, std::vector<Term> universe, const RelationTable& rels)
        : universe_(std::move(universe)) {
        std::sort(universe_.begin(), universe_.end());
        for (std::size_t i = 0; i + 1 < universe_.size(); ++i)
            if (universe_[i] == universe_[i + 1])
                throw std::invalid_argument("duplicate universe element " + universe_[i].key());
        for (std::size_t i = 0; i < universe_.size(); ++i) index_.emplace(universe_[i], i);
        const std::size_t n = universe_.size();
        for (auto s : tag.signature()) matrices_[static_cast<int>(s)].assign(n * n, 0);
        for (const auto& [sym, pairs] : rels) {
            if (!tag.has(sym))
                throw ConfigError("relation " + std::string(symbol_name(sym)) + " is not in the signature of " +
                                  tag.name());
            auto& m = matrices_[static_cast<int>(sym)];
            for (const auto& [u, v] : pairs) {
                auto i = position(u), j = position(v);
                if (!i || !j)
                    throw std::invalid_argument("relation mentions a term outside the universe: " +
                                                (i ? v.key() : u.key()));
                m[*i * n + *j] = 1;
                if (sym == Symbol::Adj) m[*j * n + *i] = 1;
            }
        }
        compute_summaries(tag);
    }

    bool holds(Symbol s, const Term& u, const Term& v) const override {
        const auto& m = matrices_[static_cast<int>(s)];
        if (m.empty()) return false;
        auto i = position(u), j = position(v);
        if (!i || !j) return false;
        return m[*i * universe_.size() + *j] != 0;
    }
    bool contains(const Term& t) const override { return index_.count(t) != 0; }
    std::vector<Term> window(const FiniteWindow&) const override { return universe_; }
    bool empty() const override { return universe_.empty(); }
    std::optional<Term> minimum(Symbol s) const override {
        auto it = minima_.find(static_cast<int>(s));
        if (it == minima_.end()) return std::nullopt;
        return it->second;
    }
    std::optional<Term> class_minimum(const Term& t) const override {
        auto it = class_min_.find(t);
        if (it == class_min_.end()) return std::nullopt;
        return it->second;
    }
    std::optional<std::size_t> class_count() const override { return classes_; }
    const std::vector<Term>* finite_universe() const override { return &universe_; }

    std::optional<std::size_t> position(const Term& t) const {
        auto it = index_.find(t);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

private:
    bool at(Symbol s, std::size_t i, std::size_t j) const {
        const auto& m = matrices_[static_cast<int>(s)];
        return !m.empty() && m[i * universe_.size() + j] != 0;
    }

    // Minima are only recorded when the coordinate is a strict total order
    // with a unique least element; invalid structures simply report none.
    void compute_summaries(const ClassTag& tag) {
        const std::size_t n = universe_.size();
        for (auto s : {Symbol::Less, Symbol::Lhd}) {
            if (!tag.has(s)) continue;
            for (std::size_t i = 0; i < n; ++i) {
                bool least = true;
                for (std::size_t j = 0; j < n && least; ++j)
                    if (j != i && !at(s, i, j)) least = false;
                if (least) {
                    minima_.emplace(static_cast<int>(s), universe_[i]);
                    break;
                }
            }
        }
        if (tag.is_equivalence()) {
            std::vector<bool> seen(n, false);
            std::size_t count = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (seen[i]) continue;
                ++count;
                std::vector<std::size_t> cls{i};
                for (std::size_t j = i + 1; j < n; ++j)
                    if (at(Symbol::Adj, i, j)) cls.push_back(j);
                std::optional<std::size_t> lo;
                for (auto k : cls) {
                    seen[k] = true;
                    bool below_all = true;
                    for (auto l : cls)
                        if (l != k && !at(Symbol::Less, k, l)) below_all = false;
                    if (below_all) lo = k;
                }
                if (lo)
                    for (auto k : cls) class_min_.emplace(universe_[k], universe_[*lo]);
            }
            classes_ = count;
        }
    }

    std::vector<Term> universe_;
    std::unordered_map<Term, std::size_t> index_;
    std::vector<char> matrices_[4];
    std::map<int, Term> minima_;
    std::unordered_map<Term, Term> class_min_;
    std::optional<std::size_t> classes_;
};

inline Structure make_finite(const ClassTag& tag, std::vector<Term> universe, const RelationTable& rels) {
    return Structure(tag, std::make_shared<FinitePresentation>(tag, std::move(universe), rels));
}

inline std::vector<Term> atoms(std::initializer_list<std::string> ids) {
    std::vector<Term> out;
    for (const auto& id : ids) out.push_back(Term::base(id));
    return out;
}

/// Rule-based presentation for seeds that are themselves infinite.
class LazyPresentation final : public Presentation {
public:
    using Rule = std::function<bool(Symbol, const Term&, const Term&)>;
    using Member = std::function<bool(const Term&)>;
    using Windower = std::function<std::vector<Term>(const FiniteWindow&)>;

    LazyPresentation(Rule rule, Member member, Windower windower)
        : rule_(std::move(rule)), member_(std::move(member)), windower_(std::move(windower)) {}

    bool holds(Symbol s, const Term& u, const Term& v) const override {
        return member_(u) && member_(v) && rule_(s, u, v);
    }
    bool contains(const Term& t) const override { return member_(t); }
    std::vector<Term> window(const FiniteWindow& w) const override {
        auto out = windower_(w);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    Rule rule_;
    Member member_;
    Windower windower_;
};

inline std::optional<long> integer_atom(const Term& t) {
    if (!t.valid() || !t.is_base()) return std::nullopt;
    const auto& s = t.atom();
    if (s.empty()) return std::nullopt;
    std::size_t pos = 0;
    try {
        long v = std::stol(s, &pos);
        if (pos != s.size() || std::to_string(v) != s) return std::nullopt;
        return v;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

/// (Z,<) with atoms named by their decimal value. Its window of chain
/// width w is the integers in [-(w+1), w+1].
inline Structure integers() {
    auto rule = [](Symbol s, const Term& u, const Term& v) {
        return s == Symbol::Less && *integer_atom(u) < *integer_atom(v);
    };
    auto member = [](const Term& t) { return integer_atom(t).has_value(); };
    auto windower = [](const FiniteWindow& w) {
        std::vector<Term> out;
        for (long i = -(w.chain + 1); i <= w.chain + 1; ++i) out.push_back(Term::base(std::to_string(i)));
        return out;
    };
    return Structure(ClassTag::linear(), std::make_shared<LazyPresentation>(rule, member, windower));
}

/// The finite substructure induced on `elems`, with relations read through
/// the decision rules of `s`.
inline Structure induced(const Structure& s, std::span<const Term> elems) {
    RelationTable rels;
    for (auto sym : s.tag().signature()) {
        auto& pairs = rels[sym];
        for (const auto& u : elems)
            for (const auto& v : elems)
                if (!(u == v) && s.holds(sym, u, v)) pairs.emplace_back(u, v);
    }
    return make_finite(s.tag(), std::vector<Term>(elems.begin(), elems.end()), rels);
}

inline Structure retag(const Structure& s, const ClassTag& tag) {
    if (s.tag().signature() != tag.signature())
        throw ConfigError("cannot retag " + s.tag().name() + " as " + tag.name() + ": signatures differ");
    return Structure(tag, s.shared_presentation());
}

/// Rename the atoms of a finite structure.
inline Structure relabel(const Structure& s, const std::function<Term(const Term&)>& f) {
    std::vector<Term> uni;
    for (const auto& t : s.universe()) uni.push_back(f(t));
    RelationTable rels;
    for (auto sym : s.tag().signature()) {
        auto& pairs = rels[sym];
        for (const auto& u : s.universe())
            for (const auto& v : s.universe())
                if (!(u == v) && s.holds(sym, u, v)) pairs.emplace_back(f(u), f(v));
    }
    return make_finite(s.tag(), uni, rels);
}

}  // namespace abap

#endif  // ABAP_STRUCTURE_HPP
