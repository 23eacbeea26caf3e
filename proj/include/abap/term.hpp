#ifndef ABAP_TERM_HPP
#define ABAP_TERM_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace abap {

/// Literal kinds of a quantifier-free 1-type in the free variable x.
/// The enumerator order is the global shape order used by TypeOrder.
enum class LiteralKind : int {
    Gt = 0,      // p < x
    Lt = 1,      // x < p
    PoGt = 2,    // p ⊲ x
    PoLt = 3,    // x ⊲ p
    PoInc = 4,   // x ⊥ p  (⊲-incomparable)
    In = 5,      // p → x
    Out = 6,     // x → p
    Adj = 7,     // x ∼ p
    NonAdj = 8,  // x ≁ p
};

inline std::string_view mnemonic(LiteralKind k) {
    switch (k) {
        case LiteralKind::Gt: return "GT";
        case LiteralKind::Lt: return "LT";
        case LiteralKind::PoGt: return "PGT";
        case LiteralKind::PoLt: return "PLT";
        case LiteralKind::PoInc: return "PINC";
        case LiteralKind::In: return "IN";
        case LiteralKind::Out: return "OUT";
        case LiteralKind::Adj: return "ADJ";
        case LiteralKind::NonAdj: return "NADJ";
    }
    return "?";
}

class AdmissibleType;
struct Literal;

namespace detail {
struct TermNode;
}

/// An element identifier: a seed atom, or the witness x_{τ,m} added at some stage.
///
/// Terms are immutable and cheap to copy. Two witness terms are equal iff
/// their stage, type and chain index agree.
class Term {
public:
    Term() = default;

    static Term base(std::string id);
    static Term witness(int stage, AdmissibleType type, long index);

    bool valid() const { return node_ != nullptr; }
    bool is_base() const;
    bool is_witness() const { return valid() && !is_base(); }

    const std::string& atom() const;
    int stage() const;
    const AdmissibleType& type() const;
    long index() const;

    /// Stable text encoding; also the serialized form of the term.
    const std::string& key() const;
    std::size_t hash() const;

    friend bool operator==(const Term& a, const Term& b);
    friend std::strong_ordering operator<=>(const Term& a, const Term& b);

private:
    explicit Term(std::shared_ptr<const detail::TermNode> n) : node_(std::move(n)) {}
    std::shared_ptr<const detail::TermNode> node_;
};

struct Literal {
    LiteralKind kind;
    Term param;

    friend bool operator==(const Literal&, const Literal&) = default;
    friend std::strong_ordering operator<=>(const Literal& a, const Literal& b) {
        if (auto c = static_cast<int>(a.kind) <=> static_cast<int>(b.kind); c != 0) return c;
        return a.param <=> b.param;
    }
};

/// A finite set of literals in x. Stored sorted by (kind, param) so that
/// equal literal sets compare equal and encode identically.
class AdmissibleType {
public:
    AdmissibleType() { encode(); }
    explicit AdmissibleType(std::vector<Literal> lits) : literals_(std::move(lits)) {
        std::sort(literals_.begin(), literals_.end());
        literals_.erase(std::unique(literals_.begin(), literals_.end()), literals_.end());
        encode();
    }

    const std::vector<Literal>& literals() const { return literals_; }
    bool empty() const { return literals_.empty(); }
    std::size_t size() const { return literals_.size(); }

    /// Canonical text encoding, e.g. "GT[a];LT[b]".
    const std::string& encoding() const { return encoding_; }

    /// Distinct parameters in term order.
    std::vector<Term> params() const {
        std::vector<Term> out;
        for (const auto& l : literals_) out.push_back(l.param);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    std::vector<Term> params_of(LiteralKind k) const {
        std::vector<Term> out;
        for (const auto& l : literals_)
            if (l.kind == k) out.push_back(l.param);
        return out;
    }

    bool has(LiteralKind k, const Term& p) const {
        return std::find(literals_.begin(), literals_.end(), Literal{k, p}) != literals_.end();
    }

    friend bool operator==(const AdmissibleType& a, const AdmissibleType& b) {
        return a.encoding_ == b.encoding_;
    }

private:
    void encode();

    std::vector<Literal> literals_;
    std::string encoding_;
};

namespace detail {

struct TermNode {
    bool base = true;
    std::string atom;
    int stage = 0;
    AdmissibleType type;
    long index = 0;
    std::string key;
    std::size_t hash = 0;
};

}  // namespace detail

inline Term Term::base(std::string id) {
    auto n = std::make_shared<detail::TermNode>();
    n->base = true;
    n->key = id;
    n->atom = std::move(id);
    n->hash = std::hash<std::string>{}(n->key);
    return Term(std::move(n));
}

inline Term Term::witness(int stage, AdmissibleType type, long index) {
    if (stage < 1) throw std::invalid_argument("witness stage must be at least 1");
    for (const auto& l : type.literals())
        if (l.param.stage() >= stage)
            throw std::invalid_argument("witness parameter " + l.param.key() +
                                        " is not from an earlier stage");
    auto n = std::make_shared<detail::TermNode>();
    n->base = false;
    n->stage = stage;
    n->index = index;
    n->key = "x" + std::to_string(stage) + "<" + type.encoding() + ">@" + std::to_string(index);
    n->type = std::move(type);
    n->hash = std::hash<std::string>{}(n->key);
    return Term(std::move(n));
}

inline bool Term::is_base() const { return node_->base; }
inline const std::string& Term::atom() const { return node_->atom; }
inline int Term::stage() const { return node_->stage; }
inline const AdmissibleType& Term::type() const { return node_->type; }
inline long Term::index() const { return node_->index; }
inline const std::string& Term::key() const { return node_->key; }
inline std::size_t Term::hash() const { return node_->hash; }

inline bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (!a.node_ || !b.node_) return false;
    return a.node_->hash == b.node_->hash && a.node_->key == b.node_->key;
}

// Base atoms by id; witnesses by (stage, type encoding, index).
inline std::strong_ordering operator<=>(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (!a.node_ || !b.node_) return (a.node_ != nullptr) <=> (b.node_ != nullptr);
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    if (x.base != y.base) return x.base ? std::strong_ordering::less : std::strong_ordering::greater;
    if (x.base) return x.atom.compare(y.atom) <=> 0;
    if (auto c = x.stage <=> y.stage; c != 0) return c;
    if (auto c = x.type.encoding().compare(y.type.encoding()) <=> 0; c != 0) return c;
    return x.index <=> y.index;
}

inline void AdmissibleType::encode() {
    encoding_.clear();
    for (std::size_t i = 0; i < literals_.size(); ++i) {
        if (i) encoding_ += ';';
        encoding_ += mnemonic(literals_[i].kind);
        encoding_ += '[';
        encoding_ += literals_[i].param.key();
        encoding_ += ']';
    }
}

struct TermHash {
    std::size_t operator()(const Term& t) const { return t.hash(); }
};

}  // namespace abap

template <>
struct std::hash<abap::Term> {
    std::size_t operator()(const abap::Term& t) const { return t.hash(); }
};

#endif  // ABAP_TERM_HPP
