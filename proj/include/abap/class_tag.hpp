#ifndef ABAP_CLASS_TAG_HPP
#define ABAP_CLASS_TAG_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace abap {

/// Relation symbols: < (linear order), → (tournament), ∼ (graph adjacency or
/// equivalence), ⊲ (second order / partial order).
enum class Symbol { Less, Arrow, Adj, Lhd };

inline std::string_view symbol_name(Symbol s) {
    switch (s) {
        case Symbol::Less: return "<";
        case Symbol::Arrow: return "->";
        case Symbol::Adj: return "adj";
        case Symbol::Lhd: return "lhd";
    }
    return "?";
}

inline std::optional<Symbol> parse_symbol(std::string_view s) {
    if (s == "<") return Symbol::Less;
    if (s == "->") return Symbol::Arrow;
    if (s == "adj" || s == "~") return Symbol::Adj;
    if (s == "lhd") return Symbol::Lhd;
    return std::nullopt;
}

enum class Family {
    LinearOrder,
    OrderedLinearOrder,
    LocalOrder,
    OrderedLocalOrder,
    Graph,
    KnFreeGraph,
    OrderedGraph,
    OrderedKnFreeGraph,
    LinExtPartialOrder,
    ConvexOrderedEquiv,
    BoundedOrderedEquiv,
};

/// Raised for misconfiguration (bad tag, symbol mismatch), as opposed to a
/// structure failing its class axioms.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ClassTag {
    Family family = Family::LinearOrder;
    /// Clique size for the Kn-free families; class bound for
    /// BoundedOrderedEquiv, where nullopt means unbounded.
    std::optional<int> n;

    static ClassTag linear() { return {Family::LinearOrder, {}}; }
    static ClassTag ordered_linear() { return {Family::OrderedLinearOrder, {}}; }
    static ClassTag local() { return {Family::LocalOrder, {}}; }
    static ClassTag ordered_local() { return {Family::OrderedLocalOrder, {}}; }
    static ClassTag graph() { return {Family::Graph, {}}; }
    static ClassTag kn_free(int n) { return checked({Family::KnFreeGraph, n}); }
    static ClassTag ordered_graph() { return {Family::OrderedGraph, {}}; }
    static ClassTag ordered_kn_free(int n) { return checked({Family::OrderedKnFreeGraph, n}); }
    static ClassTag linext() { return {Family::LinExtPartialOrder, {}}; }
    static ClassTag convex_equiv() { return {Family::ConvexOrderedEquiv, {}}; }
    static ClassTag bounded_equiv(std::optional<int> n) {
        return checked({Family::BoundedOrderedEquiv, n});
    }

    static ClassTag checked(ClassTag t) {
        if ((t.family == Family::KnFreeGraph || t.family == Family::OrderedKnFreeGraph) &&
            (!t.n || *t.n < 3))
            throw ConfigError("Kn-free tags need n >= 3");
        if (t.family == Family::BoundedOrderedEquiv && t.n && *t.n < 1)
            throw ConfigError("class bound must be at least 1");
        return t;
    }

    bool has(Symbol s) const {
        for (auto x : signature())
            if (x == s) return true;
        return false;
    }

    std::vector<Symbol> signature() const {
        switch (family) {
            case Family::LinearOrder: return {Symbol::Less};
            case Family::OrderedLinearOrder: return {Symbol::Less, Symbol::Lhd};
            case Family::LocalOrder: return {Symbol::Arrow};
            case Family::OrderedLocalOrder: return {Symbol::Less, Symbol::Arrow};
            case Family::Graph:
            case Family::KnFreeGraph: return {Symbol::Adj};
            case Family::OrderedGraph:
            case Family::OrderedKnFreeGraph: return {Symbol::Less, Symbol::Adj};
            case Family::LinExtPartialOrder: return {Symbol::Less, Symbol::Lhd};
            case Family::ConvexOrderedEquiv:
            case Family::BoundedOrderedEquiv: return {Symbol::Less, Symbol::Adj};
        }
        return {};
    }

    bool is_equivalence() const {
        return family == Family::ConvexOrderedEquiv || family == Family::BoundedOrderedEquiv;
    }
    bool is_graph() const {
        return family == Family::Graph || family == Family::KnFreeGraph ||
               family == Family::OrderedGraph || family == Family::OrderedKnFreeGraph;
    }
    std::optional<int> clique_bound() const {
        if (family == Family::KnFreeGraph || family == Family::OrderedKnFreeGraph) return n;
        return std::nullopt;
    }

    std::string name() const {
        switch (family) {
            case Family::LinearOrder: return "linear";
            case Family::OrderedLinearOrder: return "ordered-linear";
            case Family::LocalOrder: return "local";
            case Family::OrderedLocalOrder: return "ordered-local";
            case Family::Graph: return "graph";
            case Family::KnFreeGraph: return "k" + std::to_string(*n) + "-free";
            case Family::OrderedGraph: return "ordered-graph";
            case Family::OrderedKnFreeGraph: return "ordered-k" + std::to_string(*n) + "-free";
            case Family::LinExtPartialOrder: return "linext";
            case Family::ConvexOrderedEquiv: return "convex-equiv";
            case Family::BoundedOrderedEquiv:
                return "bounded-equiv-" + (n ? std::to_string(*n) : std::string("inf"));
        }
        return "?";
    }

    friend bool operator==(const ClassTag&, const ClassTag&) = default;
};

inline ClassTag parse_class_tag(std::string_view s) {
    auto number = [&](std::string_view digits) {
        if (digits.empty()) throw ConfigError("missing number in class tag '" + std::string(s) + "'");
        int v = 0;
        for (char c : digits) {
            if (c < '0' || c > '9') throw ConfigError("bad number in class tag '" + std::string(s) + "'");
            v = v * 10 + (c - '0');
        }
        return v;
    };
    if (s == "linear") return ClassTag::linear();
    if (s == "ordered-linear") return ClassTag::ordered_linear();
    if (s == "local") return ClassTag::local();
    if (s == "ordered-local") return ClassTag::ordered_local();
    if (s == "graph") return ClassTag::graph();
    if (s == "ordered-graph") return ClassTag::ordered_graph();
    if (s == "linext") return ClassTag::linext();
    if (s == "convex-equiv") return ClassTag::convex_equiv();
    constexpr std::string_view kFree = "-free";
    if (s.size() > kFree.size() && s.substr(s.size() - kFree.size()) == kFree) {
        auto head = s.substr(0, s.size() - kFree.size());
        if (head.starts_with("ordered-k")) return ClassTag::ordered_kn_free(number(head.substr(9)));
        if (head.starts_with("k")) return ClassTag::kn_free(number(head.substr(1)));
    }
    if (s.starts_with("bounded-equiv-")) {
        auto tail = s.substr(14);
        if (tail == "inf") return ClassTag::bounded_equiv(std::nullopt);
        return ClassTag::bounded_equiv(number(tail));
    }
    throw ConfigError("unknown class tag '" + std::string(s) + "'");
}

}  // namespace abap

#endif  // ABAP_CLASS_TAG_HPP
