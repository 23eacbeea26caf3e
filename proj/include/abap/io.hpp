#ifndef ABAP_IO_HPP
#define ABAP_IO_HPP

#include <algorithm>
#include <map>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "abap/morphism.hpp"
#include "abap/tower.hpp"

namespace abap {

using Json = nlohmann::ordered_json;

/// Malformed input document (bad JSON shape, unknown atoms or symbols).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// {"class", "universe", "relations"} for the induced window. Witness terms
/// appear under their canonical keys.
inline Json to_json(const Structure& s, std::span<const Term> window) {
    Json j;
    j["class"] = s.tag().name();
    Json uni = Json::array();
    for (const auto& t : window) uni.push_back(t.key());
    j["universe"] = uni;
    Json rels = Json::object();
    for (auto sym : s.tag().signature()) {
        Json pairs = Json::array();
        for (const auto& u : window)
            for (const auto& v : window) {
                if (u == v || !s.holds(sym, u, v)) continue;
                if (sym == Symbol::Adj && !(u < v)) continue;  // one orientation per edge
                pairs.push_back(Json::array({u.key(), v.key()}));
            }
        rels[std::string(symbol_name(sym))] = pairs;
    }
    j["relations"] = rels;
    return j;
}

inline Json to_json(const Structure& s) { return to_json(s, s.universe()); }

inline Structure structure_from_json(const Json& j) {
    if (!j.is_object()) throw InputError("structure document must be a JSON object");
    if (!j.contains("class") || !j["class"].is_string()) throw InputError("missing string field 'class'");
    ClassTag tag;
    try {
        tag = parse_class_tag(j["class"].get<std::string>());
    } catch (const ConfigError& e) {
        throw InputError(e.what());
    }
    if (!j.contains("universe") || !j["universe"].is_array()) throw InputError("missing array field 'universe'");
    std::vector<Term> uni;
    std::map<std::string, Term> by_id;
    for (const auto& a : j["universe"]) {
        if (!a.is_string()) throw InputError("universe entries must be strings");
        auto id = a.get<std::string>();
        if (id.empty()) throw InputError("empty atom id");
        if (by_id.count(id)) throw InputError("duplicate atom '" + id + "'");
        auto t = Term::base(id);
        by_id.emplace(id, t);
        uni.push_back(t);
    }
    RelationTable rels;
    if (j.contains("relations")) {
        if (!j["relations"].is_object()) throw InputError("'relations' must be an object");
        for (const auto& [name, pairs] : j["relations"].items()) {
            auto sym = parse_symbol(name);
            if (!sym) throw InputError("unknown relation symbol '" + name + "'");
            if (!tag.has(*sym))
                throw InputError("relation '" + name + "' is not in the signature of " + tag.name());
            if (!pairs.is_array()) throw InputError("relation '" + name + "' must be an array of pairs");
            auto& out = rels[*sym];
            for (const auto& p : pairs) {
                if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
                    throw InputError("relation '" + name + "' entries must be [atom, atom]");
                auto a = by_id.find(p[0].get<std::string>()), b = by_id.find(p[1].get<std::string>());
                if (a == by_id.end() || b == by_id.end())
                    throw InputError("relation '" + name + "' mentions an atom outside the universe");
                if (a->second == b->second) throw InputError("relation '" + name + "' is not irreflexive");
                out.emplace_back(a->second, b->second);
            }
        }
    }
    return make_finite(tag, uni, rels);
}

inline Structure structure_from_string(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
    return structure_from_json(j);
}

/// A morphism on a finite window as a list of [term, image] pairs.
inline Json morphism_to_json(const Morphism& f, std::span<const Term> window) {
    Json out = Json::array();
    for (const auto& t : window) out.push_back(Json::array({t.key(), f(t).key()}));
    return out;
}

inline Json tower_to_json(const Tower& t) {
    Json out = Json::array();
    for (int s = 0; s <= t.depth(); ++s) {
        auto w = t.window_at(s);
        auto j = to_json(t.stages[static_cast<std::size_t>(s)], w);
        j["stage"] = s;
        out.push_back(j);
    }
    return out;
}

/// DOT text: one node per term, directed edges for → and ⊲, undirected for
/// ∼, and an invisible chain along < so the layout ranks by it.
inline std::string to_dot(const Structure& s, std::span<const Term> window) {
    std::ostringstream os;
    auto q = [](const Term& t) {
        std::string out = "\"";
        for (char c : t.key()) {
            if (c == '"' || c == '\\') out += '\\';
            out += c;
        }
        return out + "\"";
    };
    os << "digraph \"" << s.tag().name() << "\" {\n";
    if (s.tag().has(Symbol::Less)) os << "  rankdir=LR;\n";
    for (const auto& t : window) os << "  " << q(t) << ";\n";
    if (s.tag().has(Symbol::Less)) {
        std::vector<Term> sorted(window.begin(), window.end());
        std::sort(sorted.begin(), sorted.end(), [&](const Term& a, const Term& b) { return s.less(a, b); });
        for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
            os << "  " << q(sorted[i]) << " -> " << q(sorted[i + 1]) << " [style=invis];\n";
    }
    for (auto sym : s.tag().signature()) {
        if (sym == Symbol::Less) continue;
        for (const auto& u : window)
            for (const auto& v : window) {
                if (u == v || !s.holds(sym, u, v)) continue;
                if (sym == Symbol::Adj) {
                    if (u < v) os << "  " << q(u) << " -> " << q(v) << " [dir=none];\n";
                } else {
                    os << "  " << q(u) << " -> " << q(v) << " [label=\"" << symbol_name(sym) << "\"];\n";
                }
            }
    }
    os << "}\n";
    return os.str();
}

}  // namespace abap

#endif  // ABAP_IO_HPP
