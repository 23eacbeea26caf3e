#include <gtest/gtest.h>

#include <regex>

#include "oracles.hpp"

using namespace abap;

TEST(Json, RoundTripOverCatalogs) {
    for (const auto& tag : oracle::all_tags())
        for (const auto& s : catalog(tag, 3)) {
            auto back = structure_from_string(to_json(s).dump());
            EXPECT_EQ(back.tag(), s.tag());
            EXPECT_EQ(back.universe(), s.universe());
            EXPECT_TRUE(oracle::isomorphic(oracle::snapshot(back), oracle::snapshot(s)));
            EXPECT_EQ(to_json(back), to_json(s));
        }
}

TEST(Json, WitnessesUseCanonicalKeys) {
    auto e = extend(catalog_exact(ClassTag::linear(), 1).front());
    auto win = full_window(e, 1, 1);
    auto j = to_json(e, win);
    ASSERT_EQ(j["universe"].size(), 7u);
    std::regex key(R"(a|x1<(GT|LT)\[a\]>@-?[01])");
    for (const auto& k : j["universe"]) EXPECT_TRUE(std::regex_match(k.get<std::string>(), key)) << k;
    EXPECT_EQ(j["relations"]["<"].size(), 21u);
}

TEST(Json, MalformedInputsAreInputErrors) {
    EXPECT_THROW(structure_from_string("{"), InputError);
    EXPECT_THROW(structure_from_string("[]"), InputError);
    EXPECT_THROW(structure_from_string(R"({"class":"nope","universe":[]})"), InputError);
    EXPECT_THROW(structure_from_string(R"({"class":"linear"})"), InputError);
    EXPECT_THROW(structure_from_string(R"({"class":"linear","universe":["a","a"]})"), InputError);
    EXPECT_THROW(structure_from_string(R"({"class":"linear","universe":["a"],"relations":{"adj":[]}})"), InputError);
    EXPECT_THROW(structure_from_string(R"({"class":"linear","universe":["a"],"relations":{"<":[["a","b"]]}})"),
                 InputError);
    EXPECT_THROW(structure_from_string(R"({"class":"linear","universe":["a"],"relations":{"<":[["a","a"]]}})"),
                 InputError);
    EXPECT_THROW(structure_from_string(R"({"class":"linear","universe":["a"],"relations":{"~":[]}})"), InputError);
}

TEST(Json, ClassTagsRoundTrip) {
    for (const auto& tag : oracle::all_tags()) EXPECT_EQ(parse_class_tag(tag.name()), tag);
    EXPECT_EQ(parse_class_tag("bounded-equiv-inf"), ClassTag::bounded_equiv(std::nullopt));
    EXPECT_THROW(parse_class_tag("k-free"), ConfigError);
}

TEST(Dot, OneNodePerTerm) {
    auto e = extend(catalog_exact(ClassTag::graph(), 2).back());
    auto win = full_window(e, 0, 2);
    auto dot = to_dot(e, win);
    EXPECT_EQ(dot.rfind("digraph", 0), 0u);
    std::size_t nodes = 0;
    std::istringstream in(dot);
    for (std::string line; std::getline(in, line);)
        if (line.find("->") == std::string::npos && line.find('"') != std::string::npos &&
            line.rfind("digraph", 0) != 0)
            ++nodes;
    EXPECT_EQ(nodes, win.size());
}

TEST(Tower, JsonHasOneEntryPerStage) {
    auto t = build_tower(catalog_exact(ClassTag::local(), 3).back(), 2, FiniteWindow{2, 0, 1});
    auto j = tower_to_json(t);
    ASSERT_EQ(j.size(), 3u);
    for (int s = 0; s <= 2; ++s) EXPECT_EQ(j[static_cast<std::size_t>(s)]["stage"], s);
}

TEST(Json, OutputIsDeterministic) {
    auto make = [] {
        auto e = extend(catalog_exact(ClassTag::ordered_graph(), 2).front());
        return to_json(e, full_window(e, 1, 2)).dump();
    };
    EXPECT_EQ(make(), make());
}
