#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace abap;

namespace {

using K = LiteralKind;

AdmissibleType type(std::vector<Literal> lits) { return AdmissibleType(std::move(lits)); }
Term at(const std::string& id) { return Term::base(id); }

Structure cycle3() {
    auto u = atoms({"a", "b", "c"});
    return make_finite(ClassTag::local(), u, {{Symbol::Arrow, {{u[0], u[1]}, {u[1], u[2]}, {u[2], u[0]}}}});
}

std::vector<Term> witnesses(const std::vector<Term>& win) {
    std::vector<Term> out;
    for (const auto& t : win)
        if (t.is_witness()) out.push_back(t);
    return out;
}

bool realized(const Structure& e, const std::vector<Term>& win, const AdmissibleType& t) {
    return std::any_of(win.begin(), win.end(), [&](const Term& x) { return x.is_witness() && realizes(e, x, t); });
}

std::vector<Structure> seeds_upto(const ClassTag& tag, int n) {
    auto out = catalog(tag, n);
    out.insert(out.begin(), catalog_exact(tag, 0).front());
    return out;
}

}  // namespace

TEST(ExtendLinear, SingletonWindowIsBottomSeedTop) {
    auto l = catalog_exact(ClassTag::linear(), 1).front();
    auto e = extend_linear(l);
    auto win = full_window(e, 0, 1);
    ASSERT_EQ(win.size(), 3u);
    std::sort(win.begin(), win.end(), [&](const Term& u, const Term& v) { return e.less(u, v); });
    EXPECT_EQ(win[0], Term::witness(1, type({{K::Lt, at("a")}}), 0));
    EXPECT_EQ(win[1], at("a"));
    EXPECT_EQ(win[2], Term::witness(1, type({{K::Gt, at("a")}}), 0));
}

TEST(ExtendLinear, WindowOfWidthOneHasSevenTerms) {
    auto e = extend(catalog_exact(ClassTag::linear(), 1).front());
    EXPECT_EQ(full_window(e, 1, 1).size(), 7u);
}

TEST(ExtendLinear, WitnessesSitAboveAnchorAndChainIncreases) {
    auto l = catalog_exact(ClassTag::linear(), 3).front();  // a < b < c
    auto e = extend(l);
    auto tau = type({{K::Gt, at("b")}, {K::Lt, at("c")}});
    auto x0 = Term::witness(1, tau, 0), x1 = Term::witness(1, tau, 1);
    EXPECT_TRUE(e.less(at("a"), x0));
    EXPECT_TRUE(e.less(at("b"), x0));
    EXPECT_TRUE(e.less(x0, at("c")));
    EXPECT_TRUE(e.less(x0, x1));
    EXPECT_FALSE(e.less(x1, x0));
}

TEST(ExtendLinear, RejectsOtherFamilies) {
    EXPECT_THROW(extend_linear(cycle3()), ConfigError);
}

TEST(ExtendOrderedLinear, SingletonHasChainsAboveAndBelowInBothOrders) {
    auto p = catalog_exact(ClassTag::ordered_linear(), 1).front();
    auto e = extend_ordered_linear(p);
    auto win = full_window(e, 1, 2);
    bool above = false, below = false;
    for (const auto& x : witnesses(win)) {
        above |= e.less(at("a"), x) && e.holds(Symbol::Lhd, at("a"), x);
        below |= e.less(x, at("a")) && e.holds(Symbol::Lhd, x, at("a"));
    }
    EXPECT_TRUE(above);
    EXPECT_TRUE(below);
}

TEST(ExtendOrderedLinear, EqualAnchorsAreOrderedByTypeOrder) {
    for (const auto& p : catalog(ClassTag::ordered_linear(), 2)) {
        auto e = extend(p);
        const auto* ext = as_extension(e);
        auto ws = witnesses(full_window(e, 1, 2));
        for (const auto& x : ws)
            for (const auto& y : ws) {
                if (x.type() == y.type()) continue;
                const auto* px = ext->placement(x.type());
                const auto* py = ext->placement(y.type());
                bool same = px->order->bottom == py->order->bottom && px->order->anchor == py->order->anchor &&
                            px->lhd->bottom == py->lhd->bottom && px->lhd->anchor == py->lhd->anchor;
                if (!same) continue;
                bool before = precedes(x.type(), y.type(), p);
                EXPECT_EQ(e.less(x, y), before) << x.key() << " " << y.key();
                EXPECT_EQ(e.holds(Symbol::Lhd, x, y), before) << x.key() << " " << y.key();
            }
    }
}

TEST(ExtendLocal, CaseAWitnessOverThreeCycle) {
    auto o = cycle3();
    auto e = extend_local(o);
    auto tau = type({{K::In, at("a")}, {K::Out, at("b")}});
    ASSERT_TRUE(is_admissible(tau, o, o.tag()));
    auto x = Term::witness(1, tau, 0);
    ASSERT_TRUE(e.contains(x));
    EXPECT_TRUE(e.holds(Symbol::Arrow, at("a"), x));
    EXPECT_TRUE(e.holds(Symbol::Arrow, at("c"), x));
    EXPECT_TRUE(e.holds(Symbol::Arrow, x, at("b")));
    std::vector<Term> four{at("a"), at("b"), at("c"), x};
    EXPECT_TRUE(validate_class(e, four, e.tag()).ok());
    EXPECT_TRUE(oracle::member(oracle::snapshot(e, four)));
}

TEST(ExtendLocal, CaseBPredecessorsAreSuccessorsOfAnchor) {
    for (const auto& o : catalog(ClassTag::local(), 3)) {
        auto e = extend(o);
        const auto* ext = as_extension(e);
        std::size_t seen = 0;
        for (const auto& x : witnesses(full_window(e, 1, 3))) {
            const auto* pl = ext->placement(x.type());
            if (!pl->arrow || pl->arrow->after_anchor) continue;
            ++seen;
            const auto& b = pl->arrow->anchor;
            for (const auto& c : o.universe()) {
                if (c == b) {
                    EXPECT_TRUE(e.holds(Symbol::Arrow, x, b));
                    continue;
                }
                EXPECT_EQ(e.holds(Symbol::Arrow, c, x), o.holds(Symbol::Arrow, b, c)) << x.key() << " " << c.key();
            }
            auto earlier = Term::witness(1, x.type(), x.index() - 1);
            if (x.index() > -1) {
                EXPECT_TRUE(e.holds(Symbol::Arrow, earlier, x));
            }
        }
        EXPECT_GT(seen, 0u);
    }
}

TEST(ExtendLocal, CaseAToCaseBAcrossAnchors) {
    for (const auto& o : catalog(ClassTag::local(), 3)) {
        auto e = extend(o);
        const auto* ext = as_extension(e);
        auto ws = witnesses(full_window(e, 0, 3));
        for (const auto& x : ws)
            for (const auto& y : ws) {
                const auto* px = ext->placement(x.type());
                const auto* py = ext->placement(y.type());
                if (!px->arrow->after_anchor || py->arrow->after_anchor) continue;
                const auto& a = px->arrow->anchor;
                const auto& b = py->arrow->anchor;
                if (a != b && o.holds(Symbol::Arrow, b, a)) {
                    EXPECT_TRUE(e.holds(Symbol::Arrow, x, y));
                }
            }
    }
}

TEST(ExtendOrderedLocal, SingletonChainsMonotoneInBothRelations) {
    auto o = catalog_exact(ClassTag::ordered_local(), 1).front();
    auto e = extend_ordered_local(o);
    auto win = full_window(e, 1, 1);
    EXPECT_TRUE(validate_class(e, win, e.tag()).ok());
    for (const auto& x : witnesses(win)) {
        auto next = Term::witness(1, x.type(), x.index() + 1);
        EXPECT_TRUE(e.less(x, next));
        EXPECT_TRUE(e.holds(Symbol::Arrow, x, next));
    }
}

TEST(ExtendGraph, WitnessAdjacencyIsExactlyItsType) {
    auto u = atoms({"u", "v"});
    auto g = make_finite(ClassTag::graph(), u, {{Symbol::Adj, {{u[0], u[1]}}}});
    auto e = extend_graph(g);
    auto x = Term::witness(1, type({{K::Adj, u[0]}}), 0);
    ASSERT_TRUE(e.contains(x));
    EXPECT_TRUE(e.holds(Symbol::Adj, x, u[0]));
    EXPECT_FALSE(e.holds(Symbol::Adj, x, u[1]));
}

TEST(ExtendGraph, WitnessesAreNeverAdjacent) {
    for (const auto& tag : {ClassTag::graph(), ClassTag::kn_free(3), ClassTag::ordered_graph()})
        for (const auto& g : catalog(tag, 3)) {
            auto e = extend(g);
            auto ws = witnesses(full_window(e, 1, 2));
            for (const auto& x : ws)
                for (const auto& y : ws)
                    if (x != y) {
                        EXPECT_FALSE(e.holds(Symbol::Adj, x, y)) << x.key() << " " << y.key();
                    }
        }
}

TEST(ExtendGraph, TriangleFreePathGetsEndpointWitness) {
    auto u = atoms({"u", "v", "w"});
    auto p3 = make_finite(ClassTag::kn_free(3), u, {{Symbol::Adj, {{u[0], u[1]}, {u[1], u[2]}}}});
    auto tau = type({{K::Adj, u[0]}, {K::Adj, u[2]}});
    ASSERT_TRUE(is_admissible(tau, p3, p3.tag()));
    auto e = extend(p3);
    auto win = full_window(e, 1, 2);
    EXPECT_TRUE(e.contains(Term::witness(1, tau, 0)));
    EXPECT_TRUE(validate_class(e, win, e.tag()).ok());
}

TEST(ExtendLinext, WitnessBetweenTwoChainInBothRelations) {
    auto p = catalog_exact(ClassTag::linext(), 2);
    auto it = std::find_if(p.begin(), p.end(), [](const Structure& s) {
        return s.holds(Symbol::Lhd, at("a"), at("b"));
    });
    ASSERT_NE(it, p.end());
    auto e = extend_linext(*it);
    auto win = full_window(e, 0, 2);
    EXPECT_TRUE(realized(e, win, type({{K::Gt, at("a")}, {K::Lt, at("b")}, {K::PoGt, at("a")}, {K::PoLt, at("b")}})));
    EXPECT_TRUE(realized(e, win, type({{K::PoInc, at("a")}})));
    EXPECT_TRUE(oracle::member(oracle::snapshot(e, win)));
}

TEST(ExtendEquiv, ConvexWitnessInsideClassInterval) {
    for (const auto& r : catalog_exact(ClassTag::convex_equiv(), 2)) {
        if (!r.holds(Symbol::Adj, at("a"), at("b"))) continue;
        auto e = extend_equiv(r);
        auto win = full_window(e, 0, 2);
        EXPECT_TRUE(realized(e, win, type({{K::Gt, at("a")}, {K::Lt, at("b")}, {K::Adj, at("a")}})));
        EXPECT_TRUE(oracle::member(oracle::snapshot(e, win)));
    }
}

TEST(ExtendEquiv, ConvexFreshClassesAreDistinct) {
    for (const auto& r : catalog(ClassTag::convex_equiv(), 3)) {
        auto e = extend(r);
        auto ws = witnesses(full_window(e, 0, 2));
        for (const auto& x : ws) {
            bool fresh = std::none_of(r.universe().begin(), r.universe().end(),
                                      [&](const Term& b) { return e.holds(Symbol::Adj, x, b); });
            if (!fresh) continue;
            for (const auto& y : ws)
                if (y.type() != x.type()) {
                    EXPECT_FALSE(e.holds(Symbol::Adj, x, y)) << x.key() << " " << y.key();
                }
        }
    }
}

TEST(ExtendEquiv, BoundedFullClassCountHasNoFreshTypes) {
    for (const auto& r : catalog(ClassTag::bounded_equiv(2), 4)) {
        if (r.class_count() != 2u) continue;
        for (const auto& t : enumerate_types(r, r.universe(), 3)) {
            bool anchored = std::any_of(t.literals().begin(), t.literals().end(),
                                        [](const Literal& l) { return l.kind == K::Adj; });
            EXPECT_TRUE(anchored) << t.encoding();
        }
    }
}

// Windows of E(A) over tiny seeds satisfy the class axioms as checked by
// brute force, independently of validate_class.
TEST(Windows, BruteForceAxiomsOnSmallWindows) {
    for (const auto& tag : oracle::all_tags())
        for (const auto& s : seeds_upto(tag, 2)) {
            auto e = extend(s);
            auto win = full_window(e, 1, 2);
            EXPECT_TRUE(oracle::member(oracle::snapshot(e, win))) << tag.name() << " " << to_json(s).dump();
        }
}

TEST(Windows, ValidateAcrossClassesAtWidthOne) {
    for (const auto& tag : oracle::all_tags())
        for (const auto& s : seeds_upto(tag, 3)) {
            auto e = extend(s);
            auto v = validate_class(e, full_window(e, 1, 2), tag);
            EXPECT_TRUE(v.ok()) << tag.name() << " " << to_json(s).dump() << "\n" << v.summary();
        }
}

TEST(Closure, EmptyGeneratorSetGivesEmptyRelation) {
    auto s = closure_oracle(GeneratorSet{atoms({"a", "b"}), {}}, ClassTag::graph());
    EXPECT_FALSE(s.holds(Symbol::Adj, at("a"), at("b")));
}

TEST(Closure, LinearGeneratorsCloseTransitively) {
    auto u = atoms({"a", "x", "b"});
    auto s = closure_oracle(GeneratorSet{u, {{Symbol::Less, {{u[0], u[1]}, {u[1], u[2]}}}}}, ClassTag::linear());
    EXPECT_TRUE(s.less(u[0], u[2]));
    EXPECT_FALSE(s.less(u[2], u[0]));
}

TEST(Closure, CycleIsReported) {
    auto u = atoms({"a", "b"});
    EXPECT_THROW(closure_oracle(GeneratorSet{u, {{Symbol::Less, {{u[0], u[1]}, {u[1], u[0]}}}}}, ClassTag::linear()),
                 ClosureCycle);
}

TEST(Closure, ThreeCycleWindowMatchesComparator) {
    auto e = extend(cycle3());
    auto win = full_window(e, 0, 2);
    auto r = compare_to_oracle(e, win);
    EXPECT_TRUE(r.ok()) << r.first_mismatch;
    EXPECT_EQ(r.pairs, win.size() * (win.size() - 1));
}

TEST(Closure, AgreesWithComparatorsOnAllClasses) {
    for (const auto& tag : oracle::all_tags())
        for (const auto& s : seeds_upto(tag, 3)) {
            auto e = extend(s);
            auto r = compare_to_oracle(e, full_window(e, 0, 2));
            EXPECT_TRUE(r.ok()) << tag.name() << " " << r.first_mismatch;
        }
}
