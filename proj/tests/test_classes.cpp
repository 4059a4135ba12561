#include "doctest.h"
#include "fraisse/amalgam.hpp"
#include "fraisse/metric_oracle.hpp"
#include "fraisse/mh.hpp"
#include "helpers.hpp"

using namespace fraisse;
using namespace testing_helpers;

TEST_CASE("registry knows every built-in key") {
    for (const auto& k : builtin_oracle_names()) CHECK(make_oracle(k)->name() == k);
    CHECK(make_oracle("mh:2:1,0")->name() == "mh:2:1,0");
    CHECK_THROWS_AS(make_oracle("nope"), InputError);
}

TEST_CASE("membership basics") {
    auto k2 = make_oracle("k2");
    CHECK(k2->member(clique_union({2, 3})));
    CHECK_FALSE(k2->member(graph(3, {{0, 1}, {1, 2}})));
    auto lo = make_oracle("linear-orders");
    CHECK(lo->member(order({2, 0, 1})));
    FinStructure cyc(order_sig(), 3);
    cyc.set(0, {0, 1});
    cyc.set(0, {1, 2});
    cyc.set(0, {2, 0});
    CHECK_FALSE(lo->member(cyc));
    auto um = make_oracle("unary-marked");
    FinStructure two(um->signature(), 2);
    two.set(0, {0});
    CHECK(um->member(two));
    two.set(0, {1});
    CHECK_FALSE(um->member(two));
}

TEST_CASE("metric membership checks the triangle inequality exactly") {
    MetricClass m(4, Rational(4));
    CHECK(m.values().size() == 24);
    auto tri = [&](Rational a, Rational b, Rational c) {
        return m.from_matrix({{0, a, b}, {a, 0, c}, {b, c, 0}});
    };
    CHECK(m.member(tri(Rational(1, 3), Rational(1, 4), Rational(7, 12) - Rational(1, 12))));
    CHECK(m.member(tri(Rational(2), Rational(1), Rational(3))));
    CHECK_FALSE(m.member(tri(Rational(1, 4), Rational(1, 3), Rational(2))));
    CHECK_THROWS_AS(tri(Rational(1, 5), Rational(1), Rational(1)), InputError);
}

TEST_CASE("membership is isomorphism invariant") {
    std::mt19937_64 rng(5);
    for (const std::string key : {"k2", "graphs", "linear-orders", "rs-example", "mh:2:1,0"}) {
        auto o = make_oracle(key);
        for (int n = 0; n <= 4; ++n)
            for (const auto& m : enumerate_members(*o, n)) {
                std::vector<int> perm(n);
                std::iota(perm.begin(), perm.end(), 0);
                std::shuffle(perm.begin(), perm.end(), rng);
                CHECK(o->member(permuted(m, perm)));
            }
    }
}

TEST_CASE("member counts up to isomorphism") {
    // graph counts 1,1,2,4,11; orders 1 each; cliques = partitions of n
    auto g = make_oracle("graphs");
    CHECK(enumerate_members(*g, 3).size() == 4);
    CHECK(enumerate_members(*g, 4).size() == 11);
    CHECK(enumerate_members(*make_oracle("linear-orders"), 4).size() == 1);
    CHECK(enumerate_members(*make_oracle("k2"), 4).size() == 5);
    CHECK(enumerate_members(*make_oracle("k1"), 4).size() == 1);
}

TEST_CASE("SAP fails for the unary-marked class with empty base") {
    auto um = make_oracle("unary-marked");
    PropertyReport r = check_property(*um, Property::SAP, 2);
    REQUIRE(r.verdict == Verdict::Fails);
    REQUIRE(r.counterexample);
    CHECK(r.counterexample->A.size() == 0);
    CHECK(r.counterexample->B.size() == 1);
    CHECK(r.counterexample->C.size() == 1);
    CHECK(r.counterexample->B.holds1(0, 0));
    CHECK(r.counterexample->C.holds1(0, 0));
    CHECK(check_property(*um, Property::AP, 2).verdict == Verdict::Holds);
}

TEST_CASE("axioms hold for the small classes") {
    for (const std::string key : {"k1", "k2", "graphs", "linear-orders"})
        for (auto p : {Property::HP, Property::JEP, Property::AP, Property::SAP}) {
            INFO(key << " " << to_string(p));
            CHECK(check_property(*make_oracle(key), p, 3).verdict == Verdict::Holds);
        }
}

TEST_CASE("free amalgam of graphs over a shared vertex") {
    auto g = make_oracle("graphs");
    AmalgamationProblem pr{graph(1, {}), graph(2, {{0, 1}}), graph(2, {{0, 1}}),
                           PartialMap({{0, 0}}), PartialMap({{0, 0}}), true};
    auto r = amalgamate(pr, *g);
    REQUIRE(r.amalgam);
    const auto& d = r.amalgam->D;
    CHECK(d.size() == 3);
    // no cross edge between the two new points
    CHECK_FALSE(d.holds2(0, 1, 2));
    CHECK(g->member(d));
    CHECK(r.amalgam->i.compose(pr.f) == r.amalgam->j.compose(pr.g));
}

TEST_CASE("two singletons amalgamate strongly in K2 without an edge") {
    auto k2 = make_oracle("k2");
    AmalgamationProblem pr{graph(0, {}), graph(1, {}), graph(1, {}), {}, {}, true};
    auto r = amalgamate(pr, *k2);
    REQUIRE(r.amalgam);
    CHECK(r.amalgam->D.size() == 2);
    CHECK(r.amalgam->D.tuple_count() == 0);
}

TEST_CASE("orders over a shared point: the amalgam commutes") {
    auto lo = make_oracle("linear-orders");
    // B: a < b, C: c < a with a shared
    FinStructure B = order({0, 1}), C = order({1, 0});
    AmalgamationProblem pr{order({0}), B, C, PartialMap({{0, 0}}), PartialMap({{0, 0}}), true};
    auto r = amalgamate(pr, *lo);
    REQUIRE(r.amalgam);
    CHECK(r.amalgam->D.size() == 3);
    CHECK(lo->member(r.amalgam->D));
    CHECK(r.amalgam->i.compose(pr.f) == r.amalgam->j.compose(pr.g));
    CHECK(is_embedding(C, r.amalgam->D, r.amalgam->j));
    // only one interleaving is possible: c < a < b
    int c = r.amalgam->j.at(1);
    CHECK(r.amalgam->D.holds2(0, c, 0));
    CHECK(r.amalgam->D.holds2(0, c, 1));
}

TEST_CASE("strong amalgams never identify points") {
    std::mt19937_64 rng(9);
    auto g = make_oracle("graphs");
    auto members = enumerate_members(*g, 3);
    for (int it = 0; it < 30; ++it) {
        const auto& B = members[rng() % members.size()];
        const auto& C = members[rng() % members.size()];
        AmalgamationProblem pr{graph(1, {}), B, C, PartialMap({{0, 0}}), PartialMap({{0, 0}}), true};
        auto r = amalgamate(pr, *g);
        REQUIRE(r.amalgam);
        auto ri = r.amalgam->i.range();
        auto rj = r.amalgam->j.range();
        std::vector<int> common;
        std::set_intersection(ri.begin(), ri.end(), rj.begin(), rj.end(), std::back_inserter(common));
        CHECK(common == std::vector<int>{0});
    }
}

TEST_CASE("type transport renames anchors") {
    auto g = make_oracle("graphs");
    FinStructure two = graph(2, {});
    auto types = enumerate_rqf_types(two, {0, 1}, *g);
    RqfType adj0;
    for (auto& t : types)
        if (t.extension.holds2(0, 2, 0) && !t.extension.holds2(0, 2, 1)) adj0 = t;
    auto id = transport_type(PartialMap::identity(2), adj0, two, *g);
    CHECK(id.type == adj0);
    auto sw = transport_type(PartialMap({{0, 1}, {1, 0}}), adj0, two, *g);
    CHECK(sw.anchor_consistent);
    CHECK(sw.type.anchor == std::vector<int>{1, 0});
    // position 0 of the new anchor is element 1: adjacent to element 1 only
    CHECK(realizes(graph(3, {{2, 1}}), sw.type, 2));
    CHECK_THROWS_AS(transport_type(PartialMap({{0, 0}}), adj0, two, *g), InputError);
}

TEST_CASE("transport through an order-reversing anchor map is not realized") {
    auto lo = make_oracle("linear-orders");
    FinStructure ab = order({0, 1});
    auto types = enumerate_rqf_types(ab, {0, 1}, *lo);
    RqfType between, above;
    for (auto& t : types) {
        if (t.extension.holds2(0, 0, 2) && t.extension.holds2(0, 2, 1)) between = t;
        if (t.extension.holds2(0, 1, 2) && t.extension.holds2(0, 0, 2)) above = t;
    }
    PartialMap swap({{0, 1}, {1, 0}});
    auto r = transport_type(swap, between, ab, *lo);
    CHECK_FALSE(r.anchor_consistent);
    CHECK_FALSE(r.realized);
    // above both survives any renaming
    auto u = transport_type(swap, above, ab, *lo);
    CHECK_FALSE(u.anchor_consistent);
    CHECK(u.realized);
}

TEST_CASE("type transport composes") {
    std::mt19937_64 rng(21);
    auto g = make_oracle("graphs");
    auto base3 = enumerate_members(*g, 3);
    for (int it = 0; it < 40; ++it) {
        const auto& s1 = base3[rng() % base3.size()];
        auto types = enumerate_rqf_types(s1, {0, 1, 2}, *g);
        const auto& p = types[rng() % types.size()];
        std::vector<int> a{0, 1, 2}, b{0, 1, 2};
        std::shuffle(a.begin(), a.end(), rng);
        std::shuffle(b.begin(), b.end(), rng);
        FinStructure s2 = permuted(s1, a), s3 = permuted(s2, b);
        PartialMap f = PartialMap::from_vector(a), h = PartialMap::from_vector(b);
        auto one = transport_type(h, transport_type(f, p, s2, *g).type, s3, *g);
        auto two = transport_type(h.compose(f), p, s3, *g);
        CHECK(one.type == two.type);
        CHECK(one.anchor_consistent);
    }
}

TEST_CASE("mh membership follows block indices") {
    auto mh = parse_mh_key("mh:2:1,0");
    auto built = build_MH(WreathSpec{2, {{1, 0}}, {3, 3}});
    CHECK(mh->member(built.structure));
    CHECK(built.structure.size() == 6);
    // one unary orbit, two binary orbits, plus S
    CHECK(mh->signature()->size() == 4);
    auto trivial = parse_mh_key("mh:1:");
    auto one = build_MH(WreathSpec{1, {}, {4}});
    CHECK(trivial->member(one.structure));
    CHECK(one.structure.tuples(trivial->same_block_symbol()).size() == 16);
}
