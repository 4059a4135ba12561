#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "fraisse/wreath.hpp"

using namespace fraisse;

namespace {

std::uint64_t brute_force_aut_count(const FinStructure& s) {
    Perm p(s.size());
    for (int i = 0; i < s.size(); ++i) p[i] = i;
    std::uint64_t count = 0;
    do count += is_automorphism(s, p);
    while (std::next_permutation(p.begin(), p.end()));
    return count;
}

FinStructure k2_stage(int cliques, int size) { return k2_clique_bundle(cliques, size).approx.top(); }

std::vector<std::vector<int>> k2_classes(const FinStructure& s) {
    // cliques are the connected pieces of the equivalence relation
    std::vector<std::vector<int>> out;
    std::vector<char> seen(s.size(), 0);
    for (int a = 0; a < s.size(); ++a) {
        if (seen[a]) continue;
        std::vector<int> cl{a};
        seen[a] = 1;
        for (int b = a + 1; b < s.size(); ++b)
            if (s.holds2(0, a, b)) cl.push_back(b), seen[b] = 1;
        out.push_back(cl);
    }
    return out;
}

FinStructure small_graph_stage() {
    auto g = make_oracle("graphs");
    // the 12-point prefix of M_2, the largest the automorphism search accepts
    auto top = build_limit_approx(g, 1, 2, 1, FinStructure(g->signature(), 1)).top();
    std::vector<int> prefix;
    for (int i = 0; i < kAutomorphismCap; ++i) prefix.push_back(i);
    return restrict_ordered(top, prefix);
}

}  // namespace

TEST_CASE("automorphism orders of standard structures") {
    auto graphs = make_oracle("graphs");
    for (int n = 0; n <= 6; ++n) {
        FinStructure edgeless(graphs->signature(), n);
        std::uint64_t fact = 1;
        for (int i = 2; i <= n; ++i) fact *= i;
        CHECK(automorphism_group(edgeless).order == fact);
    }
    auto orders = make_oracle("linear-orders");
    FinStructure chain(orders->signature(), 6);
    for (int a = 0; a < 6; ++a)
        for (int b = a + 1; b < 6; ++b) chain.set(0, {a, b});
    REQUIRE(orders->member(chain));
    CHECK(automorphism_group(chain).order == 1);
    CHECK_THROWS_AS(automorphism_group(FinStructure(graphs->signature(), 13)), InputError);
}

TEST_CASE("automorphism group of the clique stage") {
    FinStructure s = k2_stage(3, 4);
    REQUIRE(s.size() == 12);
    auto aut = automorphism_group(s);
    CHECK(aut.order == 82944);
    for (const auto& g : aut.generators) CHECK(is_automorphism(s, g));
}

TEST_CASE("stabilizer chain agrees with brute force on random graphs") {
    std::mt19937_64 rng(7);
    auto graphs = make_oracle("graphs");
    for (int it = 0; it < 30; ++it) {
        const int n = 2 + static_cast<int>(rng() % 6);
        FinStructure s(graphs->signature(), n);
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (rng() % 2) {
                    s.set(0, {a, b});
                    s.set(0, {b, a});
                }
        REQUIRE(graphs->member(s));
        CHECK(automorphism_group(s).order == brute_force_aut_count(s));
    }
}

TEST_CASE("wreath factorization of the clique stage") {
    FinStructure s = k2_stage(3, 4);
    auto classes = k2_classes(s);
    REQUIRE(classes.size() == 3);
    auto rep = verify_wreath_factorization(s, classes, std::vector<Perm>{{1, 0, 2}, {1, 2, 0}});
    CHECK(rep.passed());
    CHECK(rep.order == 82944);
    CHECK(rep.block_product == 13824);
    CHECK(rep.H_induced.size() == 6);
    CHECK(rep.h_matches == true);
    auto wrong = verify_wreath_factorization(s, classes, std::vector<Perm>{{1, 0, 2}});
    CHECK(wrong.h_matches == false);
    CHECK_FALSE(wrong.passed());
}

TEST_CASE("wreath factorization of a built M_H") {
    auto mh = build_MH(WreathSpec{2, {{1, 0}}, {3, 3}});
    REQUIRE(mh.structure.size() == 6);
    CHECK(brute_force_aut_count(mh.structure) == 72);
    auto rep = verify_wreath_factorization(mh.structure, mh.blocks, std::vector<Perm>{{1, 0}});
    CHECK(rep.passed());
    CHECK(rep.order == 72);

    auto rigid = build_MH(WreathSpec{2, {}, {3, 3}});
    auto rep2 = verify_wreath_factorization(rigid.structure, rigid.blocks, std::vector<Perm>{});
    CHECK(rep2.passed());
    CHECK(rep2.order == 36);
}

TEST_CASE("kernel fullness fails on a graph stage") {
    FinStructure s = small_graph_stage();
    REQUIRE(s.size() <= kAutomorphismCap);
    auto aut = automorphism_group(s);
    auto rep = verify_wreath_factorization(s, orbits(aut.generators, s.size()));
    CHECK(rep.classes_preserved);
    CHECK_FALSE(rep.kernel_full);
    REQUIRE(rep.missing_transposition);
    Perm t(s.size());
    for (int i = 0; i < s.size(); ++i) t[i] = i;
    std::swap(t[rep.missing_transposition->first], t[rep.missing_transposition->second]);
    CHECK_FALSE(is_automorphism(s, t));
}

TEST_CASE("classes an automorphism breaks are reported") {
    FinStructure s = k2_stage(2, 2);
    REQUIRE(s.size() == 4);
    // pair one point from each clique
    auto cl = k2_classes(s);
    std::vector<std::vector<int>> mixed{{cl[0][0], cl[1][0]}, {cl[0][1], cl[1][1]}};
    auto rep = verify_wreath_factorization(s, mixed);
    CHECK_FALSE(rep.classes_preserved);
    REQUIRE(rep.failing_automorphism);
    CHECK(is_automorphism(s, *rep.failing_automorphism));
    CHECK_THROWS_AS(verify_wreath_factorization(s, {{0, 1}}), InputError);
}

TEST_CASE("type splitting tree over graphs") {
    auto g = make_oracle("graphs");
    // closed over 3-point anchors so every pattern over the three separating points occurs
    auto approx = build_limit_approx(g, 3, 2, 1, FinStructure(g->signature(), 1));
    FinStructure vertex(g->signature(), 1);
    auto tree = type_splitting_tree(approx, vertex, 3);
    CHECK(tree.reached == 3);
    REQUIRE(tree.leaves.size() == 8);
    std::string why;
    CHECK_MESSAGE(verify_type_tree(approx, tree, &why), why);
    std::set<std::string> types;
    for (int v : tree.leaves) {
        auto order = tree.F;
        order.push_back(tree.nodes[v].copy[0]);
        types.insert(restrict_ordered(approx.top(), order).key());
    }
    CHECK(types.size() == 8);

    auto flat = type_splitting_tree(approx, vertex, 0);
    CHECK(flat.leaves.size() == 1);
    CHECK(flat.F.empty());
    CHECK(verify_type_tree(approx, flat));

    auto bad = tree;
    bad.F.pop_back();
    CHECK_FALSE(verify_type_tree(approx, bad));
}

TEST_CASE("type splitting tree refuses non-splitting classes") {
    auto b = k2_clique_bundle(3, 4);
    FinStructure point(b.approx.oracle->signature(), 1);
    CHECK_THROWS_AS(type_splitting_tree(b.approx, point, 2), InputError);
}
