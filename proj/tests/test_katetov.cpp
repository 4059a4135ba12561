#include "doctest.h"

#include <random>

#include "fraisse/katetov.hpp"

using namespace fraisse;

namespace {

MetricSpace space_of(std::vector<std::vector<Rational>> d) {
    MetricSpace X;
    X.d = std::move(d);
    return X;
}

MetricSpace two_points(const Rational& r) {
    return space_of({{Rational(0), r}, {r, Rational(0)}});
}

// Independent pairwise check of both inequalities.
bool katetov_oracle(const MetricSpace& X, const std::vector<int>& pts, const std::vector<Rational>& vals) {
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts.size(); ++j) {
            const Rational d = X.d[pts[i]][pts[j]];
            if (vals[i] - vals[j] > d) return false;
            if (vals[i] + vals[j] < d) return false;
        }
    return true;
}

// Random metric with values q/den: random weights closed under shortest paths.
MetricSpace random_metric(std::mt19937_64& rng, int n, int den) {
    std::uniform_int_distribution<int> q(1, 3 * den);
    std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, Rational(0)));
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) d[a][b] = d[b][a] = Rational(q(rng), den);
    for (int k = 0; k < n; ++k)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) d[a][b] = std::min(d[a][b], d[a][k] + d[k][b]);
    return space_of(std::move(d));
}

std::vector<int> iota_vec(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i;
    return v;
}

}  // namespace

TEST_CASE("is_katetov on small examples") {
    MetricSpace X = two_points(Rational(2));
    CHECK(is_katetov(X, distance_map(X, 0, {0, 1})));
    CHECK(is_katetov(X, KatetovMap{{0, 1}, {Rational(1), Rational(1)}}));
    auto v = katetov_violation(X, KatetovMap{{0, 1}, {Rational(1), Rational(4)}});
    REQUIRE(v);
    CHECK(v->inequality == "difference");
    CHECK(((v->x == 1 && v->y == 0) || (v->x == 0 && v->y == 1)));
    CHECK_FALSE(is_katetov(X, KatetovMap{{0, 1}, {Rational(1, 2), Rational(1, 2)}}));
}

TEST_CASE("Katetov extension") {
    MetricSpace X = two_points(Rational(2));
    KatetovMap g{{0}, {Rational(1)}};
    auto e = katetov_extension(X, g, {0, 1});
    CHECK(e.at(0) == Rational(1));
    CHECK(e.at(1) == Rational(3));
    auto back = katetov_extension(X, e, {0});
    CHECK(back.values == g.values);
    CHECK_THROWS_AS(katetov_extension(X, KatetovMap{}, {0}), InputError);
}

TEST_CASE("split pair on two points") {
    MetricSpace X = two_points(Rational(1));
    auto sp = split_pair(X, 1, {0}, Rational(1), Rational(1, 2));
    CHECK(sp.verified);
    CHECK(sp.delta == Rational(3, 4));
    CHECK(sp.g1.at(0) == Rational(2));
    CHECK(sp.g1.at(1) == Rational(2));
    CHECK(sp.g2.at(0) == Rational(2));
    CHECK(sp.g2.at(1) == Rational(5, 4));
    CHECK_THROWS_AS(split_pair(X, 1, {}, Rational(1), Rational(1, 2)), InputError);
    CHECK_THROWS_AS(split_pair(X, 1, {0}, Rational(1), Rational(1)), InputError);
}

TEST_CASE("split pair with a cap is rechecked") {
    MetricSpace X = two_points(Rational(1, 2));
    auto sp = split_pair(X, 1, {0}, Rational(1, 2), Rational(1, 8), Rational(3, 4));
    CHECK(sp.capped);
    CHECK(sp.g1.at(1) == Rational(3, 4));
    // 3/4 - 5/16 falls below d_star, so the capped pair is flagged
    CHECK_FALSE(sp.verified);
    CHECK(sp.verified == (katetov_oracle(X, sp.g2.support, sp.g2.values) && sp.g2.at(1) >= Rational(1, 2)));
}

TEST_CASE("random split pairs and extensions") {
    std::mt19937_64 rng(20261014);
    int splits = 0;
    for (int it = 0; it < 1000; ++it) {
        const int den = 1 + static_cast<int>(rng() % 8);
        const int n = 2 + static_cast<int>(rng() % 4);
        MetricSpace X = random_metric(rng, n, den);
        const int c = static_cast<int>(rng() % n);
        std::vector<int> others;
        Rational rho;
        bool first = true;
        for (int a = 0; a < n; ++a)
            if (a != c) {
                others.push_back(a);
                if (first || X.d[c][a] < rho) rho = X.d[c][a];
                first = false;
            }
        const Rational d_star = rho * Rational(1 + static_cast<int>(rng() % 4), 4);
        const Rational eps = d_star * Rational(static_cast<int>(rng() % 4), 4);
        auto sp = split_pair(X, c, others, d_star, eps);
        REQUIRE(sp.verified);
        REQUIRE(katetov_oracle(X, sp.g1.support, sp.g1.values));
        REQUIRE(katetov_oracle(X, sp.g2.support, sp.g2.values));
        for (int a : others) REQUIRE(sp.g1.at(a) == sp.g2.at(a));
        Rational gap = sp.g1.at(c) - sp.g2.at(c);
        REQUIRE(gap > eps);
        REQUIRE(sp.g2.at(c) >= d_star);
        ++splits;

        // a distance map of one point restricted to a random support, then extended
        const int x = static_cast<int>(rng() % n);
        std::vector<int> Y;
        for (int a = 0; a < n; ++a)
            if (rng() % 2) Y.push_back(a);
        if (Y.empty()) Y.push_back(static_cast<int>(rng() % n));
        KatetovMap g = distance_map(X, x, Y);
        for (auto& v : g.values) v += Rational(static_cast<int>(rng() % 3), den);
        if (!katetov_oracle(X, g.support, g.values)) continue;
        auto e = katetov_extension(X, g, iota_vec(n));
        REQUIRE(katetov_oracle(X, e.support, e.values));
        for (int y : Y) REQUIRE(e.at(y) == g.at(y));
    }
    CHECK(splits == 1000);
}

TEST_CASE("Urysohn stage one realizes every distance from the seed") {
    auto b = build_rational_urysohn(1, 2, Rational(2), false);
    REQUIRE(b.stages.size() == 2);
    const auto& X = b.stages[1];
    CHECK_FALSE(metric_defect(X));
    for (auto r : {Rational(1, 2), Rational(1), Rational(3, 2), Rational(2)}) {
        int hits = 0;
        for (int z = 0; z < X.size(); ++z) hits += X.d[0][z] == r;
        CHECK(hits >= 1);
    }
}

TEST_CASE("sphere stages stay within diameter one") {
    auto b = build_rational_urysohn(2, 2, Rational(2), true);
    for (const auto& X : b.stages) {
        CHECK_FALSE(metric_defect(X));
        CHECK(X.diameter() <= Rational(1));
    }
    CHECK(b.stages.back().size() > 2);
}

TEST_CASE("Urysohn stages pass exact approximate extension") {
    auto b = build_rational_urysohn(2, 1, Rational(3), false);
    for (std::size_t t = 0; t + 1 < b.stages.size(); ++t) {
        const auto& X = b.stages[t + 1];
        const int prev = b.stages[t].size();
        auto rep = check_approx_extension(X, Rational(0), 2, 1, Rational(3), prev);
        CHECK(rep.ok);
        CHECK(rep.maps_checked > 0);
        // independent closure oracle on one-point supports
        for (int y = 0; y < prev; ++y)
            for (int q = 1; q <= 3; ++q) {
                bool found = false;
                for (int z = 0; z < X.size(); ++z) found = found || X.d[y][z] == Rational(q);
                CHECK(found);
            }
    }
}

TEST_CASE("approximate extension failures and vacuous passes") {
    MetricSpace one = space_of({{Rational(0)}});
    auto rep = check_approx_extension(one, Rational(0), 1, 1, Rational(1));
    CHECK_FALSE(rep.ok);
    REQUIRE(rep.failure);
    CHECK(rep.failure->best_error == Rational(1));
    CHECK(check_approx_extension(one, Rational(2), 1, 1, Rational(1)).ok);
}

TEST_CASE("carving a ball around one triangle vertex") {
    auto b = build_rational_urysohn(2, 1, Rational(3), false);
    const auto& X = b.stages.back();
    int x0 = -1, x1 = -1, x2 = -1;
    for (int a = 0; a < X.size() && x0 < 0; ++a)
        for (int c = 0; c < X.size() && x0 < 0; ++c)
            for (int e = 0; e < X.size(); ++e)
                if (X.d[a][c] == Rational(2) && X.d[c][e] == Rational(1) && X.d[a][e] == Rational(3)) {
                    x0 = a, x1 = c, x2 = e;
                    break;
                }
    REQUIRE(x0 >= 0);
    auto rep = carve_absorbing_subspace(X, {Deletion{x0, Rational(1, 2)}}, 2, 1, Rational(3),
                                        b.stages[b.stages.size() - 2].size());
    auto inF = [&](int z) { return std::find(rep.F.begin(), rep.F.end(), z) != rep.F.end(); };
    CHECK_FALSE(inF(x0));
    CHECK(inF(x1));
    CHECK(inF(x2));
    CHECK(static_cast<int>(rep.F.size()) == X.size() - 1);

    auto none = carve_absorbing_subspace(X, {}, 2, 1, Rational(3), b.stages[1].size());
    CHECK(static_cast<int>(none.F.size()) == X.size());
    auto plain = check_approx_extension(X, Rational(0), 2, 1, Rational(3), b.stages[1].size());
    CHECK(none.absorption.ok == plain.ok);

    auto all = carve_absorbing_subspace(X, {Deletion{0, Rational(10)}}, 2, 1, Rational(3));
    CHECK(all.empty);
    CHECK(all.F.empty());
}

TEST_CASE("canonical embedding is isometric") {
    auto b = build_rational_urysohn(1, 2, Rational(2), false);
    const auto& X = b.stages.back();
    auto all = iota_vec(X.size());
    for (int x = 0; x < X.size(); ++x) {
        CHECK(is_katetov(X, distance_map(X, x, all)));
        for (int y = 0; y < X.size(); ++y) CHECK(sup_distance(distance_map(X, x, all), distance_map(X, y, all)) == X.d[x][y]);
    }
}

namespace {

struct MetricBundle {
    UrysohnBuild build;
    AbsorbingPartition part;
    std::shared_ptr<const MetricGameSetup> setup;
};

const MetricBundle& metric_bundle() {
    static const MetricBundle mb = [] {
        MetricBundle out{build_rational_urysohn(2, 1, Rational(2), false, 2), {}, nullptr};
        out.part = build_absorbing_partition(out.build.approx);
        out.setup = new_metric_game(out.build.stages.back(), out.part, out.part,
                                    out.build.stages[out.build.stages.size() - 2].size());
        return out;
    }();
    return mb;
}

}  // namespace

TEST_CASE("metric game setup") {
    const auto& st = *metric_bundle().setup;
    REQUIRE(st.c_star >= 0);
    CHECK_FALSE(st.in_A[st.c_star]);
    CHECK(st.eps < st.d_star);
    for (int a = 0; a < st.space.size(); ++a)
        if (st.in_A[a]) CHECK(st.space.d[st.c_star][a] >= Rational(2) * st.d_star);
    int covered = 0;
    for (const auto& cell : st.cells)
        for (int x : cell) {
            CHECK_FALSE(st.in_B[x]);
            for (int y : cell) CHECK(st.space.d[x][y] < st.eps / Rational(2));
            ++covered;
        }
    int outside = 0;
    for (int b = 0; b < st.space.size(); ++b) outside += !st.in_B[b];
    CHECK(covered == outside);
}

TEST_CASE("metric first round carries a verified certificate") {
    const auto& mb = metric_bundle();
    const auto& st = *mb.setup;
    MetricGameState state;
    state.setup = mb.setup;
    int a = 0;
    while (!st.in_A[a]) ++a;
    MetricMove m{PartialMap{}, Rational(1)};
    m.f.set(a, a);
    const MetricRound* r = metric_splitter_reply(state, m);
    REQUIRE(r);
    REQUIRE(r->cell >= 0);
    CHECK(r->certificate.holds());
    CHECK(r->certificate.extensions_checked > 0);
    CHECK(r->reply.f.extends(m.f));
    CHECK(r->reply.f.contains(r->z));
    // independent recount of points within the reply radius at c*
    for (int y = 0; y < st.space.size(); ++y) {
        if (r->reply.f.in_range(y)) continue;
        bool close = true;
        for (auto [x, fx] : r->reply.f.pairs()) {
            Rational diff = st.space.d[y][fx] - st.space.d[st.c_star][x];
            if (diff < Rational(0)) diff = -diff;
            if (diff > r->reply.radius) close = false;
        }
        if (close)
            for (int w : st.cells[r->cell]) CHECK(w != y);
    }
}

TEST_CASE("metric moves that distort distances are rejected") {
    const auto& mb = metric_bundle();
    const auto& st = *mb.setup;
    MetricGameState state;
    state.setup = mb.setup;
    std::vector<int> A;
    for (int x = 0; x < st.space.size(); ++x)
        if (st.in_A[x]) A.push_back(x);
    REQUIRE(A.size() >= 3);
    // send a pair to a pair at a different distance
    int p = -1, q = -1;
    for (int u : A)
        for (int v : A)
            if (p < 0 && st.space.d[A[0]][A[1]] != st.space.d[u][v] && u != v) p = u, q = v;
    REQUIRE(p >= 0);
    MetricMove m{PartialMap{}, Rational(1)};
    m.f.set(A[0], p);
    m.f.set(A[1], q);
    try {
        metric_splitter_reply(state, m);
        FAIL("distortion accepted");
    } catch (const IllegalMove& e) {
        REQUIRE(e.violation);
        CHECK(e.violation->symbol == -2);
        CHECK(e.violation->tuple.size() == 2);
    }
    CHECK(state.rounds.empty());
    MetricMove wide{PartialMap{}, Rational(2)};
    CHECK_THROWS_AS(metric_splitter_reply(state, wide), IllegalMove);
}

TEST_CASE("metric reply radii shrink geometrically") {
    const auto& mb = metric_bundle();
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        auto state = run_metric_game(mb.setup, 5, seed, seed > 0);
        REQUIRE_FALSE(state.aborted);
        REQUIRE(state.rounds.size() == 5);
        Rational prev(1), bound(1);
        for (const auto& r : state.rounds) {
            CHECK(r.reply.radius <= prev);
            CHECK(r.reply.radius <= bound);
            CHECK(r.reply.radius <= mb.setup->eps / Rational(2));
            CHECK(r.certificate.holds());
            prev = r.reply.radius;
            bound /= Rational(2);
        }
    }
}
