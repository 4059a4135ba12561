// One line per acceptance criterion; exits non-zero if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "fraisse/amalgam.hpp"
#include "fraisse/bm_game.hpp"
#include "fraisse/dichotomy.hpp"
#include "fraisse/extension.hpp"
#include "fraisse/katetov.hpp"
#include "fraisse/limit.hpp"
#include "fraisse/mh.hpp"
#include "fraisse/wreath.hpp"

using namespace fraisse;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

// Records the first few failures and keeps counting.
struct Tally {
    Outcome out;
    int failures = 0;
    void fail(const std::string& why) {
        if (failures++ < 3) out.detail += (out.detail.empty() ? "" : "; ") + why;
        out.ok = false;
    }
    void require(bool cond, const std::string& why) {
        if (!cond) fail(why);
    }
};

std::vector<int> iota_vec(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i;
    return v;
}

FinStructure one_point(const OraclePtr& o) { return enumerate_members(*o, 1)[0]; }

// --- dichotomy table ---

std::vector<std::string> mh_keys() {
    // every subgroup of S_I for |I| <= 3
    return {"mh:1:",       "mh:2:",       "mh:2:1,0",     "mh:3:",
            "mh:3:1,0,2",  "mh:3:0,2,1",  "mh:3:2,1,0",   "mh:3:1,2,0",
            "mh:3:1,0,2|1,2,0"};
}

Outcome dichotomy_table() {
    Tally t;
    std::ostringstream summary;
    for (const std::string key : {"graphs", "linear-orders", "rational-metric:4:1"}) {
        auto o = make_oracle(key);
        auto rep = classify_splitting(o);
        bool ok = rep.verdict == SplitVerdict::Splits && rep.split && !rep.split->witnesses.empty();
        if (ok)
            for (const auto& w : rep.split->witnesses) ok = ok && verify_split_witness(w, *o);
        t.require(ok, key + " did not split with verified witnesses");
    }
    std::vector<std::string> blocked = {"k1", "k2", "rs-example"};
    for (const auto& k : mh_keys()) blocked.push_back(k);
    for (const auto& key : blocked) {
        auto o = make_oracle(key);
        auto rep = classify_splitting(o);
        bool ok = rep.verdict == SplitVerdict::Blocked && rep.control_stage && rep.uncontrolled.empty() &&
                  !rep.certificates.empty() && rep.certificates.size() == rep.control_points.size();
        for (const auto& c : rep.certificates) ok = ok && verify_control(c);
        for (const auto& b : rep.blocked) ok = ok && !witness_for(*o, b.C, b.D, b.i);
        t.require(ok, key + " not blocked with certificates (" + rep.note + ")");
    }
    t.out.detail = t.out.ok ? "3 split with verified witnesses, " + std::to_string(blocked.size()) +
                                  " blocked with verified control certificates"
                            : t.out.detail;
    return t.out;
}

// --- axioms ---

Outcome axioms() {
    Tally t;
    struct Row {
        std::string key;
        int bound;
    };
    const std::vector<Row> rows = {{"k1", 4}, {"k2", 4}, {"graphs", 4}, {"linear-orders", 4},
                                   {"rational-metric:2:2", 4}, {"rational-metric:4:1", 3}};
    int checked = 0;
    for (const auto& r : rows) {
        auto o = make_oracle(r.key);
        for (auto p : {Property::HP, Property::JEP, Property::AP, Property::SAP}) {
            auto rep = check_property(*o, p, r.bound);
            t.require(rep.verdict == Verdict::Holds, r.key + " " + to_string(p) + " " + to_string(rep.verdict));
            ++checked;
        }
    }
    auto um = make_oracle("unary-marked");
    auto sap = check_property(*um, Property::SAP, 2);
    const bool cex = sap.verdict == Verdict::Fails && sap.counterexample && sap.counterexample->A.size() == 0 &&
                     sap.counterexample->B.size() == 1 && sap.counterexample->C.size() == 1 &&
                     sap.counterexample->B.holds1(0, 0) && sap.counterexample->C.holds1(0, 0);
    t.require(cex, "unary-marked SAP at bound 2 did not fail with the empty-base counterexample");
    if (t.out.ok)
        t.out.detail = std::to_string(checked) + " property checks hold; unary-marked SAP fails over A = {}";
    return t.out;
}

// --- limit closure and mutations ---

// Realizations of p outside its anchor, counted directly.
std::vector<int> realizations(const FinStructure& s, const RqfType& p) {
    std::vector<int> out;
    for (int z = 0; z < s.size(); ++z)
        if (std::find(p.anchor.begin(), p.anchor.end(), z) == p.anchor.end() && realizes(s, p, z)) out.push_back(z);
    return out;
}

LimitApprox delete_point(const LimitApprox& a, int z) {
    LimitApprox out = a;
    for (auto& st : out.stages) {
        if (z >= st.size()) continue;
        std::vector<int> keep;
        for (int x = 0; x < st.size(); ++x)
            if (x != z) keep.push_back(x);
        st = restrict_ordered(st, keep);
    }
    return out;
}

Outcome limit_closure() {
    Tally t;
    auto o = make_oracle("graphs");
    LimitApprox a = build_limit_approx(o, 1, 2, 2, one_point(o));
    AbsorbingPartition part = build_absorbing_partition(a);
    auto closed = verify_extension_property(a, 1);
    t.require(closed.ok, "extension property: " + closed.reason);
    auto absorbing = check_absorbing_partition(a, part);
    t.require(absorbing.ok, "partition: " + absorbing.reason);

    // A mutation removes a required realization: a new point realizing a type over an
    // anchor of M_t exactly m times, or the only realizer on one side of the partition.
    struct Deletion {
        int z;
    };
    std::vector<Deletion> deletions;
    for (int s = 0; s < a.T(); ++s)
        for (const auto& X : anchors_up_to(a.stages[s].size(), 1))
            for (const auto& p : enumerate_rqf_types(a.stages[s], X, *o)) {
                auto r = realizations(a.stages[s + 1], p);
                if (static_cast<int>(r.size()) != a.m) continue;
                for (int z : r)
                    if (z >= a.stages[s].size()) deletions.push_back({z});
            }
    std::vector<int> movable;
    const FinStructure& prev = a.stages[a.T() - 1];
    for (const auto& X : anchors_up_to(prev.size(), part.level))
        for (const auto& p : enumerate_rqf_types(prev, X, *o)) {
            int inA = 0, out = 0, lastA = -1, lastOut = -1;
            for (int z : realizations(a.top(), p)) {
                if (part.in_A[z]) ++inA, lastA = z;
                else ++out, lastOut = z;
            }
            if (inA == 1) movable.push_back(lastA);
            if (out == 1) movable.push_back(lastOut);
        }
    t.require(!deletions.empty() && !movable.empty(), "no tight realizations to mutate");
    if (!t.out.ok) return t.out;

    int detected = 0;
    for (int i = 0; i < 50; ++i) {
        std::mt19937_64 rng(1000 + i);
        if (i % 2 == 0) {
            const int z = deletions[rng() % deletions.size()].z;
            if (!verify_extension_property(delete_point(a, z), 1).ok) ++detected;
            else t.fail("deleting point " + std::to_string(z) + " went unnoticed");
        } else {
            const int z = movable[rng() % movable.size()];
            AbsorbingPartition moved = part;
            moved.in_A[z] = !moved.in_A[z];
            if (!check_absorbing_partition(a, moved).ok) ++detected;
            else t.fail("moving point " + std::to_string(z) + " across went unnoticed");
        }
    }
    if (t.out.ok)
        t.out.detail = "stages " + std::to_string(a.stages[0].size()) + "/" + std::to_string(a.stages[1].size()) + "/" +
                       std::to_string(a.top().size()) + " closed, partition absorbing, " + std::to_string(detected) +
                       "/50 mutations detected";
    return t.out;
}

// --- games and extensions ---

// Directly: does some y make h ∪ {c -> y} ∪ g a partial isomorphism of the graph s?
bool some_compatible_image(const FinStructure& s, const PartialMap& h, const PartialMap& g, int c) {
    for (int y = 0; y < s.size(); ++y) {
        PartialMap e = h;
        if (e.in_range(y)) continue;
        e.set(c, y);
        auto m = e.merge(g);
        if (!m || !m->is_injective()) continue;
        bool good = true;
        for (int a : m->domain())
            for (int b : m->domain())
                if (s.holds2(0, a, b) != s.holds2(0, m->at(a), m->at(b))) good = false;
        if (good) return true;
    }
    return false;
}

Outcome non_extendability() {
    Tally t;
    auto o = make_oracle("graphs");
    LimitApprox a = build_limit_approx(o, 1, 3, 2, one_point(o));
    Bundle b{a, build_absorbing_partition(a)};
    auto setup = new_game(b, FinStructure(o->signature(), 1));
    std::vector<std::string> policies = {"minimal-legal", "adversarial-toward-g0"};
    for (int seed = 1; seed <= 18; ++seed) policies.push_back("random:" + std::to_string(seed));
    int rounds_checked = 0;
    for (const auto& p : policies) {
        auto st = run_auto_game(setup, 5, parse_policy(p));
        t.require(!st.aborted && st.rounds.size() == 5, p + " stopped early: " + st.abort_reason);
        auto rep = check_exclusion(st);
        t.require(rep.ok, p + " replay failed at round " + std::to_string(rep.failed_round) + ": " + rep.reason);
        t.require(final_position_excludes_all(st), p + " final position leaves an excluded g reachable");
        for (int k : st.excluded)
            t.require(!some_compatible_image(setup->stage(), st.current(), setup->g_list[k], setup->c_star[0]),
                      p + " g_" + std::to_string(k) + " still compatible");
        rounds_checked += static_cast<int>(st.rounds.size());
    }
    if (t.out.ok)
        t.out.detail = std::to_string(policies.size()) + " games on a " + std::to_string(a.top().size()) +
                       "-point stage, " + std::to_string(rounds_checked) + " rounds replayed, every final position excludes";
    return t.out;
}

bool automorphism_bruteforce(const FinStructure& s, const PartialMap& f) {
    if (static_cast<int>(f.size()) != s.size() || !f.is_injective()) return false;
    for (int a = 0; a < s.size(); ++a)
        for (int b = 0; b < s.size(); ++b)
            if (s.holds2(0, a, b) != s.holds2(0, f.at(a), f.at(b))) return false;
    return true;
}

PartialMap random_partial_iso(std::mt19937_64& rng, const FinStructure& s, const std::vector<int>& A, int size) {
    for (;;) {
        std::vector<int> dom = A, ran = A;
        std::shuffle(dom.begin(), dom.end(), rng);
        PartialMap f;
        for (int x : dom) {
            if (static_cast<int>(f.size()) == size) break;
            std::shuffle(ran.begin(), ran.end(), rng);
            for (int y : ran)
                if (extends_consistently(s, s, f, x, y)) {
                    f.set(x, y);
                    break;
                }
        }
        if (static_cast<int>(f.size()) == size) return f;
    }
}

Outcome extendability() {
    Tally t;
    Bundle b = k2_clique_bundle(3, 4);
    const FinStructure& s = b.approx.top();
    auto eq = equivalence_classes(s, *b.approx.oracle, iota_vec(s.size()), 2, 3);
    t.require(eq.classes.size() == 3, "expected the three cliques as classes");
    const auto& P = b.partition;
    t.require(P.A().size() * 2 == static_cast<std::size_t>(s.size()), "partition not balanced");
    std::mt19937_64 rng(20261014);
    int extended = 0;
    for (int trial = 0; trial < 50 && t.out.ok; ++trial) {
        PartialMap g = random_partial_iso(rng, s, P.A(), 1 + static_cast<int>(rng() % 4));
        auto r = extend_partial_isomorphism(s, *b.approx.oracle, P, P, g, eq.classes);
        const bool ok = r.ok && r.total.extends(g) && automorphism_bruteforce(s, r.total);
        t.require(ok, "trial " + std::to_string(trial) + ": " + r.failure);
        extended += ok;
    }
    if (t.out.ok) t.out.detail = std::to_string(extended) + "/50 partial isomorphisms of A extend to automorphisms";
    return t.out;
}

// --- wreath orders ---

std::uint64_t factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

Outcome wreath_orders() {
    Tally t;
    Bundle b = k2_clique_bundle(3, 4);
    const FinStructure& s = b.approx.top();
    const std::uint64_t k2_expected = factorial(4) * factorial(4) * factorial(4) * factorial(3);
    AutGroup k2 = automorphism_group(s);
    t.require(k2.order == k2_expected, "K2 order " + std::to_string(k2.order));
    auto eq = equivalence_classes(s, *b.approx.oracle, iota_vec(s.size()), 2, 3);
    auto rk2 = verify_wreath_factorization(s, eq.classes);
    t.require(rk2.passed(), "K2 factorization: " + rk2.message);

    MhBuild mh = build_MH(WreathSpec{2, {{1, 0}}, {3, 3}});
    const std::uint64_t mh_expected = factorial(3) * factorial(3) * 2;
    AutGroup gm = automorphism_group(mh.structure);
    t.require(gm.order == mh_expected, "MH order " + std::to_string(gm.order));
    auto rmh = verify_wreath_factorization(mh.structure, mh.blocks, std::vector<Perm>{{1, 0}});
    t.require(rmh.passed(), "MH factorization: " + rmh.message);

    auto g = make_oracle("graphs");
    auto top = build_limit_approx(g, 1, 2, 1, one_point(g)).top();
    FinStructure gs = restrict_ordered(top, iota_vec(kAutomorphismCap));
    auto rg = verify_wreath_factorization(gs, orbits(automorphism_group(gs).generators, gs.size()));
    t.require(!rg.kernel_full && rg.missing_transposition, "graphs stage passed kernel fullness");
    if (t.out.ok)
        t.out.detail = "K2 3x4: " + std::to_string(k2.order) + ", MH(2, S2, 3): " + std::to_string(gm.order) +
                       ", graphs stage fails kernel fullness (" + rg.message + ")";
    return t.out;
}

// --- Katětov suite ---

bool katetov_oracle(const MetricSpace& X, const std::vector<int>& pts, const std::vector<Rational>& vals) {
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts.size(); ++j) {
            const Rational d = X.d[pts[i]][pts[j]];
            if (vals[i] - vals[j] > d || vals[i] + vals[j] < d) return false;
        }
    return true;
}

MetricSpace random_metric(std::mt19937_64& rng, int n, int den) {
    std::uniform_int_distribution<int> q(1, 3 * den);
    MetricSpace X;
    X.d.assign(n, std::vector<Rational>(n, Rational(0)));
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) X.d[a][b] = X.d[b][a] = Rational(q(rng), den);
    for (int k = 0; k < n; ++k)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) X.d[a][b] = std::min(X.d[a][b], X.d[a][k] + X.d[k][b]);
    return X;
}

Outcome katetov_suite() {
    Tally t;
    std::mt19937_64 rng(7);
    int pairs = 0, extensions = 0;
    for (int it = 0; it < 1000; ++it) {
        const int den = 1 + static_cast<int>(rng() % 8);
        const int n = 2 + static_cast<int>(rng() % 4);
        MetricSpace X = random_metric(rng, n, den);
        const int c = static_cast<int>(rng() % n);
        std::vector<int> others;
        Rational rho(-1);
        for (int a = 0; a < n; ++a)
            if (a != c) {
                others.push_back(a);
                if (rho < Rational(0) || X.d[c][a] < rho) rho = X.d[c][a];
            }
        const Rational d_star = rho * Rational(1 + static_cast<int>(rng() % 4), 4);
        const Rational eps = d_star * Rational(static_cast<int>(rng() % 4), 4);
        auto sp = split_pair(X, c, others, d_star, eps);
        bool ok = sp.verified && katetov_oracle(X, sp.g1.support, sp.g1.values) &&
                  katetov_oracle(X, sp.g2.support, sp.g2.values) && sp.g1.at(c) - sp.g2.at(c) > eps;
        for (int a : others) ok = ok && sp.g1.at(a) == sp.g2.at(a);
        t.require(ok, "split pair " + std::to_string(it));
        pairs += ok;

        // a perturbed distance map, extended to the whole space
        const int x = static_cast<int>(rng() % n);
        std::vector<int> Y;
        for (int a = 0; a < n; ++a)
            if (rng() % 2) Y.push_back(a);
        if (Y.empty()) Y.push_back(static_cast<int>(rng() % n));
        KatetovMap g = distance_map(X, x, Y);
        for (auto& v : g.values) v += Rational(static_cast<int>(rng() % 3), den);
        const bool kat = katetov_oracle(X, g.support, g.values);
        t.require(kat == is_katetov(X, g), "is_katetov disagrees on instance " + std::to_string(it));
        if (!kat) continue;
        auto e = katetov_extension(X, g, iota_vec(n));
        bool eok = katetov_oracle(X, e.support, e.values);
        for (int y : Y) eok = eok && e.at(y) == g.at(y);
        t.require(eok, "extension " + std::to_string(it));
        extensions += eok;
    }
    UrysohnBuild u = build_rational_urysohn(2, 2, Rational(2), false);
    const int prev = u.stages[u.stages.size() - 2].size();
    auto rep = check_approx_extension(u.stages.back(), Rational(0), 2, 2, Rational(2), prev);
    t.require(rep.ok && rep.maps_checked > 0, "Urysohn stage misses a Katetov map");
    if (t.out.ok)
        t.out.detail = std::to_string(pairs) + " split pairs, " + std::to_string(extensions) + " extensions; " +
                       std::to_string(u.stages.back().size()) + "-point Urysohn stage realizes " +
                       std::to_string(rep.maps_checked) + " maps exactly";
    return t.out;
}

// --- type tree ---

Outcome type_tree() {
    Tally t;
    auto g = make_oracle("graphs");
    auto approx = build_limit_approx(g, 3, 2, 1, one_point(g));
    auto tree = type_splitting_tree(approx, FinStructure(g->signature(), 1), 3);
    std::string why;
    t.require(tree.reached == 3, "tree stopped at depth " + std::to_string(tree.reached) + ": " + tree.note);
    t.require(verify_type_tree(approx, tree, &why), "tree invalid: " + why);
    std::set<std::string> types;
    for (int v : tree.leaves) {
        auto order = tree.F;
        order.push_back(tree.nodes[v].copy[0]);
        types.insert(restrict_ordered(approx.top(), order).key());
    }
    t.require(tree.leaves.size() == 8 && types.size() == 8,
              std::to_string(tree.leaves.size()) + " leaves with " + std::to_string(types.size()) + " types");
    if (t.out.ok)
        t.out.detail = "8 leaves, 8 distinct types over |F| = " + std::to_string(tree.F.size());
    return t.out;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        double limit_s;  // negative: no limit
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {"dichotomy table", 120, dichotomy_table}, {"axioms", 60, axioms},
        {"limit closure", -1, limit_closure},      {"non-extendability", 120, non_extendability},
        {"extendability", 60, extendability},      {"wreath orders", 60, wreath_orders},
        {"katetov suite", 60, katetov_suite},      {"type tree", -1, type_tree},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.limit_s >= 0 && secs > c.limit_s) {
            o.ok = false;
            o.detail += " [over the " + std::to_string(static_cast<int>(c.limit_s)) + " s limit]";
        }
        failed += !o.ok;
        std::printf("%s  %-18s %7.1f s  %s\n", o.ok ? "PASS" : "FAIL", c.name, secs, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
