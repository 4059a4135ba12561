#include "doctest.h"
#include "fraisse/io.hpp"
#include "helpers.hpp"

using namespace fraisse;
using namespace testing_helpers;

TEST_CASE("structure JSON has the interchange shape") {
    FinStructure p = graph(3, {{1, 2}, {0, 1}});
    Json j = structure_to_json(p);
    CHECK(j["n"] == 3);
    CHECK(j["signature"] == Json::parse(R"([{"name":"R","arity":2}])"));
    CHECK(j["interp"]["R"] == Json::parse("[[0,1],[1,0],[1,2],[2,1]]"));
    CHECK(structure_from_json(j) == p);
    CHECK(structure_from_json(j, graph_sig()).signature_ptr() == graph_sig());
}

TEST_CASE("malformed structures are input errors") {
    auto parse = [](const char* text) { return structure_from_json(Json::parse(text)); };
    CHECK_THROWS_AS(parse(R"({"signature":[{"name":"R","arity":2}],"n":2,"interp":{"R":[[0,2]]}})"), InputError);
    CHECK_THROWS_AS(parse(R"({"signature":[{"name":"R","arity":2}],"n":2,"interp":{"R":[[0]]}})"), InputError);
    CHECK_THROWS_AS(parse(R"({"signature":[{"name":"R","arity":2}],"n":2,"interp":{"Q":[]}})"), InputError);
    CHECK_THROWS_AS(parse(R"({"signature":[{"name":"R","arity":2}],"interp":{}})"), InputError);
    CHECK_THROWS_AS(parse(R"({"signature":[{"name":"R","arity":2}],"n":"two","interp":{}})"), InputError);
    CHECK_THROWS_AS(structure_from_json(structure_to_json(graph(2, {})), order_sig()), InputError);
}

TEST_CASE("rationals, maps and metric spaces") {
    CHECK(rational_to_json(Rational(3, 4)) == "3/4");
    CHECK(rational_to_json(Rational(2)) == "2");
    CHECK(rational_from_json(Json("6/8")) == Rational(3, 4));
    CHECK(rational_from_json(Json(5)) == Rational(5));
    CHECK_THROWS_AS(rational_from_json(Json("1/0")), InputError);
    CHECK_THROWS_AS(rational_from_json(Json("x")), InputError);

    PartialMap f{{0, 3}, {2, 1}};
    CHECK(map_to_json(f) == Json::parse("[[0,3],[2,1]]"));
    CHECK(map_from_json(map_to_json(f)) == f);
    CHECK_THROWS_AS(map_from_json(Json::parse("[[0,1],[0,2]]")), InputError);

    MetricSpace X;
    X.d = {{Rational(0), Rational(1, 2)}, {Rational(1, 2), Rational(0)}};
    X.bound = Rational(1);
    Json jx = metric_to_json(X);
    CHECK(jx["d"] == Json::parse(R"(["0","1/2","1/2","0"])"));
    auto back = metric_from_json(jx);
    CHECK(back.d == X.d);
    CHECK(back.bound == X.bound);
    CHECK_THROWS_AS(metric_from_json(Json::parse(R"({"n":2,"d":["0","1","2","0"]})")), InputError);
    CHECK_THROWS_AS(metric_from_json(Json::parse(R"({"n":2,"d":["0","1","1"]})")), InputError);
}

TEST_CASE("wreath spec JSON") {
    auto w = wreath_spec_from_json(Json::parse(R"({"I":2,"H_generators":[[1,0]],"block_sizes":[3,3]})"));
    CHECK(w.I == 2);
    CHECK(w.generators == std::vector<Perm>{{1, 0}});
    CHECK(wreath_spec_to_json(w)["block_sizes"] == Json::parse("[3,3]"));
    CHECK_THROWS_AS(wreath_spec_from_json(Json::parse(R"({"I":2,"H_generators":[[0,0]],"block_sizes":[3,3]})")),
                    InputError);
    CHECK_THROWS_AS(wreath_spec_from_json(Json::parse(R"({"I":2,"block_sizes":[3]})")), InputError);
}

TEST_CASE("bundle round trip") {
    auto o = make_oracle("graphs");
    auto a = build_limit_approx(o, 1, 2, 2, graph(1, {}));
    Bundle b{a, build_absorbing_partition(a)};
    Bundle back = bundle_from_json(bundle_to_json(b));
    REQUIRE(back.approx.stages.size() == a.stages.size());
    for (std::size_t t = 0; t < a.stages.size(); ++t) CHECK(back.approx.stages[t] == a.stages[t]);
    CHECK(back.approx.k == 1);
    CHECK(back.approx.m == 2);
    CHECK(back.partition.in_A == b.partition.in_A);
    CHECK(verify_extension_property(back.approx, 1).ok);
    Json broken = bundle_to_json(b);
    broken["partition"]["in_A"].erase(0);
    CHECK_THROWS_AS(bundle_from_json(broken), InputError);
}

TEST_CASE("dichotomy reports survive a round trip") {
    for (const char* key : {"k2", "graphs", "k1"}) {
        auto rep = classify_splitting(make_oracle(key));
        Json j = dichotomy_to_json(rep);
        auto back = dichotomy_from_json(j);
        CHECK(back.verdict == rep.verdict);
        CHECK(back.certificates.size() == rep.certificates.size());
        CHECK(dichotomy_to_json(back) == j);
        if (rep.split) {
            REQUIRE(back.split);
            std::string why;
            for (const auto& w : back.split->witnesses) CHECK_MESSAGE(verify_split_witness(w, *make_oracle(key), &why), why);
        }
        for (const auto& c : back.certificates) CHECK(verify_control(c));
    }
}

TEST_CASE("type tree round trip") {
    auto o = make_oracle("graphs");
    auto approx = build_limit_approx(o, 3, 2, 1, graph(1, {}));
    auto tree = type_splitting_tree(approx, graph(1, {}), 2);
    auto back = type_tree_from_json(type_tree_to_json(tree));
    CHECK(back.leaves == tree.leaves);
    CHECK(verify_type_tree(approx, back));
    Json bad = type_tree_to_json(tree);
    bad["nodes"][1]["parent"] = 5;
    CHECK_THROWS_AS(type_tree_from_json(bad), InputError);
}

TEST_CASE("game transcripts replay after a round trip") {
    auto o = make_oracle("graphs");
    auto a = build_limit_approx(o, 1, 3, 2, graph(1, {}));
    Bundle b{a, build_absorbing_partition(a)};
    auto setup = new_game(b, graph(1, {}));
    auto state = run_auto_game(setup, 3, parse_policy("random:3"));
    REQUIRE(state.rounds.size() == 3);
    Json j = transcript_to_json(state);
    auto back = transcript_from_json(Json::parse(j.dump()));
    auto rep = check_exclusion(back);
    CHECK_MESSAGE(rep.ok, rep.reason);
    CHECK(transcript_to_json(back) == j);

    Json tampered = j;
    auto& reply = tampered["rounds"][1]["reply"];
    reply.erase(reply.size() - 1);
    auto bad = check_exclusion(transcript_from_json(tampered));
    CHECK_FALSE(bad.ok);
    CHECK(bad.failed_round == 1);
}

TEST_CASE("metric transcripts replay after a round trip") {
    auto u = build_rational_urysohn(2, 1, Rational(2), false, 2);
    auto part = build_absorbing_partition(u.approx);
    auto setup = new_metric_game(u.stages.back(), part, part, u.stages[1].size());
    auto state = run_metric_game(setup, 4, 1, true);
    Json j = metric_transcript_to_json(state);
    auto back = metric_transcript_from_json(Json::parse(j.dump()));
    auto rep = check_metric_transcript(back);
    CHECK_MESSAGE(rep.ok, rep.reason);
    CHECK(metric_transcript_to_json(back) == j);

    Json tampered = j;
    tampered["rounds"][0]["reply"]["radius"] = "1";
    auto bad = check_metric_transcript(metric_transcript_from_json(tampered));
    CHECK_FALSE(bad.ok);
    CHECK(bad.failed_round == 0);
    Json moved = j;
    moved["setup"]["c_star"] = 0;
    CHECK_FALSE(check_metric_transcript(metric_transcript_from_json(moved)).ok);
}
