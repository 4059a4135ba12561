#include <thread>

#include <httplib.h>

#include "doctest.h"
#include "fraisse/katetov.hpp"
#include "service.hpp"

using namespace fraisse;
using namespace fraisse::service;

namespace {

const Json& graphs_bundle() {
    static const Json j = [] {
        auto oracle = make_oracle("graphs");
        LimitApprox a = build_limit_approx(oracle, 1, 2, 2, FinStructure(oracle->signature(), 1));
        return bundle_to_json(Bundle{a, build_absorbing_partition(a)});
    }();
    return j;
}

const Json& metric_bundle() {
    static const Json j = [] {
        UrysohnBuild u = build_rational_urysohn(2, 1, Rational(2), false, 2);
        return bundle_to_json(Bundle{u.approx, build_absorbing_partition(u.approx)});
    }();
    return j;
}

Response post(GameService& s, const std::string& path, const Json& body) { return s.handle("POST", path, body.dump()); }

std::string create(GameService& s, Json req) {
    Response r = post(s, "/games", req);
    REQUIRE(r.status == 201);
    return r.body["id"].get<std::string>();
}

// Pairs in A x B that together with the current map break the edge relation.
std::optional<Json> distorting_move(const Bundle& b, const Json& state) {
    const FinStructure& M = b.approx.top();
    PartialMap cur = map_from_json(state["current"]["pairs"]);
    std::vector<int> A = state["A"], B = state["B"];
    for (int a1 : A)
        for (int a2 : A)
            for (int b1 : B)
                for (int b2 : B) {
                    if (a1 >= a2 || b1 == b2 || cur.contains(a1) || cur.contains(a2) || cur.in_range(b1) ||
                        cur.in_range(b2))
                        continue;
                    if (M.holds(0, {a1, a2}) == M.holds(0, {b1, b2})) continue;
                    PartialMap f = cur;
                    f.set(a1, b1);
                    f.set(a2, b2);
                    return map_to_json(f);
                }
    return std::nullopt;
}

}  // namespace

TEST_CASE("human game: create, move, transcript replays") {
    GameService svc;
    const std::string id = create(svc, {{"bundle", graphs_bundle()}});
    Response g0 = svc.handle("GET", "/games/" + id, "");
    REQUIRE(g0.status == 200);
    CHECK(g0.body["state"]["turn"] == 0);
    CHECK(g0.body["state"]["mode"] == "human");

    Response r1 = post(svc, "/games/" + id + "/move", {{"pairs", Json::array()}, {"turn", 0}});
    REQUIRE(r1.status == 200);
    CHECK(r1.body["state"]["turn"] == 1);
    CHECK(r1.body["round"]["certificate"]["compatible_found"] == 0);
    CHECK_FALSE(r1.body["round"]["reply"].empty());

    // extend the reply by one legal pair when there is one, else replay the reply
    Json pairs = r1.body["state"]["current"]["pairs"];
    Response r2 = post(svc, "/games/" + id + "/move", {{"pairs", pairs}, {"turn", 1}});
    REQUIRE(r2.status == 200);

    Response g = svc.handle("GET", "/games/" + id, "");
    GameState t = transcript_from_json(g.body["transcript"]);
    CHECK(t.rounds.size() == 2);
    ReplayReport rep = check_exclusion(t);
    CHECK(rep.ok);
    CHECK(final_position_excludes_all(t));
}

TEST_CASE("illegal moves answer 422 with the violation, stale turns 409") {
    GameService svc;
    const std::string id = create(svc, {{"bundle", graphs_bundle()}});
    Response r1 = post(svc, "/games/" + id + "/move", {{"pairs", Json::array()}});
    REQUIRE(r1.status == 200);
    Bundle b = bundle_from_json(graphs_bundle());
    auto bad = distorting_move(b, r1.body["state"]);
    REQUIRE(bad);
    Response r = post(svc, "/games/" + id + "/move", {{"pairs", *bad}});
    CHECK(r.status == 422);
    CHECK(r.body.contains("violation"));
    CHECK(r.body["state"]["turn"] == 1);  // nothing advanced

    // dropping the current reply is illegal too
    CHECK(post(svc, "/games/" + id + "/move", {{"pairs", Json::array()}}).status == 422);

    Response stale = post(svc, "/games/" + id + "/move", {{"pairs", r1.body["state"]["current"]["pairs"]}, {"turn", 0}});
    CHECK(stale.status == 409);
    CHECK(stale.body["state"]["turn"] == 1);
}

TEST_CASE("unknown ids, paths and malformed bodies") {
    GameService svc;
    CHECK(svc.handle("GET", "/games/77", "").status == 404);
    CHECK(post(svc, "/games/77/move", {{"pairs", Json::array()}}).status == 404);
    CHECK(svc.handle("DELETE", "/games/77", "").status == 404);
    CHECK(svc.handle("GET", "/elsewhere", "").status == 404);
    CHECK(svc.handle("POST", "/games", "{oops").status == 400);
    CHECK(post(svc, "/games", Json::object()).status == 400);  // no bundle, no default
    CHECK(post(svc, "/games", {{"bundle", graphs_bundle()}, {"mode", "sideways"}}).status == 400);
    CHECK(svc.handle("PUT", "/games", "").status == 405);

    const std::string id = create(svc, {{"bundle", graphs_bundle()}});
    CHECK(post(svc, "/games/" + id + "/move", {{"pairs", "nope"}}).status == 400);
    CHECK(svc.handle("DELETE", "/games/" + id, "").status == 200);
    CHECK(svc.handle("GET", "/games/" + id, "").status == 404);
}

TEST_CASE("auto sessions play the policy and stop after the round limit") {
    GameService svc(graphs_bundle());
    const std::string id = create(svc, {{"mode", "auto"}, {"policy", "random:5"}, {"rounds", 3}});
    for (int r = 0; r < 3; ++r) CHECK(post(svc, "/games/" + id + "/move", Json::object()).status == 200);
    Response done = post(svc, "/games/" + id + "/move", Json::object());
    CHECK(done.status == 409);
    GameState t = transcript_from_json(svc.get(id).body["transcript"]);
    CHECK(t.rounds.size() == 3);
    CHECK(check_exclusion(t).ok);
}

TEST_CASE("metric sessions check radii and distortion") {
    GameService svc;
    const std::string id = create(svc, {{"bundle", metric_bundle()}});
    CHECK(svc.get(id).body["state"]["kind"] == "metric-game");
    Response r1 = post(svc, "/games/" + id + "/move", {{"pairs", Json::array()}, {"radius", "1"}});
    REQUIRE(r1.status == 200);
    const Json cur = r1.body["state"]["current"];
    // a radius above the last one is refused
    Response up = post(svc, "/games/" + id + "/move", {{"pairs", cur["pairs"]}, {"radius", "2"}});
    CHECK(up.status == 422);
    Response ok = post(svc, "/games/" + id + "/move", {{"pairs", cur["pairs"]}, {"radius", cur["radius"]}});
    CHECK(ok.status == 200);
    MetricGameState t = metric_transcript_from_json(svc.get(id).body["transcript"]);
    CHECK(t.rounds.size() == 2);
    CHECK(check_metric_transcript(t).ok);
}

TEST_CASE("concurrent sessions do not interfere") {
    GameService svc(graphs_bundle());
    std::vector<std::string> ids;
    for (int i = 0; i < 2; ++i) ids.push_back(create(svc, {{"mode", "auto"}, {"policy", "random:" + std::to_string(i)}}));
    std::vector<int> failures(2, 0);
    std::vector<std::thread> threads;
    for (int i = 0; i < 2; ++i)
        threads.emplace_back([&, i] {
            for (int r = 0; r < 3; ++r)
                if (post(svc, "/games/" + ids[i] + "/move", {{"turn", r}}).status != 200) ++failures[i];
        });
    for (auto& t : threads) t.join();
    for (int i = 0; i < 2; ++i) {
        CHECK(failures[i] == 0);
        GameState t = transcript_from_json(svc.get(ids[i]).body["transcript"]);
        CHECK(t.rounds.size() == 3);
        CHECK(check_exclusion(t).ok);
    }
}

TEST_CASE("HTTP round trip on localhost") {
    GameService svc(graphs_bundle());
    HttpServer server(svc);
    const int port = server.bind("127.0.0.1", 0);
    REQUIRE(port > 0);
    std::thread th([&] { server.run(); });
    httplib::Client cli("127.0.0.1", port);
    auto created = cli.Post("/games", "{}", "application/json");
    REQUIRE(created);
    CHECK(created->status == 201);
    const std::string id = Json::parse(created->body)["id"];
    auto moved = cli.Post("/games/" + id + "/move", R"({"pairs": [], "turn": 0})", "application/json");
    REQUIRE(moved);
    CHECK(moved->status == 200);
    auto missing = cli.Get("/games/999");
    REQUIRE(missing);
    CHECK(missing->status == 404);
    server.stop();
    th.join();
}
