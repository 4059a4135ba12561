#include "service.hpp"

#include <random>

#include <httplib.h>

namespace fraisse::service {

struct GameService::Session {
    std::mutex mu;
    std::string id;
    bool metric = false;
    bool auto_mode = false;
    int max_rounds = -1;  // negative: unlimited
    Policy policy;
    std::mt19937_64 rng;
    GameState game;
    MetricGameState mgame;

    int turn() const { return static_cast<int>(metric ? mgame.rounds.size() : game.rounds.size()); }
    bool aborted() const { return metric ? mgame.aborted : game.aborted; }

    Json state() const {
        Json j = {{"id", id}, {"kind", metric ? "metric-game" : "game"}, {"mode", auto_mode ? "auto" : "human"},
                  {"turn", turn()}, {"max_rounds", max_rounds}, {"aborted", aborted()}};
        std::vector<int> A, B;
        if (metric) {
            const auto& st = *mgame.setup;
            for (int x = 0; x < st.space.size(); ++x) {
                if (st.in_A[x]) A.push_back(x);
                if (st.in_B[x]) B.push_back(x);
            }
            MetricMove cur = mgame.current();
            j["current"] = {{"pairs", map_to_json(cur.f)}, {"radius", rational_to_json(cur.radius)}};
            j["excluded"] = mgame.excluded;
            j["abort_reason"] = mgame.abort_reason;
            j["c_star"] = st.c_star;
            j["size"] = st.space.size();
        } else {
            const auto& st = *game.setup;
            for (int x = 0; x < st.stage().size(); ++x) {
                if (st.partA().in_A[x]) A.push_back(x);
                if (st.partB.in_A[x]) B.push_back(x);
            }
            j["current"] = {{"pairs", map_to_json(game.current())}};
            j["excluded"] = game.excluded;
            j["abort_reason"] = game.abort_reason;
            j["c_star"] = st.c_star;
            j["g_list_size"] = st.g_list.size();
            j["size"] = st.stage().size();
        }
        j["A"] = A;
        j["B"] = B;
        return j;
    }

    Json transcript() const { return metric ? metric_transcript_to_json(mgame) : transcript_to_json(game); }
};

namespace {

Response error(int status, const std::string& message) { return {status, {{"error", message}}}; }

}  // namespace

GameService::GameService(std::optional<Json> default_bundle) : default_bundle_(std::move(default_bundle)) {}

std::shared_ptr<GameService::Session> GameService::find(const std::string& id) {
    std::lock_guard lock(mu_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
}

Response GameService::create(const Json& req) {
    Json bj = req.contains("bundle") ? req["bundle"] : default_bundle_ ? *default_bundle_ : Json();
    if (bj.is_null()) return error(400, "no bundle given and the server has no default bundle");
    if (bj.contains("bundle")) bj = bj["bundle"];
    Bundle b = bundle_from_json(bj);
    auto s = std::make_shared<Session>();
    const std::string mode = req.value("mode", "human");
    if (mode != "human" && mode != "auto") return error(400, "mode must be human or auto");
    s->auto_mode = mode == "auto";
    s->policy = parse_policy(req.value("policy", "minimal-legal"));
    s->rng.seed(s->policy.seed);
    s->max_rounds = req.value("rounds", -1);
    if (const auto* metric = dynamic_cast<const MetricClass*>(b.approx.oracle.get())) {
        if (s->policy.kind == PolicyKind::Adversarial) return error(400, "the metric game has no adversarial policy");
        s->metric = true;
        const int prefix = b.approx.stages[std::max(0, b.approx.T() - 1)].size();
        s->mgame.setup = new_metric_game(metric_from_structure(*metric, b.approx.top()), b.partition, b.partition, prefix);
    } else {
        FinStructure C = req.contains("C") ? structure_from_json(req["C"], b.approx.oracle->signature())
                                           : FinStructure(b.approx.oracle->signature(), 1);
        s->game.setup = new_game(b, C, req.value("g_cap", -1));
        s->game.policy = to_string(s->policy);
    }
    {
        std::lock_guard lock(mu_);
        s->id = std::to_string(next_id_++);
        sessions_[s->id] = s;
    }
    std::lock_guard lock(s->mu);
    return {201, {{"id", s->id}, {"state", s->state()}}};
}

Response GameService::get(const std::string& id) {
    auto s = find(id);
    if (!s) return error(404, "no game " + id);
    std::lock_guard lock(s->mu);
    return {200, {{"state", s->state()}, {"transcript", s->transcript()}}};
}

Response GameService::move(const std::string& id, const Json& req) {
    auto s = find(id);
    if (!s) return error(404, "no game " + id);
    std::lock_guard lock(s->mu);
    if (req.contains("turn") && req["turn"].get<int>() != s->turn())
        return {409, {{"error", "stale turn"}, {"state", s->state()}}};
    if (s->aborted()) return {409, {{"error", "game aborted"}, {"state", s->state()}}};
    if (s->max_rounds >= 0 && s->turn() >= s->max_rounds)
        return {409, {{"error", "all rounds played"}, {"state", s->state()}}};
    try {
        Json round;
        if (s->metric) {
            MetricMove mv;
            if (s->auto_mode) {
                mv = metric_player_one_move(s->mgame, s->policy.kind == PolicyKind::Random, s->rng);
            } else {
                mv.f = map_from_json(req.at("pairs"));
                mv.radius = req.contains("radius") ? rational_from_json(req["radius"]) : s->mgame.current().radius;
                check_metric_move(s->mgame, mv);
            }
            metric_splitter_reply(s->mgame, mv);
            round = metric_transcript_to_json(s->mgame)["rounds"].back();
        } else {
            PartialMap mv = s->auto_mode ? player_one_move(s->game, s->policy, s->rng) : map_from_json(req.at("pairs"));
            check_move(s->game, mv);
            splitter_reply(s->game, mv);
            if (s->game.rounds.empty() || s->game.aborted) round = nullptr;
            else round = transcript_to_json(s->game)["rounds"].back();
        }
        return {200, {{"round", round}, {"state", s->state()}}};
    } catch (const IllegalMove& e) {
        Json body = {{"error", e.what()}, {"state", s->state()}};
        if (e.violation) body["violation"] = violation_to_json(*e.violation);
        return {422, body};
    }
}

Response GameService::remove(const std::string& id) {
    std::lock_guard lock(mu_);
    if (!sessions_.erase(id)) return error(404, "no game " + id);
    return {200, {{"deleted", id}}};
}

Response GameService::handle(const std::string& method, const std::string& path, const std::string& body) {
    try {
        Json req = body.empty() ? Json::object() : Json::parse(body);
        const std::string prefix = "/games";
        if (path.rfind(prefix, 0) != 0) return error(404, "unknown path " + path);
        std::string rest = path.substr(prefix.size());
        if (rest.empty() || rest == "/") {
            if (method == "POST") return create(req);
            return error(405, "use POST /games");
        }
        rest = rest.substr(1);
        const auto slash = rest.find('/');
        const std::string id = rest.substr(0, slash);
        const std::string tail = slash == std::string::npos ? "" : rest.substr(slash);
        if (tail.empty() && method == "GET") return get(id);
        if (tail.empty() && method == "DELETE") return remove(id);
        if (tail == "/move" && method == "POST") return move(id, req);
        return error(405, method + " " + path + " is not supported");
    } catch (const Json::exception& e) {
        return error(400, std::string("malformed request: ") + e.what());
    } catch (const InputError& e) {
        return error(400, e.what());
    } catch (const std::exception& e) {
        return error(422, e.what());
    }
}

struct HttpServer::Impl {
    httplib::Server svr;
};

HttpServer::HttpServer(GameService& service) : impl_(std::make_unique<Impl>()) {
    auto route = [&service](const httplib::Request& req, httplib::Response& res) {
        Response r = service.handle(req.method, req.path, req.body);
        res.status = r.status;
        res.set_header("Access-Control-Allow-Origin", "*");
        res.set_content(r.body.dump(), "application/json");
    };
    auto& svr = impl_->svr;
    svr.Get(".*", route);
    svr.Post(".*", route);
    svr.Delete(".*", route);
    svr.Options(".*", [](const httplib::Request&, httplib::Response& res) {
        res.status = 204;
        res.set_header("Access-Control-Allow-Origin", "*");
        res.set_header("Access-Control-Allow-Methods", "GET, POST, DELETE");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
    });
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
    if (port == 0) return impl_->svr.bind_to_any_port(host);
    return impl_->svr.bind_to_port(host, port) ? port : -1;
}

void HttpServer::run() { impl_->svr.listen_after_bind(); }
void HttpServer::stop() { impl_->svr.stop(); }

int serve(GameService& service, const std::string& host, int port) {
    HttpServer server(service);
    if (server.bind(host, port) < 0) return 1;
    server.run();
    return 0;
}

}  // namespace fraisse::service
