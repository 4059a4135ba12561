#include "io_internal.hpp"

namespace fraisse {

using namespace io_detail;

namespace {

Json certificate_to_json(const ExclusionCertificate& c) {
    return {{"k", c.k}, {"extensions_checked", c.extensions_checked}, {"compatible_found", c.compatible_found}};
}

ExclusionCertificate certificate_from_json(const Json& j) {
    return ExclusionCertificate{get<int>(j, "k"), get<std::uint64_t>(j, "extensions_checked"),
                                get<std::uint64_t>(j, "compatible_found")};
}

Json metric_move_to_json(const MetricMove& m) { return {{"f", map_to_json(m.f)}, {"radius", rational_to_json(m.radius)}}; }

MetricMove metric_move_from_json(const Json& j) {
    return MetricMove{map_from_json(need(j, "f")), rational_from_json(need(j, "radius"))};
}

std::vector<char> bits_from_json(const Json& j) {
    std::vector<char> out;
    for (int b : ints(j)) {
        if (b != 0 && b != 1) throw InputError("membership bits are 0 or 1");
        out.push_back(static_cast<char>(b));
    }
    return out;
}

}  // namespace

Json transcript_to_json(const GameState& s) {
    const GameSetup& st = *s.setup;
    Json g_list = Json::array();
    for (const auto& g : st.g_list) g_list.push_back(map_to_json(g));
    Json rounds = Json::array();
    for (const auto& r : s.rounds) {
        Json jr{{"move", map_to_json(r.move)}, {"k", r.k},         {"D", r.D},
                {"w1", r.w1},                  {"w2", r.w2},       {"reply", map_to_json(r.reply)},
                {"certificate", certificate_to_json(r.certificate)}};
        if (r.witness) jr["witness"] = witness_to_json(*r.witness);
        rounds.push_back(jr);
    }
    Json out{{"kind", "game"},
             {"setup",
              {{"bundle", bundle_to_json(st.bundle)},
               {"partB", partition_to_json(st.partB)},
               {"C", structure_to_json(st.C)},
               {"c_star", st.c_star},
               {"g_cap", st.g_cap},
               {"g_list", g_list}}},
             {"policy", s.policy},
             {"rounds", rounds},
             {"excluded", s.excluded},
             {"aborted", s.aborted},
             {"abort_reason", s.abort_reason}};
    if (s.abort_move) out["abort_move"] = map_to_json(*s.abort_move);
    return out;
}

GameState transcript_from_json(const Json& j) {
    if (get_or<std::string>(j, "kind", "game") != "game") throw InputError("not a game transcript");
    const Json& js = need(j, "setup");
    auto st = std::make_shared<GameSetup>();
    st->bundle = bundle_from_json(need(js, "bundle"));
    SignaturePtr sig = st->bundle.approx.oracle->signature();
    st->partB = partition_from_json(need(js, "partB"));
    st->C = structure_from_json(need(js, "C"), sig);
    st->c_star = ints(need(js, "c_star"));
    st->g_cap = get<int>(js, "g_cap");
    for (const auto& g : need(js, "g_list")) st->g_list.push_back(map_from_json(g));
    GameState s;
    s.setup = st;
    s.policy = get_or<std::string>(j, "policy", "");
    for (const auto& jr : need(j, "rounds")) {
        GameRound r;
        r.move = map_from_json(need(jr, "move"));
        r.k = get<int>(jr, "k");
        r.D = ints(need(jr, "D"));
        r.w1 = get<int>(jr, "w1");
        r.w2 = get<int>(jr, "w2");
        r.reply = map_from_json(need(jr, "reply"));
        r.certificate = certificate_from_json(need(jr, "certificate"));
        if (jr.contains("witness")) r.witness = witness_from_json(jr["witness"], sig);
        s.rounds.push_back(std::move(r));
    }
    s.excluded = ints(get_or<Json>(j, "excluded", Json::array()));
    for (int k : s.excluded)
        if (k < 0 || k >= static_cast<int>(st->g_list.size())) throw InputError("excluded index out of range");
    s.aborted = get_or<bool>(j, "aborted", false);
    s.abort_reason = get_or<std::string>(j, "abort_reason", "");
    if (j.contains("abort_move")) s.abort_move = map_from_json(j["abort_move"]);
    return s;
}

Json metric_transcript_to_json(const MetricGameState& s) {
    const MetricGameSetup& st = *s.setup;
    Json rounds = Json::array();
    for (const auto& r : s.rounds)
        rounds.push_back({{"move", metric_move_to_json(r.move)},
                          {"cell", r.cell},
                          {"exact_split_pair", r.exact_split_pair},
                          {"g1", katetov_map_to_json(r.g1)},
                          {"g2", katetov_map_to_json(r.g2)},
                          {"z", r.z},
                          {"z2", r.z2},
                          {"reply", metric_move_to_json(r.reply)},
                          {"certificate",
                           {{"cell", r.certificate.cell},
                            {"extensions_checked", r.certificate.extensions_checked},
                            {"landing_in_cell", r.certificate.landing_in_cell}}}});
    return {{"kind", "metric-game"},
            {"setup",
             {{"space", metric_to_json(st.space)},
              {"in_A", std::vector<int>(st.in_A.begin(), st.in_A.end())},
              {"in_B", std::vector<int>(st.in_B.begin(), st.in_B.end())},
              {"c_star", st.c_star},
              {"d_star", rational_to_json(st.d_star)},
              {"eps", rational_to_json(st.eps)},
              {"cells", st.cells}}},
            {"rounds", rounds},
            {"excluded", s.excluded},
            {"aborted", s.aborted},
            {"abort_reason", s.abort_reason}};
}

MetricGameState metric_transcript_from_json(const Json& j) {
    if (get<std::string>(j, "kind") != "metric-game") throw InputError("not a metric game transcript");
    const Json& js = need(j, "setup");
    auto st = std::make_shared<MetricGameSetup>();
    st->space = metric_from_json(need(js, "space"));
    st->in_A = bits_from_json(need(js, "in_A"));
    st->in_B = bits_from_json(need(js, "in_B"));
    if (static_cast<int>(st->in_A.size()) != st->space.size() || static_cast<int>(st->in_B.size()) != st->space.size())
        throw InputError("membership bits do not cover the space");
    st->c_star = get<int>(js, "c_star");
    st->d_star = rational_from_json(need(js, "d_star"));
    st->eps = rational_from_json(need(js, "eps"));
    for (const auto& c : need(js, "cells")) st->cells.push_back(ints(c));
    MetricGameState s;
    s.setup = st;
    for (const auto& jr : need(j, "rounds")) {
        MetricRound r;
        r.move = metric_move_from_json(need(jr, "move"));
        r.cell = get<int>(jr, "cell");
        r.exact_split_pair = get<bool>(jr, "exact_split_pair");
        r.g1 = katetov_map_from_json(need(jr, "g1"));
        r.g2 = katetov_map_from_json(need(jr, "g2"));
        r.z = get<int>(jr, "z");
        r.z2 = get<int>(jr, "z2");
        r.reply = metric_move_from_json(need(jr, "reply"));
        const Json& c = need(jr, "certificate");
        r.certificate = MetricCertificate{get<int>(c, "cell"), get<std::uint64_t>(c, "extensions_checked"),
                                          get<std::uint64_t>(c, "landing_in_cell")};
        s.rounds.push_back(std::move(r));
    }
    s.excluded = ints(get_or<Json>(j, "excluded", Json::array()));
    s.aborted = get_or<bool>(j, "aborted", false);
    s.abort_reason = get_or<std::string>(j, "abort_reason", "");
    return s;
}

}  // namespace fraisse
