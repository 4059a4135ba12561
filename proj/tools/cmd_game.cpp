#include "commands.hpp"

namespace fraisse::cli {

namespace {

Json play_game(const Json& p, const Json& in) {
    Bundle b = bundle_from_json(in.at("bundle"));
    const int rounds = int_param(p, "rounds");
    const std::string policy = param(p, "policy").get<std::string>();
    if (const auto* metric = dynamic_cast<const MetricClass*>(b.approx.oracle.get())) {
        const Policy pol = parse_policy(policy);
        if (pol.kind == PolicyKind::Adversarial) throw InputError("the metric game has no adversarial policy");
        MetricSpace X = metric_from_structure(*metric, b.approx.top());
        const int prefix = b.approx.stages[std::max(0, b.approx.T() - 1)].size();
        auto setup = new_metric_game(X, b.partition, b.partition, prefix);
        auto state = run_metric_game(setup, rounds, pol.seed, pol.kind == PolicyKind::Random);
        auto rep = check_metric_transcript(state);
        const int code = !rep.ok ? kFails : state.aborted ? kInconclusive : kOk;
        Json body = make_body("play-game", p, in, !rep.ok ? "replay-failed" : state.aborted ? "aborted" : "excluded-every-round",
                              code, "certificates search every stage point within the reply radius of c*");
        body["transcript"] = metric_transcript_to_json(state);
        body["replay"] = {{"ok", rep.ok}, {"failed_round", rep.failed_round}, {"reason", rep.reason}};
        return body;
    }
    FinStructure C = in.contains("C") ? structure_from_json(in["C"], b.approx.oracle->signature())
                                      : one_point(*b.approx.oracle);
    auto setup = new_game(b, C, int_param(p, "g_cap"));
    auto state = run_auto_game(setup, rounds, parse_policy(policy));
    auto rep = check_exclusion(state);
    const bool final_ok = final_position_excludes_all(state);
    const int code = !(rep.ok && final_ok) ? kFails : state.aborted ? kInconclusive : kOk;
    Json body = make_body("play-game", p, in,
                          code == kFails ? "replay-failed" : state.aborted ? "aborted" : "excluded-every-round", code,
                          "g_k range over " + std::to_string(setup->g_list.size()) +
                              " partial isomorphisms with |dom| <= " + std::to_string(setup->g_cap) +
                              "; certificates search every image of C* in the top stage");
    body["transcript"] = transcript_to_json(state);
    body["replay"] = {{"ok", rep.ok}, {"failed_round", rep.failed_round}, {"reason", rep.reason}};
    body["final_excludes_all"] = final_ok;
    return body;
}

std::vector<std::string> check_game(const Json& body) {
    std::vector<std::string> bad;
    const Json& t = body.at("transcript");
    ReplayReport rep = t.value("kind", "game") == "metric-game" ? check_metric_transcript(metric_transcript_from_json(t))
                                                                : check_exclusion(transcript_from_json(t));
    if (!rep.ok)
        bad.push_back("transcript" + (rep.failed_round >= 0 ? ".rounds[" + std::to_string(rep.failed_round) + "]" : "") +
                      ": " + rep.reason);
    return bad;
}

}  // namespace

void register_game_commands(std::map<std::string, CommandEntry>& t) { t["play-game"] = {play_game, check_game}; }

}  // namespace fraisse::cli
