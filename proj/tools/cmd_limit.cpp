#include "commands.hpp"

namespace fraisse::cli {

namespace {

Json bundle_json(const LimitApprox& a, const std::optional<AbsorbingPartition>& part) {
    Json b{{"approx", approx_to_json(a)}};
    if (part) b["partition"] = partition_to_json(*part);
    return b;
}

// Partition optional: bundles straight from build-limit with m = 1 have none.
std::pair<LimitApprox, std::optional<AbsorbingPartition>> load_bundle(const Json& j) {
    LimitApprox a = approx_from_json(j.at("approx"));
    std::optional<AbsorbingPartition> part;
    if (j.contains("partition")) {
        part = partition_from_json(j["partition"]);
        if (static_cast<int>(part->in_A.size()) != a.top().size())
            throw InputError("partition does not cover the top stage");
    }
    return {std::move(a), std::move(part)};
}

Json build_limit(const Json& p, const Json& in) {
    auto oracle = oracle_param(p);
    LimitApprox a;
    std::optional<AbsorbingPartition> part;
    if (p.contains("cliques")) {
        if (oracle->name() != "k2") throw InputError("--cliques builds the hand-made bundle of k2 only");
        Bundle b = k2_clique_bundle(int_param(p, "cliques"), int_param(p, "size"));
        a = b.approx;
        part = b.partition;
    } else {
        FinStructure seed = in.contains("seed") ? structure_from_json(in["seed"], oracle->signature()) : one_point(*oracle);
        a = build_limit_approx(oracle, int_param(p, "k"), int_param(p, "T"), int_param(p, "m"), seed);
        if (a.m >= 2) part = build_absorbing_partition(a);
    }
    ClosureReport ext = verify_extension_property(a, a.k);
    std::optional<ClosureReport> pc;
    if (part) pc = check_absorbing_partition(a, *part);
    const bool ok = ext.ok && (!pc || pc->ok);
    Json body = make_body("build-limit", p, in, ok ? "closed" : "not-closed", ok ? kOk : kFails,
                          "every nontrivial type over an anchor of size <= " + std::to_string(a.k) +
                              " of M_t is realized " + std::to_string(a.m) + " time(s) in M_{t+1}");
    body["bundle"] = bundle_json(a, part);
    body["extension_property"] = closure_report_to_json(ext);
    if (pc) body["partition_check"] = closure_report_to_json(*pc);
    return body;
}

std::vector<std::string> check_bundle(const Json& body) {
    std::vector<std::string> bad;
    auto [a, part] = load_bundle(body.at("bundle"));
    if (body.contains("extension_property") &&
        verify_extension_property(a, a.k).ok != body["extension_property"].at("ok").get<bool>())
        bad.push_back("extension_property: claim disagrees with the bundle");
    if (part && body.contains("partition_check") &&
        check_absorbing_partition(a, *part).ok != body["partition_check"].at("ok").get<bool>())
        bad.push_back("partition_check: claim disagrees with the bundle");
    return bad;
}

Json partition_cmd(const Json& p, const Json& in) {
    auto [a, given] = load_bundle(in.at("bundle"));
    AbsorbingPartition part = given ? *given : build_absorbing_partition(a);
    ClosureReport pc = check_absorbing_partition(a, part);
    Json body = make_body("partition", p, in, pc.ok ? "absorbing" : "not-absorbing", pc.ok ? kOk : kFails,
                          "both sides realize every nontrivial type over anchors of size <= " +
                              std::to_string(part.level) + " in M_{T-1}");
    body["bundle"] = bundle_json(a, part);
    body["partition_check"] = closure_report_to_json(pc);
    body["sizes"] = {{"A", part.A().size()}, {"complement", part.complement().size()}};
    return body;
}

Json extend_cmd(const Json& p, const Json& in) {
    auto [a, part] = load_bundle(in.at("bundle"));
    if (!part) throw InputError("extend needs a bundle with a partition");
    const FinStructure& s = a.top();
    PartialMap g = map_from_json(in.at("map"));
    std::vector<std::vector<int>> classes;
    if (in.contains("classes")) {
        for (const auto& c : in["classes"]) classes.push_back(c.get<std::vector<int>>());
    } else {
        classes = equivalence_classes(s, *a.oracle, iota(s.size()), 2, 3).classes;
    }
    auto r = extend_partial_isomorphism(s, *a.oracle, *part, *part, g, classes, int_param(p, "k"));
    const bool good = r.ok && r.automorphism;
    Json body = make_body("extend", p, in, good ? "extended-to-automorphism" : "not-extended", good ? kOk : kFails,
                          "restrictions to <= " + std::to_string(int_param(p, "k") + 1) +
                              " points checked; whole map checked as an automorphism of the top stage");
    body["classes"] = classes;
    body["result"] = extension_result_to_json(r);
    return body;
}

std::vector<std::string> check_extension(const Json& body) {
    std::vector<std::string> bad;
    const Json& r = body.at("result");
    if (!r.at("automorphism").get<bool>()) return bad;
    auto [a, part] = load_bundle(body.at("inputs").at("bundle"));
    PartialMap total = map_from_json(r.at("total"));
    PartialMap g = map_from_json(body.at("inputs").at("map"));
    if (static_cast<int>(total.size()) != a.top().size() || !total.is_injective() || !is_embedding(a.top(), a.top(), total))
        bad.push_back("result.total: not an automorphism");
    if (!total.extends(g)) bad.push_back("result.total: does not extend the given map");
    return bad;
}

}  // namespace

void register_limit_commands(std::map<std::string, CommandEntry>& t) {
    t["build-limit"] = {build_limit, check_bundle};
    t["partition"] = {partition_cmd, check_bundle};
    t["extend"] = {extend_cmd, check_extension};
}

}  // namespace fraisse::cli
