#include "commands.hpp"

namespace fraisse::cli {

namespace {

Json check_class(const Json& p, const Json&) {
    auto oracle = oracle_param(p);
    const Property prop = parse_property(param(p, "prop").get<std::string>());
    const int bound = int_param(p, "bound");
    auto rep = check_property(*oracle, prop, bound, param(p, "budget").get<std::uint64_t>());
    const int code = rep.verdict == Verdict::Holds ? kOk : rep.verdict == Verdict::Fails ? kFails : kInconclusive;
    Json body = make_body("check-class", p, Json::object(), to_string(rep.verdict), code,
                          "exhaustive over members with at most " + std::to_string(bound) +
                              " elements; amalgams searched up to |B|+|C| points");
    body["report"] = property_report_to_json(rep);
    return body;
}

std::vector<std::string> check_class_certificate(const Json& body) {
    std::vector<std::string> bad;
    const Json& r = body.at("report");
    if (!r.contains("counterexample")) return bad;
    auto oracle = make_oracle(body.at("parameters").at("oracle").get<std::string>());
    auto sig = oracle->signature();
    const Json& c = r["counterexample"];
    AmalgamationProblem prob{structure_from_json(c.at("A"), sig), structure_from_json(c.at("B"), sig),
                             structure_from_json(c.at("C"), sig), map_from_json(c.at("f")), map_from_json(c.at("g")),
                             c.at("strong").get<bool>()};
    for (const auto* s : {&prob.A, &prob.B, &prob.C})
        if (!oracle->member(*s)) bad.push_back("report.counterexample: a structure is not in the class");
    if (!is_embedding(prob.A, prob.B, prob.f) || !is_embedding(prob.A, prob.C, prob.g))
        bad.push_back("report.counterexample: f or g is not an embedding");
    if (bad.empty() && amalgamate(prob, *oracle).amalgam)
        bad.push_back("report.counterexample: the problem has an amalgam");
    return bad;
}

DichotomyOptions dichotomy_options(const Json& p) {
    DichotomyOptions o;
    o.bound = int_param(p, "bound");
    o.slack = int_param(p, "slack");
    o.max_c = int_param(p, "max_c");
    o.k_bound = int_param(p, "k_bound");
    o.f_bound = int_param(p, "f_bound");
    o.T = int_param(p, "T");
    o.m = int_param(p, "m");
    o.controls_when_split = param(p, "controls").get<bool>();
    o.node_budget = param(p, "budget").get<std::uint64_t>();
    return o;
}

Json check_splits(const Json& p, const Json& in) {
    auto oracle = oracle_param(p);
    const DichotomyOptions o = dichotomy_options(p);
    DichotomyReport rep = in.contains("C")
                              ? classify_splitting_at(oracle, structure_from_json(in["C"], oracle->signature()), o)
                              : classify_splitting(oracle, o);
    const int code = rep.verdict == SplitVerdict::Inconclusive ? kInconclusive : kOk;
    Json body = make_body("check-splits", p, in, to_string(rep.verdict), code,
                          "D ranges over extensions of C with at most " + std::to_string(o.bound) +
                              " elements, D1 adds " + std::to_string(o.slack) +
                              " point(s); controls use |K| <= " + std::to_string(o.k_bound) +
                              ", |F1| <= " + std::to_string(o.f_bound) + " on stage M_" + std::to_string(o.T));
    body["report"] = dichotomy_to_json(rep);
    return body;
}

std::vector<std::string> check_splits_certificates(const Json& body) {
    std::vector<std::string> bad;
    DichotomyReport rep = dichotomy_from_json(body.at("report"));
    auto oracle = make_oracle(rep.oracle);
    if (rep.split)
        for (std::size_t i = 0; i < rep.split->witnesses.size(); ++i) {
            std::string why;
            if (!verify_split_witness(rep.split->witnesses[i], *oracle, &why))
                bad.push_back("report.split.witnesses[" + std::to_string(i) + "]: " + why);
        }
    for (std::size_t i = 0; i < rep.blocked.size(); ++i) {
        const auto& b = rep.blocked[i];
        if (witness_for(*oracle, b.C, b.D, b.i, rep.options.slack))
            bad.push_back("report.blocked[" + std::to_string(i) + "]: D has a split witness");
    }
    for (std::size_t i = 0; i < rep.certificates.size(); ++i)
        if (!verify_control(rep.certificates[i]))
            bad.push_back("report.certificates[" + std::to_string(i) + "]: control refuted");
    if (rep.verdict == SplitVerdict::Blocked && rep.certificates.size() != rep.control_points.size())
        bad.push_back("report.certificates: fewer certificates than control points");
    return bad;
}

Json find_control_cmd(const Json& p, const Json& in) {
    auto oracle = oracle_param(p);
    const int T = int_param(p, "T");
    FinStructure stage;
    int pool = -1;
    if (in.contains("stage")) {
        stage = structure_from_json(in["stage"], oracle->signature());
    } else {
        auto a = build_limit_approx(oracle, 1, T, int_param(p, "m"), one_point(*oracle));
        stage = a.top();
        pool = a.stages[std::max(0, T - 1)].size();
    }
    const int c = int_param(p, "point");
    if (c < 0 || c >= stage.size()) throw InputError("point out of range for the stage");
    const int f_bound = int_param(p, "f_bound");
    auto cert = find_control(stage, c, *oracle, int_param(p, "k_bound"), f_bound, {}, pool);
    Json body = make_body("find-control", p, in, cert ? "controlled" : "no-control-at-bound", cert ? kOk : kInconclusive,
                          "K drawn from the first " + std::to_string(pool < 0 ? stage.size() : pool) +
                              " points with |K| <= " + std::to_string(int_param(p, "k_bound")) +
                              "; F1 ranges over the stage with |F1| <= " + std::to_string(f_bound));
    body["stage"] = structure_to_json(stage);
    if (cert) {
        body["certificate"] = {{"c", cert->c}, {"K", cert->K}, {"verified_bound", cert->verified_bound}};
    } else if (auto ref = refute_control(stage, c, {}, f_bound)) {
        body["refutation_empty_K"] = map_to_json(ref->f);
    }
    return body;
}

std::vector<std::string> check_control_certificate(const Json& body) {
    std::vector<std::string> bad;
    if (!body.contains("certificate")) return bad;
    auto oracle = make_oracle(body.at("parameters").at("oracle").get<std::string>());
    Json full = body["certificate"];
    full["ambient"] = body.at("stage");
    if (!verify_control(control_from_json(full, oracle->signature()))) bad.push_back("certificate: control refuted");
    return bad;
}

}  // namespace

void register_class_commands(std::map<std::string, CommandEntry>& t) {
    t["check-class"] = {check_class, check_class_certificate};
    t["check-splits"] = {check_splits, check_splits_certificates};
    t["find-control"] = {find_control_cmd, check_control_certificate};
}

}  // namespace fraisse::cli
