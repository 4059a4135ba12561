#include "commands.hpp"

namespace fraisse::cli {

namespace {

Rational rat(const Json& p, const char* key) { return rational_from_json(param(p, key)); }

Json violation_json(const std::optional<KatetovViolation>& v) {
    if (!v) return nullptr;
    return {{"x", v->x}, {"y", v->y}, {"inequality", v->inequality}};
}

Json report_json(const ApproxExtensionReport& r) {
    Json out{{"ok", r.ok}, {"maps_checked", r.maps_checked}};
    if (r.failure)
        out["failure"] = {{"g", katetov_map_to_json(r.failure->g)}, {"best_error", rational_to_json(r.failure->best_error)}};
    return out;
}

KatetovMap map_input(const Json& in, const MetricSpace& X) {
    KatetovMap g = katetov_map_from_json(in.at("map"));
    for (int x : g.support)
        if (x < 0 || x >= X.size()) throw InputError("support point out of range");
    return g;
}

Json katetov(const Json& p, const Json& in) {
    const std::string sub = param(p, "subop").get<std::string>();
    if (sub == "check") {
        MetricSpace X = metric_from_json(in.at("metric"));
        auto v = katetov_violation(X, map_input(in, X));
        Json body = make_body("katetov", p, in, v ? "not-katetov" : "katetov", v ? kFails : kOk, "exact rational check");
        body["violation"] = violation_json(v);
        return body;
    }
    if (sub == "extend") {
        MetricSpace X = metric_from_json(in.at("metric"));
        KatetovMap g = map_input(in, X);
        if (auto v = katetov_violation(X, g)) throw InputError("input map is not Katetov on its support");
        KatetovMap e = katetov_extension(X, g, iota(X.size()));
        const bool ok = is_katetov(X, e);
        Json body = make_body("katetov", p, in, ok ? "extended" : "extension-not-katetov", ok ? kOk : kFails,
                              "minimum over the support of g(y) + d(x, y)");
        body["extension"] = katetov_map_to_json(e);
        return body;
    }
    if (sub == "split-pair") {
        MetricSpace X = metric_from_json(in.at("metric"));
        const int c = int_param(p, "c");
        if (c < 0 || c >= X.size()) throw InputError("c out of range");
        std::vector<int> others;
        for (int x = 0; x < X.size(); ++x)
            if (x != c) others.push_back(x);
        std::optional<Rational> cap;
        if (p.contains("cap")) cap = rat(p, "cap");
        else if (X.bound) cap = X.bound;
        auto sp = split_pair(X, c, others, rat(p, "d_star"), rat(p, "eps"), cap);
        Json body = make_body("katetov", p, in, sp.verified ? "split" : "split-not-verified", sp.verified ? kOk : kFails,
                              "both maps checked Katetov exactly; gap compared with epsilon");
        body["g1"] = katetov_map_to_json(sp.g1);
        body["g2"] = katetov_map_to_json(sp.g2);
        body["D"] = rational_to_json(sp.D);
        body["delta"] = rational_to_json(sp.delta);
        body["capped"] = sp.capped;
        return body;
    }
    if (sub == "urysohn") {
        const int den = int_param(p, "den");
        const Rational diam = rat(p, "diam");
        const bool sphere = param(p, "sphere").get<bool>();
        auto u = build_rational_urysohn(int_param(p, "levels"), den, diam, sphere, int_param(p, "m"));
        Json checks = Json::array();
        bool ok = true;
        for (std::size_t t = 0; t + 1 < u.stages.size(); ++t) {
            auto r = check_approx_extension(u.stages[t + 1], Rational(0), 2, den, sphere ? Rational(1) : diam,
                                            u.stages[t].size());
            ok = ok && r.ok;
            checks.push_back(report_json(r));
        }
        Json body = make_body("katetov", p, in, ok ? "extension-property" : "extension-fails", ok ? kOk : kFails,
                              "epsilon 0, supports of size <= 2 in M_t, values q/" + std::to_string(den) + " up to the bound");
        std::vector<int> sizes;
        for (const auto& s : u.stages) sizes.push_back(s.size());
        body["stage_sizes"] = sizes;
        body["space"] = metric_to_json(u.stages.back());
        body["checks"] = checks;
        if (int_param(p, "m") >= 2)
            body["bundle"] = bundle_to_json(Bundle{u.approx, build_absorbing_partition(u.approx)});
        return body;
    }
    if (sub == "approx-check") {
        MetricSpace X = metric_from_json(in.at("metric"));
        auto r = check_approx_extension(X, rat(p, "eps"), int_param(p, "support_bound"), int_param(p, "den"), rat(p, "vmax"),
                                        int_param(p, "pool"));
        Json body = make_body("katetov", p, in, r.ok ? "realized" : "not-realized", r.ok ? kOk : kFails,
                              "grid maps on supports of size <= " + std::to_string(int_param(p, "support_bound")));
        body["report"] = report_json(r);
        return body;
    }
    if (sub == "carve") {
        MetricSpace X = metric_from_json(in.at("metric"));
        std::vector<Deletion> dels;
        for (const auto& d : in.value("deletions", Json::array()))
            dels.push_back(Deletion{d.at("center").get<int>(), rational_from_json(d.at("radius")),
                                    d.contains("shrink") ? rational_from_json(d["shrink"]) : Rational(1)});
        auto r = carve_absorbing_subspace(X, dels, int_param(p, "support_bound"), int_param(p, "den"), rat(p, "vmax"),
                                          int_param(p, "pool"));
        const bool ok = !r.empty && r.absorption.ok;
        Json body = make_body("katetov", p, in, r.empty ? "empty" : ok ? "absorbing" : "not-absorbing",
                              r.empty ? kFails : ok ? kOk : kFails,
                              "maps with g(x) > d(x, F) must be realized exactly inside F");
        body["F"] = r.F;
        body["empty"] = r.empty;
        body["absorption"] = report_json(r.absorption);
        return body;
    }
    throw InputError("unknown katetov subcommand '" + sub + "' (check, extend, split-pair, urysohn, approx-check, carve)");
}

std::vector<std::string> check_katetov(const Json& body) {
    std::vector<std::string> bad;
    const Json& in = body.at("inputs");
    if (body.contains("g1")) {
        MetricSpace X = metric_from_json(in.at("metric"));
        for (const char* key : {"g1", "g2"})
            if (!is_katetov(X, katetov_map_from_json(body[key])) && body.at("exit_code") == kOk)
                bad.push_back(std::string(key) + ": not Katetov");
    }
    if (body.contains("extension")) {
        MetricSpace X = metric_from_json(in.at("metric"));
        KatetovMap g = katetov_map_from_json(in.at("map"));
        KatetovMap e = katetov_map_from_json(body["extension"]);
        for (std::size_t i = 0; i < g.support.size(); ++i)
            if (!e.defined(g.support[i]) || e.at(g.support[i]) != g.values[i]) bad.push_back("extension: disagrees on the support");
        if (!is_katetov(X, e) && body.at("exit_code") == kOk) bad.push_back("extension: not Katetov");
    }
    return bad;
}

}  // namespace

void register_katetov_commands(std::map<std::string, CommandEntry>& t) { t["katetov"] = {katetov, check_katetov}; }

}  // namespace fraisse::cli
