#include "io_internal.hpp"

namespace fraisse {

using namespace io_detail;

namespace {

SplitVerdict parse_split_verdict(const std::string& s) {
    for (auto v : {SplitVerdict::Splits, SplitVerdict::Blocked, SplitVerdict::Inconclusive})
        if (to_string(v) == s) return v;
    throw InputError("unknown verdict " + s);
}

std::vector<std::vector<int>> int_lists(const Json& j) {
    std::vector<std::vector<int>> out;
    for (const auto& x : j) out.push_back(ints(x));
    return out;
}

}  // namespace

// Stages are prefixes of the top stage, so only their sizes are stored.
Json approx_to_json(const LimitApprox& a) {
    std::vector<int> sizes;
    for (const auto& s : a.stages) sizes.push_back(s.size());
    return {{"oracle", a.oracle->name()}, {"k", a.k}, {"m", a.m}, {"stage_sizes", sizes},
            {"top", structure_to_json(a.top())}};
}

LimitApprox approx_from_json(const Json& j) {
    LimitApprox a;
    a.oracle = make_oracle(get<std::string>(j, "oracle"));
    a.k = get<int>(j, "k");
    a.m = get<int>(j, "m");
    FinStructure top = structure_from_json(need(j, "top"), a.oracle->signature());
    int prev = 0;
    for (int n : ints(need(j, "stage_sizes"))) {
        if (n < prev || n > top.size()) throw InputError("stage sizes must grow up to the top stage");
        prev = n;
        std::vector<int> prefix(n);
        for (int i = 0; i < n; ++i) prefix[i] = i;
        a.stages.push_back(restrict_ordered(top, prefix));
    }
    if (a.stages.empty() || a.stages.back().size() != top.size()) throw InputError("last stage size must be the top");
    return a;
}

Json partition_to_json(const AbsorbingPartition& p) {
    std::vector<int> bits(p.in_A.begin(), p.in_A.end());
    return {{"in_A", bits}, {"level", p.level}};
}

AbsorbingPartition partition_from_json(const Json& j) {
    AbsorbingPartition p;
    for (int b : ints(need(j, "in_A"))) {
        if (b != 0 && b != 1) throw InputError("in_A entries are 0 or 1");
        p.in_A.push_back(static_cast<char>(b));
    }
    p.level = get_or<int>(j, "level", 1);
    return p;
}

Json bundle_to_json(const Bundle& b) {
    return {{"approx", approx_to_json(b.approx)}, {"partition", partition_to_json(b.partition)}};
}

Bundle bundle_from_json(const Json& j) {
    Bundle b{approx_from_json(need(j, "approx")), partition_from_json(need(j, "partition"))};
    if (static_cast<int>(b.partition.in_A.size()) != b.approx.top().size())
        throw InputError("partition does not cover the top stage");
    return b;
}

Json witness_to_json(const SplitWitness& w) {
    return {{"C", structure_to_json(w.C)},   {"D", structure_to_json(w.D)},   {"i", map_to_json(w.i)},
            {"D1", structure_to_json(w.D1)}, {"D2", structure_to_json(w.D2)}, {"j1", map_to_json(w.j1)},
            {"j2", map_to_json(w.j2)},       {"f", map_to_json(w.f)},
            {"violation", violation_to_json(w.violation, &w.D1.signature())}};
}

SplitWitness witness_from_json(const Json& j, const SignaturePtr& sig) {
    SplitWitness w;
    w.C = structure_from_json(need(j, "C"), sig);
    w.D = structure_from_json(need(j, "D"), sig);
    w.i = map_from_json(need(j, "i"));
    w.D1 = structure_from_json(need(j, "D1"), sig);
    w.D2 = structure_from_json(need(j, "D2"), sig);
    w.j1 = map_from_json(need(j, "j1"));
    w.j2 = map_from_json(need(j, "j2"));
    w.f = map_from_json(need(j, "f"));
    w.violation = violation_from_json(need(j, "violation"));
    return w;
}

Json split_search_to_json(const SplitSearch& s) {
    Json out{{"verdict", to_string(s.verdict)}, {"bound", s.bound}, {"slack", s.slack},
             {"pairs_checked", s.pairs_checked}, {"witnesses", Json::array()}};
    for (const auto& w : s.witnesses) out["witnesses"].push_back(witness_to_json(w));
    if (s.blocked_D) out["blocked_D"] = structure_to_json(*s.blocked_D);
    if (s.blocked_i) out["blocked_i"] = map_to_json(*s.blocked_i);
    return out;
}

SplitSearch split_search_from_json(const Json& j, const SignaturePtr& sig) {
    SplitSearch s;
    s.verdict = parse_split_verdict(get<std::string>(j, "verdict"));
    s.bound = get<int>(j, "bound");
    s.slack = get_or<int>(j, "slack", 1);
    s.pairs_checked = get_or<std::uint64_t>(j, "pairs_checked", 0);
    for (const auto& w : get_or<Json>(j, "witnesses", Json::array())) s.witnesses.push_back(witness_from_json(w, sig));
    if (j.contains("blocked_D")) s.blocked_D = structure_from_json(j["blocked_D"], sig);
    if (j.contains("blocked_i")) s.blocked_i = map_from_json(j["blocked_i"]);
    return s;
}

Json control_to_json(const ControlCertificate& c) {
    return {{"ambient", structure_to_json(c.ambient)}, {"c", c.c}, {"K", c.K}, {"verified_bound", c.verified_bound}};
}

ControlCertificate control_from_json(const Json& j, const SignaturePtr& sig) {
    ControlCertificate c;
    c.ambient = structure_from_json(need(j, "ambient"), sig);
    c.c = get<int>(j, "c");
    c.K = ints(need(j, "K"));
    c.verified_bound = get<int>(j, "verified_bound");
    if (c.c < 0 || c.c >= c.ambient.size()) throw InputError("controlled point out of range");
    for (int k : c.K)
        if (k < 0 || k >= c.ambient.size() || k == c.c) throw InputError("bad K element");
    return c;
}

namespace {

// Certificates share one ambient stage; it is stored once in the report.
Json control_ref_to_json(const ControlCertificate& c) {
    return {{"c", c.c}, {"K", c.K}, {"verified_bound", c.verified_bound}};
}

}  // namespace

Json dichotomy_to_json(const DichotomyReport& r) {
    const auto& o = r.options;
    Json out{{"command", "check-splits"},
             {"oracle", r.oracle},
             {"options",
              {{"bound", o.bound}, {"slack", o.slack}, {"max_c", o.max_c}, {"k_bound", o.k_bound},
               {"f_bound", o.f_bound}, {"T", o.T}, {"m", o.m}, {"controls_when_split", o.controls_when_split},
               {"node_budget", o.node_budget}}},
             {"verdict", to_string(r.verdict)},
             {"note", r.note},
             {"blocked", Json::array()},
             {"control_points", r.control_points},
             {"certificates", Json::array()},
             {"uncontrolled", r.uncontrolled},
             {"classes", r.classes}};
    if (r.split) out["split"] = split_search_to_json(*r.split);
    for (const auto& b : r.blocked)
        out["blocked"].push_back({{"C", structure_to_json(b.C)}, {"D", structure_to_json(b.D)}, {"i", map_to_json(b.i)}});
    if (r.control_stage) out["control_stage"] = structure_to_json(*r.control_stage);
    for (const auto& c : r.certificates) out["certificates"].push_back(control_ref_to_json(c));
    return out;
}

DichotomyReport dichotomy_from_json(const Json& j) {
    DichotomyReport r;
    r.oracle = get<std::string>(j, "oracle");
    OraclePtr oracle = make_oracle(r.oracle);
    SignaturePtr sig = oracle->signature();
    const Json& o = need(j, "options");
    r.options.bound = get<int>(o, "bound");
    r.options.slack = get<int>(o, "slack");
    r.options.max_c = get<int>(o, "max_c");
    r.options.k_bound = get<int>(o, "k_bound");
    r.options.f_bound = get<int>(o, "f_bound");
    r.options.T = get<int>(o, "T");
    r.options.m = get<int>(o, "m");
    r.options.controls_when_split = get<bool>(o, "controls_when_split");
    r.options.node_budget = get<std::uint64_t>(o, "node_budget");
    r.verdict = parse_split_verdict(get<std::string>(j, "verdict"));
    r.note = get_or<std::string>(j, "note", "");
    if (j.contains("split")) r.split = split_search_from_json(j["split"], sig);
    for (const auto& b : get_or<Json>(j, "blocked", Json::array()))
        r.blocked.push_back(BlockedCase{structure_from_json(need(b, "C"), sig), structure_from_json(need(b, "D"), sig),
                                        map_from_json(need(b, "i"))});
    if (j.contains("control_stage")) r.control_stage = structure_from_json(j["control_stage"], sig);
    r.control_points = ints(get_or<Json>(j, "control_points", Json::array()));
    for (const auto& c : get_or<Json>(j, "certificates", Json::array())) {
        if (!r.control_stage) throw InputError("certificates without a control stage");
        Json full = c;
        full["ambient"] = j["control_stage"];
        r.certificates.push_back(control_from_json(full, sig));
    }
    r.uncontrolled = ints(get_or<Json>(j, "uncontrolled", Json::array()));
    r.classes = int_lists(get_or<Json>(j, "classes", Json::array()));
    return r;
}

Json property_report_to_json(const PropertyReport& r) {
    Json out{{"property", to_string(r.property)}, {"bound", r.bound},           {"verdict", to_string(r.verdict)},
             {"searched_up_to", r.searched_up_to}, {"problems", r.problems}};
    if (r.counterexample) {
        const auto& p = *r.counterexample;
        out["counterexample"] = {{"A", structure_to_json(p.A)}, {"B", structure_to_json(p.B)},
                                 {"C", structure_to_json(p.C)}, {"f", map_to_json(p.f)},
                                 {"g", map_to_json(p.g)},       {"strong", p.strong}};
    }
    if (r.hp_structure) out["hp_counterexample"] = {{"S", structure_to_json(*r.hp_structure)}, {"subset", r.hp_subset}};
    return out;
}

Json closure_report_to_json(const ClosureReport& r) {
    Json out{{"ok", r.ok}, {"reason", r.reason}};
    if (r.failure) {
        const auto& f = *r.failure;
        out["failure"] = {{"stage", f.stage}, {"anchor", f.anchor}, {"type", structure_to_json(f.type)},
                          {"realizations", f.realizations}, {"side", f.side}};
    }
    return out;
}

Json extension_result_to_json(const ExtensionResult& r) {
    return {{"ok", r.ok}, {"on_A", map_to_json(r.on_A)}, {"total", map_to_json(r.total)},
            {"class_image", r.class_image}, {"small_sets_ok", r.small_sets_ok}, {"automorphism", r.automorphism},
            {"failure", r.failure}};
}

Json aut_group_to_json(const AutGroup& g) {
    return {{"order", g.order}, {"generators", g.generators}, {"orbit_sizes", g.orbit_sizes}};
}

Json wreath_report_to_json(const WreathReport& r) {
    Json out{{"passed", r.passed()},
             {"classes_preserved", r.classes_preserved},
             {"kernel_full", r.kernel_full},
             {"order_equation", r.order_equation},
             {"order", r.order},
             {"block_product", r.block_product},
             {"H_induced_order", r.H_induced.size()},
             {"H_induced", r.H_induced},
             {"message", r.message}};
    if (r.h_matches) out["h_matches"] = *r.h_matches;
    if (r.failing_automorphism) out["failing_automorphism"] = *r.failing_automorphism;
    if (r.missing_transposition)
        out["missing_transposition"] = {r.missing_transposition->first, r.missing_transposition->second};
    return out;
}

Json type_tree_to_json(const TypeTree& t) {
    Json nodes = Json::array();
    for (const auto& n : t.nodes)
        nodes.push_back({{"copy", n.copy}, {"base", n.base}, {"distinguisher", n.distinguisher}, {"parent", n.parent}});
    return {{"depth", t.depth}, {"reached", t.reached}, {"nodes", nodes}, {"leaves", t.leaves}, {"F", t.F},
            {"note", t.note}};
}

TypeTree type_tree_from_json(const Json& j) {
    TypeTree t;
    t.depth = get<int>(j, "depth");
    t.reached = get<int>(j, "reached");
    for (const auto& n : need(j, "nodes"))
        t.nodes.push_back(TypeTreeNode{ints(need(n, "copy")), ints(need(n, "base")), ints(need(n, "distinguisher")),
                                       get<int>(n, "parent")});
    t.leaves = ints(need(j, "leaves"));
    t.F = ints(need(j, "F"));
    t.note = get_or<std::string>(j, "note", "");
    for (std::size_t v = 0; v < t.nodes.size(); ++v)
        if (t.nodes[v].parent >= static_cast<int>(v) || (v > 0 && t.nodes[v].parent < 0))
            throw InputError("nodes must follow their parents");
    for (int l : t.leaves)
        if (l < 0 || l >= static_cast<int>(t.nodes.size())) throw InputError("leaf index out of range");
    return t;
}

}  // namespace fraisse
