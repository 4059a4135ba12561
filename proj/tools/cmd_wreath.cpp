#include "commands.hpp"

namespace fraisse::cli {

namespace {

std::vector<std::vector<int>> lists(const Json& j) {
    std::vector<std::vector<int>> out;
    for (const auto& x : j) out.push_back(x.get<std::vector<int>>());
    return out;
}

// A structure file, or the top stage of a bundle or build-limit report.
FinStructure structure_input(const Json& j) {
    if (j.contains("bundle")) return structure_input(j["bundle"]);
    if (j.contains("approx")) return approx_from_json(j["approx"]).top();
    return structure_from_json(j);
}

Json wreath(const Json& p, const Json& in) {
    const std::string sub = param(p, "subop").get<std::string>();
    if (sub == "aut") {
        FinStructure s = structure_input(in.at("structure"));
        AutGroup g = automorphism_group(s);
        Json body = make_body("wreath", p, in, "order-" + std::to_string(g.order), kOk,
                              "exact stabilizer chain, structures of at most " + std::to_string(kAutomorphismCap) +
                                  " elements");
        body["group"] = aut_group_to_json(g);
        return body;
    }
    if (sub == "verify" || sub == "build-mh") {
        FinStructure s;
        std::vector<std::vector<int>> classes;
        std::optional<std::vector<Perm>> H;
        Json body = Json::object();
        if (sub == "build-mh") {
            WreathSpec spec = wreath_spec_from_json(in.at("spec"));
            MhBuild mh = build_MH(spec);
            s = mh.structure;
            classes = mh.blocks;
            H = spec.generators;
            body["oracle"] = mh.oracle->name();
            body["structure"] = structure_to_json(s);
        } else {
            s = structure_input(in.at("structure"));
            if (in.contains("classes")) {
                classes = lists(in["classes"]);
            } else {
                const Json& src = in["structure"].contains("bundle") ? in["structure"]["bundle"] : in["structure"];
                if (!src.contains("approx")) throw InputError("a bare structure needs --classes");
                LimitApprox a = approx_from_json(src["approx"]);
                classes = equivalence_classes(s, *a.oracle, iota(s.size()), 2, 3).classes;
                body["classes_from"] = "control equivalence, |K| <= 2, |F1| <= 3";
            }
            if (in.contains("H")) H = lists(in["H"]);
        }
        WreathReport rep = verify_wreath_factorization(s, classes, H);
        Json out = make_body("wreath", p, in, rep.passed() ? "wreath-product" : "not-wreath-product",
                             rep.passed() ? kOk : kFails,
                             "class preservation on generators, kernel by adjacent transpositions, exact orders");
        out.update(body);
        out["classes"] = classes;
        out["report"] = wreath_report_to_json(rep);
        return out;
    }
    if (sub == "tree") {
        LimitApprox a = approx_from_json(in.at("bundle").at("approx"));
        FinStructure C0 = in.contains("C0") ? structure_from_json(in["C0"], a.oracle->signature()) : one_point(*a.oracle);
        TypeTree t = type_splitting_tree(a, C0, int_param(p, "depth"));
        std::string why;
        const bool ok = verify_type_tree(a, t, &why);
        const bool full = t.reached == t.depth;
        Json body = make_body("wreath", p, in, !ok ? "tree-invalid" : full ? "tree-complete" : "tree-truncated",
                              !ok ? kFails : full ? kOk : kInconclusive,
                              "quantifier-free types of copies of C0 over the recorded sets, in the top stage");
        body["tree"] = type_tree_to_json(t);
        body["leaf_count"] = t.leaves.size();
        if (!ok) body["reason"] = why;
        return body;
    }
    throw InputError("unknown wreath subcommand '" + sub + "' (aut, verify, build-mh, tree)");
}

std::vector<std::string> check_wreath(const Json& body) {
    std::vector<std::string> bad;
    const Json& in = body.at("inputs");
    if (body.contains("group")) {
        FinStructure s = structure_input(in.at("structure"));
        for (const auto& g : body["group"].at("generators"))
            if (!is_automorphism(s, g.get<Perm>())) bad.push_back("group.generators: not an automorphism");
    }
    if (body.contains("tree")) {
        LimitApprox a = approx_from_json(in.at("bundle").at("approx"));
        std::string why;
        if (!verify_type_tree(a, type_tree_from_json(body["tree"]), &why) && body.at("exit_code") != kFails)
            bad.push_back("tree: " + why);
    }
    return bad;
}

}  // namespace

void register_wreath_commands(std::map<std::string, CommandEntry>& t) { t["wreath"] = {wreath, check_wreath}; }

}  // namespace fraisse::cli
