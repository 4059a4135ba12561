#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "service.hpp"

namespace fraisse::cli {

int default_bound() {
    if (const char* env = std::getenv("FRAISSE_BOUND")) {
        try {
            int b = std::stoi(env);
            if (b >= 1) return b;
        } catch (const std::exception&) {
        }
    }
    return 4;
}

Json make_body(const std::string& command, const Json& params, const Json& inputs, const std::string& verdict,
               int exit_code, const std::string& bounds) {
    return {{"command", command}, {"parameters", params}, {"inputs", inputs},
            {"verdict", verdict}, {"exit_code", exit_code}, {"bounds", bounds}};
}

const std::map<std::string, CommandEntry>& command_table() {
    static const auto table = [] {
        std::map<std::string, CommandEntry> t;
        register_class_commands(t);
        register_limit_commands(t);
        register_game_commands(t);
        register_katetov_commands(t);
        register_wreath_commands(t);
        return t;
    }();
    return table;
}

OraclePtr oracle_param(const Json& params) { return make_oracle(param(params, "oracle").get<std::string>()); }

FinStructure one_point(const ClassOracle& oracle) {
    FinStructure s(oracle.signature(), 1);
    if (!oracle.member(s)) throw InputError(oracle.name() + " has no one-point member without relations; pass a seed");
    return s;
}

const Json& param(const Json& params, const char* key) {
    if (!params.contains(key)) throw InputError(std::string("missing parameter ") + key);
    return params.at(key);
}

int int_param(const Json& params, const char* key) {
    const Json& v = param(params, key);
    if (!v.is_number_integer()) throw InputError(std::string("parameter ") + key + " must be an integer");
    return v.get<int>();
}

std::vector<int> iota(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i;
    return v;
}

CommandReport verify_report(const Json& report) {
    CommandReport out;
    const std::string command = report.value("command", "");
    auto it = command_table().find(command);
    if (it == command_table().end()) throw InputError("not a report of this tool (command '" + command + "')");
    std::vector<std::string> problems;
    if (it->second.check) {
        try {
            for (auto& p : it->second.check(report)) problems.push_back(p);
        } catch (const std::exception& e) {
            problems.push_back(std::string("certificate malformed: ") + e.what());
        }
    }
    Json again;
    try {
        again = it->second.compute(report.at("parameters"), report.value("inputs", Json::object()));
    } catch (const std::exception& e) {
        problems.push_back(std::string("recomputation failed: ") + e.what());
    }
    if (!again.is_null()) {
        Json claimed = report;
        claimed.erase("timings");
        for (const auto& op : Json::diff(again, claimed)) {
            if (problems.size() >= 20) break;
            problems.push_back(op.at("path").get<std::string>() + ": differs from the recomputed report");
        }
    }
    out.exit_code = problems.empty() ? kOk : kFails;
    out.body = {{"command", "verify"},
                {"verified_command", command},
                {"verdict", problems.empty() ? "verified" : "broken"},
                {"problems", problems},
                {"exit_code", out.exit_code}};
    return out;
}

namespace {

void emit(const std::string& path, const Json& j, std::ostream& out) {
    if (path == "-") out << j.dump(2) << "\n";
    else write_json_file(path, j);
}

Json load(const std::string& path) { return read_json_file(path); }

struct Args {
    std::string oracle, prop = "SAP", c_file, seed_file, bundle_file, map_file, classes_file, stage_file, metric_file,
                        input_file, h_file, deletions_file, policy = "minimal-legal", out = "-", subop, host = "127.0.0.1",
                        d_star, eps, cap, diam = "2", vmax = "2";
    int bound = default_bound(), slack = 1, max_c = -1, k_bound = 2, f_bound = 3, T = 3, m = 1, k = 1, point = 0,
        rounds = 5, g_cap = -1, port = 8080, depth = 3, levels = 1, den = 2, support_bound = 2, pool = -1, cliques = 0,
        size = 0, c = 0;
    std::uint64_t budget = 5'000'000;
    bool controls = false, auto_play = false, serve = false, sphere = false;
};

}  // namespace

int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bounded dichotomy workbench for Fraisse classes"};
    app.require_subcommand(1);
    Args a;
    auto* cc = app.add_subcommand("check-class", "check HP, JEP, AP or SAP up to a bound");
    cc->add_option("oracle", a.oracle)->required();
    cc->add_option("--prop", a.prop)->check(CLI::IsMember({"HP", "JEP", "AP", "SAP"}));
    cc->add_option("--bound", a.bound);
    cc->add_option("--budget", a.budget);

    auto* cs = app.add_subcommand("check-splits", "search for a split witness, else control certificates");
    cs->add_option("oracle", a.oracle)->required();
    cs->add_option("--c", a.c_file, "structure file for C, or auto");
    cs->add_option("--bound", a.bound);
    cs->add_option("--slack", a.slack);
    cs->add_option("--max-c", a.max_c);
    cs->add_option("--k-bound", a.k_bound);
    cs->add_option("--f-bound", a.f_bound);
    cs->add_option("-T", a.T);
    cs->add_option("-m", a.m);
    cs->add_flag("--controls", a.controls, "compute controls even when the class splits");
    cs->add_option("--budget", a.budget);

    auto* fc = app.add_subcommand("find-control", "find a controlling set for one point");
    fc->add_option("oracle", a.oracle)->required();
    fc->add_option("--point", a.point);
    fc->add_option("--stage", a.stage_file);
    fc->add_option("--k-bound", a.k_bound);
    fc->add_option("--f-bound", a.f_bound);
    fc->add_option("-T", a.T);
    fc->add_option("-m", a.m);

    auto* bl = app.add_subcommand("build-limit", "build a chain of finite approximations of the limit");
    bl->add_option("oracle", a.oracle)->required();
    bl->add_option("-k", a.k);
    bl->add_option("-T", a.T);
    bl->add_option("-m", a.m);
    bl->add_option("--seed", a.seed_file);
    bl->add_option("--cliques", a.cliques, "k2 only: hand-made bundle with this many cliques");
    bl->add_option("--size", a.size, "k2 only: clique size");

    auto* pa = app.add_subcommand("partition", "build and check the absorbing partition of a bundle");
    pa->add_option("bundle", a.bundle_file)->required();

    auto* pg = app.add_subcommand("play-game", "play the Banach-Mazur game on a bundle");
    pg->add_option("bundle", a.bundle_file);
    pg->add_flag("--auto", a.auto_play);
    pg->add_flag("--serve", a.serve);
    pg->add_option("--rounds", a.rounds);
    pg->add_option("--policy", a.policy);
    pg->add_option("--g-cap", a.g_cap);
    pg->add_option("--c", a.c_file);
    pg->add_option("--host", a.host);
    pg->add_option("--port", a.port);

    auto* ex = app.add_subcommand("extend", "extend a partial isomorphism of A to an automorphism");
    ex->add_option("bundle", a.bundle_file)->required();
    ex->add_option("--map", a.map_file)->required();
    ex->add_option("--classes", a.classes_file);
    ex->add_option("-k", a.k);

    auto* ka = app.add_subcommand("katetov", "Katetov maps and rational Urysohn stages");
    ka->add_option("subop", a.subop)->required()->check(
        CLI::IsMember({"check", "extend", "split-pair", "urysohn", "approx-check", "carve"}));
    ka->add_option("--metric", a.metric_file);
    ka->add_option("--map", a.map_file);
    ka->add_option("--c", a.c);
    ka->add_option("--d-star", a.d_star);
    ka->add_option("--eps", a.eps);
    ka->add_option("--cap", a.cap);
    ka->add_option("--levels", a.levels);
    ka->add_option("--den", a.den);
    ka->add_option("--diam", a.diam);
    ka->add_flag("--sphere", a.sphere);
    ka->add_option("-m", a.m);
    ka->add_option("--support-bound", a.support_bound);
    ka->add_option("--vmax", a.vmax);
    ka->add_option("--pool", a.pool);
    ka->add_option("--deletions", a.deletions_file);

    auto* wr = app.add_subcommand("wreath", "automorphism groups, wreath factorization, type trees");
    wr->add_option("subop", a.subop)->required()->check(CLI::IsMember({"aut", "verify", "build-mh", "tree"}));
    wr->add_option("input", a.input_file, "structure, spec or bundle file")->required();
    wr->add_option("--classes", a.classes_file);
    wr->add_option("--H", a.h_file);
    wr->add_option("--depth", a.depth);
    wr->add_option("--c", a.c_file);

    auto* ve = app.add_subcommand("verify", "recompute every certificate in a report");
    ve->add_option("report", a.input_file)->required();

    for (auto* sub : app.get_subcommands({}))
        sub->add_option("--out", a.out, "report file, - for stdout");

    std::vector<std::string> rev(argv.rbegin(), argv.rend() - (argv.empty() ? 0 : 1));
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    auto* chosen = app.get_subcommands().front();
    const std::string name = chosen->get_name();
    Json params = Json::object(), inputs = Json::object();
    try {
        if (name == "verify") {
            CommandReport rep = verify_report(load(a.input_file));
            emit(a.out, rep.body, out);
            if (rep.exit_code != kOk)
                for (const auto& p : rep.body["problems"]) err << "broken: " << p.get<std::string>() << "\n";
            return rep.exit_code;
        }
        if (name == "check-class") {
            params = {{"oracle", a.oracle}, {"prop", a.prop}, {"bound", a.bound}, {"budget", a.budget}};
        } else if (name == "check-splits") {
            params = {{"oracle", a.oracle}, {"bound", a.bound}, {"slack", a.slack}, {"max_c", a.max_c},
                      {"k_bound", a.k_bound}, {"f_bound", a.f_bound}, {"T", a.T}, {"m", a.m},
                      {"controls", a.controls}, {"budget", a.budget}};
            if (!a.c_file.empty() && a.c_file != "auto") inputs["C"] = load(a.c_file);
        } else if (name == "find-control") {
            params = {{"oracle", a.oracle}, {"point", a.point}, {"k_bound", a.k_bound}, {"f_bound", a.f_bound},
                      {"T", a.T}, {"m", a.m}};
            if (!a.stage_file.empty()) inputs["stage"] = load(a.stage_file);
        } else if (name == "build-limit") {
            params = {{"oracle", a.oracle}, {"k", a.k}, {"T", a.T}, {"m", a.m}};
            if (a.cliques > 0) {
                params["cliques"] = a.cliques;
                params["size"] = a.size;
            }
            if (!a.seed_file.empty()) inputs["seed"] = load(a.seed_file);
        } else if (name == "partition") {
            inputs["bundle"] = load(a.bundle_file);
            if (inputs["bundle"].contains("bundle")) inputs["bundle"] = inputs["bundle"]["bundle"];
        } else if (name == "play-game") {
            Json bundle;
            if (!a.bundle_file.empty()) {
                bundle = load(a.bundle_file);
                if (bundle.contains("bundle")) bundle = bundle["bundle"];
            }
            if (a.serve) {
                service::GameService svc(bundle.is_null() ? std::nullopt : std::optional<Json>(bundle));
                err << "serving on http://" << a.host << ":" << a.port << "\n";
                return service::serve(svc, a.host, a.port) == 0 ? kOk : kInputError;
            }
            if (bundle.is_null()) throw InputError("play-game needs a bundle file");
            if (!a.auto_play) throw InputError("play-game needs --auto or --serve");
            params = {{"rounds", a.rounds}, {"policy", a.policy}, {"g_cap", a.g_cap}};
            inputs["bundle"] = bundle;
            if (!a.c_file.empty()) inputs["C"] = load(a.c_file);
        } else if (name == "extend") {
            params = {{"k", a.k}};
            inputs["bundle"] = load(a.bundle_file);
            if (inputs["bundle"].contains("bundle")) inputs["bundle"] = inputs["bundle"]["bundle"];
            inputs["map"] = load(a.map_file);
            if (!a.classes_file.empty()) inputs["classes"] = load(a.classes_file);
        } else if (name == "katetov") {
            params = {{"subop", a.subop}};
            if (!a.metric_file.empty()) inputs["metric"] = load(a.metric_file);
            if (!a.map_file.empty()) inputs["map"] = load(a.map_file);
            if (!a.deletions_file.empty()) inputs["deletions"] = load(a.deletions_file);
            if ((a.subop == "check" || a.subop == "extend") && a.map_file.empty())
                throw InputError("katetov " + a.subop + " needs --metric and --map");
            if (a.subop != "urysohn" && a.metric_file.empty()) throw InputError("katetov " + a.subop + " needs --metric");
            if (a.subop == "split-pair") {
                if (a.d_star.empty() || a.eps.empty()) throw InputError("split-pair needs --d-star and --eps");
                params.update({{"c", a.c}, {"d_star", a.d_star}, {"eps", a.eps}});
                if (!a.cap.empty()) params["cap"] = a.cap;
            } else if (a.subop == "urysohn") {
                params.update({{"levels", a.levels}, {"den", a.den}, {"diam", a.diam}, {"sphere", a.sphere}, {"m", a.m}});
            } else if (a.subop == "approx-check" || a.subop == "carve") {
                params.update({{"support_bound", a.support_bound}, {"den", a.den}, {"vmax", a.vmax}, {"pool", a.pool}});
                if (a.subop == "approx-check") params["eps"] = a.eps.empty() ? "0" : a.eps;
            }
        } else if (name == "wreath") {
            params = {{"subop", a.subop}};
            Json input = load(a.input_file);
            if (a.subop == "tree") {
                params["depth"] = a.depth;
                inputs["bundle"] = input.contains("bundle") ? input["bundle"] : input;
                if (!a.c_file.empty()) inputs["C0"] = load(a.c_file);
            } else {
                inputs[a.subop == "build-mh" ? "spec" : "structure"] = input;
                if (!a.classes_file.empty()) inputs["classes"] = load(a.classes_file);
                if (!a.h_file.empty()) inputs["H"] = load(a.h_file);
            }
        }
        const auto t0 = std::chrono::steady_clock::now();
        Json body = command_table().at(name).compute(params, inputs);
        body["timings"] = {{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
        emit(a.out, body, out);
        if (a.out != "-") out << name << ": " << body["verdict"].get<std::string>() << "\n";
        return body["exit_code"].get<int>();
    } catch (const ControlNotFound& e) {
        err << "inconclusive: " << e.what() << "\n";
        return kInconclusive;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const IllegalMove& e) {
        err << "illegal move: " << e.what() << "\n";
        return kInputError;
    } catch (const nlohmann::json::exception& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
}

}  // namespace fraisse::cli
