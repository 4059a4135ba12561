#include "fraisse/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "io_internal.hpp"

namespace fraisse {

using namespace io_detail;

Json rational_to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (!j.is_string()) throw InputError("rational must be a \"p/q\" string");
    return parse_rational(j.get<std::string>());
}

Json signature_to_json(const Signature& sig) {
    Json out = Json::array();
    for (const auto& s : sig.symbols()) out.push_back({{"name", s.name}, {"arity", s.arity}});
    return out;
}

SignaturePtr signature_from_json(const Json& j) {
    if (!j.is_array()) throw InputError("signature must be a list");
    std::vector<Symbol> syms;
    for (const auto& s : j) syms.push_back(Symbol{get<std::string>(s, "name"), get<int>(s, "arity")});
    return make_signature(std::move(syms));
}

Json structure_to_json(const FinStructure& s) {
    Json interp = Json::object();
    for (int sym = 0; sym < s.signature().size(); ++sym) interp[s.signature()[sym].name] = s.tuples(sym);
    return {{"signature", signature_to_json(s.signature())}, {"n", s.size()}, {"interp", interp}};
}

FinStructure structure_from_json(const Json& j, const SignaturePtr& expected) {
    SignaturePtr sig = signature_from_json(need(j, "signature"));
    if (expected) {
        if (!(*sig == *expected)) throw InputError("signature does not match the class");
        sig = expected;
    }
    const int n = get<int>(j, "n");
    if (n < 0) throw InputError("n must be >= 0");
    FinStructure s(sig, n);
    const Json& interp = need(j, "interp");
    if (!interp.is_object()) throw InputError("interp must be an object");
    for (auto it = interp.begin(); it != interp.end(); ++it) {
        auto sym = sig->index_of(it.key());
        if (!sym) throw InputError("unknown symbol " + it.key());
        for (const auto& t : it.value()) {
            std::vector<int> tup = ints(t);
            s.set(*sym, tup);  // arity and range are checked by set
        }
    }
    return s;
}

Json map_to_json(const PartialMap& f) {
    Json out = Json::array();
    for (auto [a, b] : f.pairs()) out.push_back({a, b});
    return out;
}

PartialMap map_from_json(const Json& j) {
    if (!j.is_array()) throw InputError("map must be a list of pairs");
    PartialMap f;
    for (const auto& p : j) {
        std::vector<int> ab = ints(p);
        if (ab.size() != 2) throw InputError("map entries are [source, target] pairs");
        if (f.contains(ab[0])) throw InputError("map lists element " + std::to_string(ab[0]) + " twice");
        f.set(ab[0], ab[1]);
    }
    return f;
}

Json violation_to_json(const Violation& v, const Signature* sig) {
    Json out{{"symbol", v.symbol}, {"tuple", v.tuple}, {"holds_in_source", v.holds_in_source}};
    if (v.symbol == -1) out["symbol_name"] = "injectivity";
    else if (v.symbol == -2) out["symbol_name"] = "distance";
    else if (sig && v.symbol < sig->size()) out["symbol_name"] = (*sig)[v.symbol].name;
    return out;
}

Violation violation_from_json(const Json& j) {
    return Violation{get<int>(j, "symbol"), ints(need(j, "tuple")), get_or<bool>(j, "holds_in_source", false)};
}

Json metric_to_json(const MetricSpace& X) {
    Json d = Json::array();
    for (const auto& row : X.d)
        for (const auto& v : row) d.push_back(rational_to_json(v));
    Json out{{"n", X.size()}, {"d", d}};
    if (X.bound) out["bound"] = rational_to_json(*X.bound);
    return out;
}

MetricSpace metric_from_json(const Json& j) {
    const int n = get<int>(j, "n");
    const Json& d = need(j, "d");
    if (n < 0 || !d.is_array() || static_cast<long>(d.size()) != static_cast<long>(n) * n)
        throw InputError("d must hold n*n entries");
    MetricSpace X;
    X.d.assign(n, std::vector<Rational>(n, Rational(0)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) X.d[a][b] = rational_from_json(d[a * n + b]);
    if (j.contains("bound") && !j["bound"].is_null()) X.bound = rational_from_json(j["bound"]);
    if (auto bad = metric_defect(X)) throw InputError("not a metric space: " + *bad);
    return X;
}

Json katetov_map_to_json(const KatetovMap& g) {
    Json vals = Json::array();
    for (const auto& v : g.values) vals.push_back(rational_to_json(v));
    return {{"support", g.support}, {"values", vals}};
}

KatetovMap katetov_map_from_json(const Json& j) {
    KatetovMap g;
    g.support = ints(need(j, "support"));
    for (const auto& v : need(j, "values")) g.values.push_back(rational_from_json(v));
    if (g.support.size() != g.values.size()) throw InputError("support and values differ in length");
    return g;
}

Json wreath_spec_to_json(const WreathSpec& w) {
    return {{"I", w.I}, {"H_generators", w.generators}, {"block_sizes", w.block_sizes}};
}

WreathSpec wreath_spec_from_json(const Json& j) {
    WreathSpec w;
    w.I = get<int>(j, "I");
    if (w.I < 1) throw InputError("I must be >= 1");
    for (const auto& g : get_or<Json>(j, "H_generators", Json::array())) {
        Perm p = ints(g);
        std::vector<char> seen(w.I, 0);
        if (static_cast<int>(p.size()) != w.I) throw InputError("generator length differs from I");
        for (int x : p) {
            if (x < 0 || x >= w.I || seen[x]) throw InputError("generator is not a permutation of I");
            seen[x] = 1;
        }
        w.generators.push_back(p);
    }
    w.block_sizes = ints(need(j, "block_sizes"));
    if (static_cast<int>(w.block_sizes.size()) != w.I) throw InputError("one block size per index");
    for (int b : w.block_sizes)
        if (b < 1) throw InputError("block sizes must be >= 1");
    return w;
}

Json read_json_file(const std::string& path) {
    std::stringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) throw InputError("cannot open " + path);
        buf << in.rdbuf();
    }
    try {
        return Json::parse(buf.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& j) {
    if (path == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace fraisse
