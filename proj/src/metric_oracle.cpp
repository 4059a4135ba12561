#include "fraisse/metric_oracle.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace fraisse {

MetricClass::MetricClass(int den, Rational diam) : den_(den), diam_(diam) {
    if (den < 1) throw InputError("denominator bound must be ≥ 1");
    if (diam <= 0) throw InputError("diameter bound must be positive");
    std::set<Rational> vals;
    for (std::int64_t q = 1; q <= den; ++q)
        for (std::int64_t p = 1; Rational(p, q) <= diam; ++p) vals.insert(Rational(p, q));
    values_.assign(vals.begin(), vals.end());
    std::int64_t l = 1;
    for (std::int64_t q = 1; q <= den; ++q) l = std::lcm(l, q);
    std::vector<Symbol> syms;
    for (const auto& v : values_) {
        scaled_.push_back(v.numerator() * (l / v.denominator()));
        syms.push_back({"d_" + to_string(v), 2});
    }
    sig_ = make_signature(std::move(syms));
}

std::string MetricClass::name() const {
    if (den_ == 4 && diam_ == Rational(4)) return "rational-metric";
    return "rational-metric:" + std::to_string(den_) + ":" + to_string(diam_);
}

std::vector<LinkOption> MetricClass::link_options() const {
    // largest distance first: the least constrained choice
    std::vector<LinkOption> out;
    for (int i = static_cast<int>(values_.size()) - 1; i >= 0; --i)
        out.push_back(LinkOption{{{i, 0}, {i, 1}}});
    return out;
}

std::optional<int> MetricClass::symbol_for(const Rational& v) const {
    auto it = std::lower_bound(values_.begin(), values_.end(), v);
    if (it == values_.end() || *it != v) return std::nullopt;
    return static_cast<int>(it - values_.begin());
}

int MetricClass::distance_symbol(const FinStructure& s, int a, int b) const {
    int found = -1;
    for (int i = 0; i < static_cast<int>(values_.size()); ++i) {
        if (s.holds2(i, a, b)) {
            if (found != -1) return -2;
            found = i;
        }
    }
    return found;
}

std::optional<Rational> MetricClass::distance(const FinStructure& s, int a, int b) const {
    if (a == b) return Rational(0);
    int i = distance_symbol(s, a, b);
    if (i < 0) return std::nullopt;
    return values_[i];
}

bool MetricClass::triangle_ok(int x, int y, int z) const {
    const auto a = scaled_[x], b = scaled_[y], c = scaled_[z];
    return a <= b + c && b <= a + c && c <= a + b;
}

bool MetricClass::accepts_point(const FinStructure& s, const std::vector<int>& active, int p) const {
    for (int i = 0; i < static_cast<int>(values_.size()); ++i)
        if (s.holds2(i, p, p)) return false;
    std::vector<int> dp(active.size(), -1);
    for (std::size_t k = 0; k < active.size(); ++k) {
        const int q = active[k];
        if (q == p) continue;
        int a = distance_symbol(s, p, q);
        if (a < 0 || a != distance_symbol(s, q, p)) return false;
        dp[k] = a;
    }
    for (std::size_t k = 0; k < active.size(); ++k) {
        if (dp[k] < 0) continue;
        for (std::size_t l = k + 1; l < active.size(); ++l) {
            if (dp[l] < 0) continue;
            int e = distance_symbol(s, active[k], active[l]);
            if (e < 0 || !triangle_ok(dp[k], dp[l], e)) return false;
        }
    }
    return true;
}

bool MetricClass::member(const FinStructure& s) const {
    if (!(s.signature() == *sig_)) return false;
    std::vector<int> act;
    for (int p = 0; p < s.size(); ++p) {
        act.push_back(p);
        if (!accepts_point(s, act, p)) return false;
    }
    return true;
}

FinStructure MetricClass::from_matrix(const std::vector<std::vector<Rational>>& d) const {
    const int n = static_cast<int>(d.size());
    FinStructure s(sig_, n);
    for (int a = 0; a < n; ++a) {
        if (static_cast<int>(d[a].size()) != n) throw InputError("distance matrix not square");
        for (int b = 0; b < n; ++b) {
            if (a == b) continue;
            auto sym = symbol_for(d[a][b]);
            if (!sym) throw InputError("distance " + to_string(d[a][b]) + " outside the value grid");
            s.set(*sym, {a, b});
        }
    }
    return s;
}

OraclePtr make_metric_oracle(const std::string& key) {
    if (key == "rational-metric") return std::make_shared<MetricClass>(4, Rational(4));
    const std::string prefix = "rational-metric:";
    if (key.rfind(prefix, 0) != 0) throw InputError("unknown oracle '" + key + "'");
    std::string rest = key.substr(prefix.size());
    auto colon = rest.find(':');
    if (colon == std::string::npos) throw InputError("expected rational-metric:<den>:<diam>");
    int den = 0;
    try {
        den = std::stoi(rest.substr(0, colon));
    } catch (const std::exception&) {
        throw InputError("bad denominator bound in '" + key + "'");
    }
    return std::make_shared<MetricClass>(den, parse_rational(rest.substr(colon + 1)));
}

}  // namespace fraisse
