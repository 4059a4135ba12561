#include "fraisse/katetov.hpp"

#include <algorithm>
#include <random>

namespace fraisse {

namespace {

Rational rabs(const Rational& r) { return r < Rational(0) ? -r : r; }

}  // namespace

Rational MetricSpace::diameter() const {
    Rational out(0);
    for (const auto& row : d)
        for (const auto& v : row) out = std::max(out, v);
    return out;
}

std::optional<std::string> metric_defect(const MetricSpace& X) {
    const int n = X.size();
    for (const auto& row : X.d)
        if (static_cast<int>(row.size()) != n) return "distance matrix is not square";
    for (int x = 0; x < n; ++x) {
        if (X.d[x][x] != Rational(0)) return "d(" + std::to_string(x) + "," + std::to_string(x) + ") is not 0";
        for (int y = 0; y < n; ++y) {
            if (X.d[x][y] != X.d[y][x]) return "distance not symmetric on " + std::to_string(x) + "," + std::to_string(y);
            if (x != y && X.d[x][y] <= Rational(0)) return "distinct points at distance 0";
            if (X.bound && X.d[x][y] > *X.bound) return "distance above the bound";
            for (int z = 0; z < n; ++z)
                if (X.d[x][z] > X.d[x][y] + X.d[y][z])
                    return "triangle inequality fails on " + std::to_string(x) + "," + std::to_string(y) + "," +
                           std::to_string(z);
        }
    }
    return std::nullopt;
}

MetricSpace metric_from_structure(const MetricClass& oracle, const FinStructure& s) {
    MetricSpace X;
    X.bound = oracle.diameter_bound();
    X.d.assign(s.size(), std::vector<Rational>(s.size(), Rational(0)));
    for (int a = 0; a < s.size(); ++a)
        for (int b = 0; b < s.size(); ++b) {
            if (a == b) continue;
            auto v = oracle.distance(s, a, b);
            if (!v) throw InputError("structure is not a metric space of " + oracle.name());
            X.d[a][b] = *v;
        }
    return X;
}

FinStructure structure_from_metric(const MetricClass& oracle, const MetricSpace& X) {
    return oracle.from_matrix(X.d);
}

Rational KatetovMap::at(int x) const {
    for (std::size_t i = 0; i < support.size(); ++i)
        if (support[i] == x) return values[i];
    throw InputError("point " + std::to_string(x) + " outside the support");
}

bool KatetovMap::defined(int x) const { return std::find(support.begin(), support.end(), x) != support.end(); }

std::optional<KatetovViolation> katetov_violation(const MetricSpace& X, const KatetovMap& g) {
    if (g.support.size() != g.values.size()) throw InputError("support and values differ in length");
    for (std::size_t i = 0; i < g.support.size(); ++i) {
        if (g.values[i] < Rational(0)) return KatetovViolation{g.support[i], g.support[i], "sum"};
        for (std::size_t j = 0; j < g.support.size(); ++j) {
            const Rational& d = X.d[g.support[i]][g.support[j]];
            if (g.values[i] - g.values[j] > d) return KatetovViolation{g.support[i], g.support[j], "difference"};
            if (i != j && d > g.values[i] + g.values[j]) return KatetovViolation{g.support[i], g.support[j], "sum"};
        }
    }
    return std::nullopt;
}

KatetovMap distance_map(const MetricSpace& X, int x, const std::vector<int>& support) {
    KatetovMap g;
    g.support = support;
    for (int y : support) g.values.push_back(X.d[x][y]);
    return g;
}

KatetovMap katetov_extension(const MetricSpace& X, const KatetovMap& g, const std::vector<int>& targets) {
    if (g.support.empty()) throw InputError("Katetov extension needs a nonempty support");
    KatetovMap out;
    out.support = targets;
    for (int x : targets) {
        Rational best = g.values[0] + X.d[x][g.support[0]];
        for (std::size_t i = 1; i < g.support.size(); ++i) best = std::min(best, g.values[i] + X.d[x][g.support[i]]);
        out.values.push_back(best);
    }
    return out;
}

Rational sup_distance(const KatetovMap& g1, const KatetovMap& g2) {
    Rational out(0);
    for (std::size_t i = 0; i < g1.support.size(); ++i)
        if (g2.defined(g1.support[i])) out = std::max(out, rabs(g1.values[i] - g2.at(g1.support[i])));
    return out;
}

SplitPair split_pair(const MetricSpace& X, int c, const std::vector<int>& others, const Rational& d_star,
                     const Rational& eps, std::optional<Rational> cap) {
    if (others.empty()) throw InputError("split pair needs at least one point besides c");
    if (!(eps < d_star)) throw InputError("need eps < d_star");
    if (eps < Rational(0)) throw InputError("need eps >= 0");
    for (int a : others)
        if (a == c || X.d[c][a] < d_star) throw InputError("d_star exceeds the distance from c to the others");
    SplitPair sp;
    std::vector<int> pts = others;
    pts.push_back(c);
    sp.D = Rational(0);
    for (int a : pts)
        for (int b : pts) sp.D = std::max(sp.D, X.d[a][b]);
    sp.delta = (eps + d_star) / Rational(2);
    Rational top = Rational(2) * sp.D;
    if (cap && top > *cap) {
        top = *cap;
        sp.capped = true;
    }
    for (auto* g : {&sp.g1, &sp.g2}) {
        g->support = pts;
        g->values.assign(pts.size(), top);
    }
    sp.g2.values.back() = top - sp.delta;
    sp.verified = is_katetov(X, sp.g1) && is_katetov(X, sp.g2) && sp.g2.values.back() >= d_star &&
                  rabs(sp.g1.values.back() - sp.g2.values.back()) > eps;
    return sp;
}

UrysohnBuild build_rational_urysohn(int levels, int denominator_bound, const Rational& diameter_bound, bool sphere,
                                    int m) {
    if (denominator_bound < 1) throw InputError("denominator bound must be >= 1");
    auto oracle = std::make_shared<MetricClass>(denominator_bound, sphere ? Rational(1) : diameter_bound);
    UrysohnBuild b{oracle, build_limit_approx(oracle, 2, levels, m, FinStructure(oracle->signature(), 1)), {}};
    for (const auto& s : b.approx.stages) b.stages.push_back(metric_from_structure(*oracle, s));
    return b;
}

std::vector<KatetovMap> katetov_grid(const MetricSpace& X, const std::vector<int>& support, int den,
                                     const Rational& vmax) {
    std::vector<Rational> vals;
    for (int q = 1; Rational(q, den) <= vmax; ++q) vals.push_back(Rational(q, den));
    std::vector<KatetovMap> out;
    KatetovMap g;
    g.support = support;
    g.values.assign(support.size(), Rational(0));
    auto rec = [&](auto&& self, std::size_t idx) -> void {
        if (idx == support.size()) {
            if (is_katetov(X, g)) out.push_back(g);
            return;
        }
        for (const auto& v : vals) {
            g.values[idx] = v;
            self(self, idx + 1);
        }
    };
    rec(rec, 0);
    return out;
}

namespace {

// Error of z against g: max over the support of |d(z, y) - g(y)|.
Rational realization_error(const MetricSpace& X, const KatetovMap& g, int z) {
    Rational err(0);
    for (std::size_t i = 0; i < g.support.size(); ++i) err = std::max(err, rabs(X.d[z][g.support[i]] - g.values[i]));
    return err;
}

}  // namespace

ApproxExtensionReport check_approx_extension(const MetricSpace& X, const Rational& eps, int support_bound, int den,
                                             const Rational& vmax, int pool) {
    ApproxExtensionReport rep;
    const int P = pool < 0 ? X.size() : std::min(pool, X.size());
    for (const auto& Y : anchors_up_to(P, support_bound)) {
        if (Y.empty()) continue;
        for (const auto& g : katetov_grid(X, Y, den, vmax)) {
            ++rep.maps_checked;
            std::optional<Rational> best;
            for (int z = 0; z < X.size(); ++z) {
                Rational e = realization_error(X, g, z);
                if (!best || e < *best) best = e;
                if (e <= eps) break;
            }
            if (!best || *best > eps) {
                rep.ok = false;
                rep.failure = ExtensionFailure{g, best.value_or(Rational(-1))};
                return rep;
            }
        }
    }
    return rep;
}

CarveReport carve_absorbing_subspace(const MetricSpace& X, const std::vector<Deletion>& deletions, int support_bound,
                                     int den, const Rational& vmax, int pool) {
    CarveReport rep;
    for (const auto& del : deletions)
        if (del.center < 0 || del.center >= X.size()) throw InputError("deletion center out of range");
    for (int z = 0; z < X.size(); ++z) {
        bool keep = true;
        for (const auto& del : deletions)
            if (X.d[z][del.center] < del.radius * del.shrink) keep = false;
        if (keep) rep.F.push_back(z);
    }
    rep.empty = rep.F.empty();
    if (rep.empty) return rep;
    const int P = pool < 0 ? X.size() : std::min(pool, X.size());
    for (const auto& Y : anchors_up_to(P, support_bound)) {
        if (Y.empty()) continue;
        std::vector<Rational> dist_to_F;
        for (int y : Y) {
            Rational best = X.d[y][rep.F[0]];
            for (int f : rep.F) best = std::min(best, X.d[y][f]);
            dist_to_F.push_back(best);
        }
        for (const auto& g : katetov_grid(X, Y, den, vmax)) {
            bool applies = true;
            for (std::size_t i = 0; i < Y.size(); ++i)
                if (!(g.values[i] > dist_to_F[i])) applies = false;
            if (!applies) continue;
            ++rep.absorption.maps_checked;
            std::optional<Rational> best;
            for (int z : rep.F) {
                Rational e = realization_error(X, g, z);
                if (!best || e < *best) best = e;
                if (e == Rational(0)) break;
            }
            if (*best != Rational(0)) {
                rep.absorption.ok = false;
                rep.absorption.failure = ExtensionFailure{g, *best};
                return rep;
            }
        }
    }
    return rep;
}

}  // namespace fraisse
