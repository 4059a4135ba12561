#include <algorithm>
#include <map>
#include <numeric>

#include "fraisse/splitting.hpp"

namespace fraisse {

namespace {

struct ControlSearch {
    const FinStructure& s;
    int c;
    int f_bound;
    std::vector<int> candidates;  // points outside K ∪ {c}
    PartialMap premise;           // K identity plus chosen pairs
    PartialMap full;              // premise plus c -> c
    std::optional<ControlRefutation> found;

    void dfs(std::size_t start) {
        if (found || static_cast<int>(premise.size()) >= f_bound) return;
        for (std::size_t xi = start; xi < candidates.size(); ++xi) {
            const int x = candidates[xi];
            for (int y : candidates) {
                if (premise.in_range(y)) continue;
                if (!extends_consistently(s, s, premise, x, y)) continue;
                if (!extends_consistently(s, s, full, x, y)) {
                    PartialMap bad = full;
                    bad.set(x, y);
                    found = ControlRefutation{bad};
                    return;
                }
                premise.set(x, y);
                full.set(x, y);
                dfs(xi + 1);
                premise.erase(x);
                full.erase(x);
                if (found) return;
            }
        }
    }
};

}  // namespace

std::optional<ControlRefutation> refute_control_exhaustive(const FinStructure& ambient, int c,
                                                           const std::vector<int>& K, int f_bound) {
    if (c < 0 || c >= ambient.size()) throw InputError("point out of range");
    ControlSearch cs{ambient, c, f_bound, {}, {}, {}, std::nullopt};
    for (int k : K) {
        if (k == c) throw InputError("K must not contain the controlled point");
        if (k < 0 || k >= ambient.size()) throw InputError("K element out of range");
        cs.premise.set(k, k);
        cs.full.set(k, k);
    }
    cs.full.set(c, c);
    for (int x = 0; x < ambient.size(); ++x)
        if (x != c && !cs.premise.contains(x)) cs.candidates.push_back(x);
    cs.dfs(0);
    return cs.found;
}

std::optional<ControlRefutation> refute_control(const FinStructure& ambient, int c,
                                                const std::vector<int>& K, int f_bound) {
    if (ambient.signature().max_arity() > 2 || static_cast<int>(K.size()) + 1 > f_bound)
        return refute_control_exhaustive(ambient, c, K, f_bound);
    if (c < 0 || c >= ambient.size()) throw InputError("point out of range");
    PartialMap premise;
    for (int k : K) {
        if (k == c) throw InputError("K must not contain the controlled point");
        if (k < 0 || k >= ambient.size()) throw InputError("K element out of range");
        premise.set(k, k);
    }
    PartialMap full = premise;
    full.set(c, c);
    for (int x = 0; x < ambient.size(); ++x) {
        if (x == c || premise.contains(x)) continue;
        for (int y = 0; y < ambient.size(); ++y) {
            if (y == c || premise.contains(y)) continue;
            if (!extends_consistently(ambient, ambient, premise, x, y)) continue;
            if (!extends_consistently(ambient, ambient, full, x, y)) {
                PartialMap bad = full;
                bad.set(x, y);
                return ControlRefutation{bad};
            }
        }
    }
    return std::nullopt;
}

bool verify_control(const ControlCertificate& cert) {
    return !refute_control(cert.ambient, cert.c, cert.K, cert.verified_bound);
}

std::optional<ControlCertificate> find_control(const FinStructure& stage, int c, const ClassOracle&,
                                               int k_bound, int f_bound,
                                               const std::vector<int>& exclude, int pool_size) {
    std::vector<int> pool;
    const int limit = pool_size < 0 ? stage.size() : std::min(pool_size, stage.size());
    for (int x = 0; x < limit; ++x)
        if (x != c && std::find(exclude.begin(), exclude.end(), x) == exclude.end()) pool.push_back(x);
    std::vector<int> K;
    std::optional<ControlCertificate> out;
    auto rec = [&](auto&& self, std::size_t start, int remaining) -> bool {
        if (remaining == 0) {
            if (refute_control(stage, c, K, f_bound)) return false;
            out = ControlCertificate{stage, c, K, f_bound};
            return true;
        }
        for (std::size_t i = start; i < pool.size(); ++i) {
            K.push_back(pool[i]);
            bool hit = self(self, i + 1, remaining - 1);
            K.pop_back();
            if (hit) return true;
        }
        return false;
    };
    for (int size = 0; size <= k_bound && size <= static_cast<int>(pool.size()); ++size)
        if (rec(rec, 0, size)) break;
    return out;
}

EquivalenceReport equivalence_classes(const FinStructure& stage, const ClassOracle& oracle,
                                      const std::vector<int>& points, int k_bound, int f_bound,
                                      int pool_size) {
    EquivalenceReport rep;
    const int m = static_cast<int>(points.size());
    for (int a : points) {
        auto cert = find_control(stage, a, oracle, k_bound, f_bound, {}, pool_size);
        if (!cert) throw ControlNotFound(a);
        rep.certificates.push_back(*cert);
    }
    std::vector<std::vector<char>> rel(m, std::vector<char>(m, 0));
    for (int x = 0; x < m; ++x) {
        rel[x][x] = 1;
        for (int y = 0; y < m; ++y) {
            if (x == y) continue;
            const int a = points[x], b = points[y];
            std::vector<int> K = rep.certificates[x].K;
            if (std::find(K.begin(), K.end(), b) != K.end()) {
                auto alt = find_control(stage, a, oracle, k_bound, f_bound, {b}, pool_size);
                if (!alt) continue;
                K = alt->K;
            }
            rel[x][y] = type_of(stage, K, a).extension == type_of(stage, K, b).extension;
        }
    }
    auto note = [&](const std::string& msg) {
        if (rep.consistent) rep.inconsistency = msg;
        rep.consistent = false;
    };
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y) {
            if (rel[x][y] != rel[y][x])
                note("relation not symmetric on " + std::to_string(points[x]) + "," + std::to_string(points[y]));
            for (int z = 0; z < m; ++z)
                if (rel[x][y] && rel[y][z] && !rel[x][z])
                    note("relation not transitive through " + std::to_string(points[y]));
            if (x < y && rel[x][y]) {
                // types must also agree over the union of both controllers
                std::vector<int> K;
                for (int k : rep.certificates[x].K) K.push_back(k);
                for (int k : rep.certificates[y].K) K.push_back(k);
                std::sort(K.begin(), K.end());
                K.erase(std::unique(K.begin(), K.end()), K.end());
                std::erase_if(K, [&](int k) { return k == points[x] || k == points[y]; });
                if (type_of(stage, K, points[x]).extension != type_of(stage, K, points[y]).extension)
                    note("types of " + std::to_string(points[x]) + " and " + std::to_string(points[y]) +
                         " differ over a common controller");
            }
        }
    std::vector<int> root(m);
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](int x) {
        while (root[x] != x) x = root[x] = root[root[x]];
        return x;
    };
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y)
            if (rel[x][y] && rel[y][x]) root[find(x)] = find(y);
    std::map<int, std::vector<int>> groups;
    for (int x = 0; x < m; ++x) groups[find(x)].push_back(points[x]);
    for (auto& [r, g] : groups) {
        std::sort(g.begin(), g.end());
        rep.classes.push_back(g);
    }
    std::sort(rep.classes.begin(), rep.classes.end());
    return rep;
}

TypePermutationReport check_type_permutations(const FinStructure& stage, const std::vector<int>& K,
                                               const std::vector<int>& F,
                                               const std::vector<int>& controlled) {
    std::vector<int> Fs = F;
    std::sort(Fs.begin(), Fs.end());
    std::vector<int> Ks = K;
    std::sort(Ks.begin(), Ks.end());
    for (int k : Ks)
        if (!std::binary_search(Fs.begin(), Fs.end(), k)) throw InputError("K must lie inside F");
    for (int c : controlled)
        if (std::binary_search(Fs.begin(), Fs.end(), c)) throw InputError("controlled points must lie outside F");
    std::vector<FinStructure> types;
    for (int c : controlled) types.push_back(type_of(stage, Ks, c).extension);

    TypePermutationReport rep;
    Relabeled sub = induced_substructure(stage, Fs);
    for (const auto& e : find_embeddings(sub.structure, stage)) {
        PartialMap f;
        for (int x = 0; x < static_cast<int>(Fs.size()); ++x) f.set(Fs[x], e.at(x));
        std::vector<int> fK;
        for (int k : Ks) fK.push_back(f.at(k));
        auto rec = [&](auto&& self, std::size_t idx) -> bool {
            if (idx == controlled.size()) {
                ++rep.maps_checked;
                if (!is_embedding(stage, stage, f)) {
                    rep.holds = false;
                    rep.counterexample = f;
                    return false;
                }
                return true;
            }
            for (int d = 0; d < stage.size(); ++d) {
                if (f.in_range(d)) continue;
                if (type_of(stage, fK, d).extension != types[idx]) continue;
                f.set(controlled[idx], d);
                bool go = self(self, idx + 1);
                f.erase(controlled[idx]);
                if (!go) return false;
            }
            return true;
        };
        if (!rec(rec, 0)) break;
    }
    return rep;
}

}  // namespace fraisse
