#include "fraisse/wreath.hpp"

#include <algorithm>
#include <numeric>

#include "fraisse/splitting.hpp"

namespace fraisse {

namespace {

// Cheap isomorphism-invariant fingerprint of each point.
std::vector<std::vector<int>> point_invariants(const FinStructure& s) {
    const auto& sig = s.signature();
    std::vector<std::vector<int>> inv(s.size());
    for (int sym = 0; sym < static_cast<int>(sig.size()); ++sym) {
        const int ar = sig[sym].arity;
        if (ar == 1) {
            for (int a = 0; a < s.size(); ++a) inv[a].push_back(s.holds1(sym, a));
        } else if (ar == 2) {
            for (int a = 0; a < s.size(); ++a) {
                int out = 0, in = 0;
                for (int b = 0; b < s.size(); ++b) {
                    out += s.holds2(sym, a, b);
                    in += s.holds2(sym, b, a);
                }
                inv[a].push_back(s.holds2(sym, a, a));
                inv[a].push_back(out);
                inv[a].push_back(in);
            }
        } else {
            std::vector<std::vector<int>> count(s.size(), std::vector<int>(ar, 0));
            for (const auto& t : s.tuples(sym))
                for (int pos = 0; pos < ar; ++pos) ++count[t[pos]][pos];
            for (int a = 0; a < s.size(); ++a) inv[a].insert(inv[a].end(), count[a].begin(), count[a].end());
        }
    }
    return inv;
}

std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

}  // namespace

bool is_automorphism(const FinStructure& s, const Perm& p) {
    if (static_cast<int>(p.size()) != s.size()) return false;
    PartialMap f;
    for (int x = 0; x < s.size(); ++x) {
        if (p[x] < 0 || p[x] >= s.size()) return false;
        f.set(x, p[x]);
    }
    return f.is_injective() && is_embedding(s, s, f);
}

std::optional<Perm> find_automorphism(const FinStructure& s, const PartialMap& fixed) {
    const int n = s.size();
    const auto inv = point_invariants(s);
    for (auto [x, y] : fixed.pairs()) {
        if (x < 0 || x >= n || y < 0 || y >= n) throw InputError("fixed pair out of range");
        if (inv[x] != inv[y]) return std::nullopt;
    }
    if (!fixed.is_injective() || !is_embedding(s, s, fixed)) return std::nullopt;
    PartialMap f = fixed;
    std::vector<int> todo;
    for (int x = 0; x < n; ++x)
        if (!f.contains(x)) todo.push_back(x);
    auto rec = [&](auto&& self, std::size_t idx) -> bool {
        if (idx == todo.size()) return true;
        const int x = todo[idx];
        for (int y = 0; y < n; ++y) {
            if (f.in_range(y) || inv[x] != inv[y] || !extends_consistently(s, s, f, x, y)) continue;
            f.set(x, y);
            if (self(self, idx + 1)) return true;
            f.erase(x);
        }
        return false;
    };
    if (!rec(rec, 0)) return std::nullopt;
    Perm p(n);
    for (int x = 0; x < n; ++x) p[x] = f.at(x);
    return p;
}

AutGroup automorphism_group(const FinStructure& s, int cap) {
    if (s.size() > cap)
        throw InputError("automorphism search is capped at " + std::to_string(cap) + " elements, got " +
                         std::to_string(s.size()));
    AutGroup g;
    PartialMap fixed;
    for (int i = 0; i < s.size(); ++i) {
        int orbit = 1;
        for (int j = 0; j < s.size(); ++j) {
            if (j == i || fixed.in_range(j)) continue;
            PartialMap f = fixed;
            f.set(i, j);
            if (auto p = find_automorphism(s, f)) {
                ++orbit;
                g.generators.push_back(*p);
            }
        }
        g.orbit_sizes.push_back(orbit);
        g.order *= static_cast<std::uint64_t>(orbit);
        fixed.set(i, i);
    }
    return g;
}

std::vector<std::vector<int>> orbits(const std::vector<Perm>& gens, int n) {
    std::vector<int> root(n);
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](int x) {
        while (root[x] != x) x = root[x] = root[root[x]];
        return x;
    };
    for (const auto& p : gens)
        for (int x = 0; x < n; ++x) {
            int a = find(x), b = find(p[x]);
            if (a != b) root[std::max(a, b)] = std::min(a, b);
        }
    std::vector<std::vector<int>> out;
    std::vector<int> slot(n, -1);
    for (int x = 0; x < n; ++x) {
        int r = find(x);
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(out.size());
            out.emplace_back();
        }
        out[slot[r]].push_back(x);
    }
    return out;
}

WreathReport verify_wreath_factorization(const FinStructure& s, const std::vector<std::vector<int>>& classes,
                                         const std::optional<std::vector<Perm>>& H_expected) {
    const int n = s.size();
    const int k = static_cast<int>(classes.size());
    std::vector<int> class_of(n, -1);
    for (int c = 0; c < k; ++c)
        for (int x : classes[c]) {
            if (x < 0 || x >= n || class_of[x] >= 0) throw InputError("classes do not partition the domain");
            class_of[x] = c;
        }
    for (int x = 0; x < n; ++x)
        if (class_of[x] < 0) throw InputError("point " + std::to_string(x) + " is in no class");

    WreathReport rep;
    AutGroup aut = automorphism_group(s);
    rep.order = aut.order;
    std::vector<Perm> induced;
    for (const auto& g : aut.generators) {
        Perm h(k, -1);
        for (int c = 0; c < k && rep.classes_preserved; ++c) {
            const int target = class_of[g[classes[c][0]]];
            bool whole = classes[target].size() == classes[c].size();
            for (int x : classes[c]) whole = whole && class_of[g[x]] == target;
            if (!whole) {
                rep.classes_preserved = false;
                rep.failing_automorphism = g;
                rep.message = "an automorphism splits class " + std::to_string(c);
            }
            h[c] = target;
        }
        if (!rep.classes_preserved) break;
        induced.push_back(h);
    }
    for (int c = 0; c < k && rep.kernel_full; ++c) {
        rep.block_product *= factorial(static_cast<int>(classes[c].size()));
        for (std::size_t i = 0; i + 1 < classes[c].size(); ++i) {
            Perm t(n);
            std::iota(t.begin(), t.end(), 0);
            std::swap(t[classes[c][i]], t[classes[c][i + 1]]);
            if (!is_automorphism(s, t)) {
                rep.kernel_full = false;
                rep.missing_transposition = std::make_pair(classes[c][i], classes[c][i + 1]);
                if (rep.message.empty())
                    rep.message = "swapping " + std::to_string(classes[c][i]) + " and " +
                                  std::to_string(classes[c][i + 1]) + " is not an automorphism";
                break;
            }
        }
    }
    if (!rep.kernel_full) {
        rep.block_product = 1;
        for (const auto& cl : classes) rep.block_product *= factorial(static_cast<int>(cl.size()));
    }
    if (rep.classes_preserved) {
        rep.H_induced = group_closure(induced, k);
        rep.order_equation = rep.order == rep.block_product * rep.H_induced.size();
    } else {
        rep.order_equation = false;
    }
    if (H_expected) rep.h_matches = rep.classes_preserved && group_closure(*H_expected, k) == rep.H_induced;
    if (rep.message.empty() && !rep.order_equation) rep.message = "order equation fails";
    if (rep.message.empty() && rep.h_matches == false) rep.message = "induced group differs from the expected one";
    return rep;
}

}  // namespace fraisse
