#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "fraisse/structure.hpp"

namespace testing_helpers {

using namespace fraisse;

inline SignaturePtr graph_sig() {
    static SignaturePtr s = make_signature({{"R", 2}});
    return s;
}

inline SignaturePtr order_sig() {
    static SignaturePtr s = make_signature({{"<", 2}});
    return s;
}

inline FinStructure graph(int n, const std::vector<std::pair<int, int>>& edges) {
    FinStructure g(graph_sig(), n);
    for (auto [a, b] : edges) {
        g.set(0, {a, b});
        g.set(0, {b, a});
    }
    return g;
}

// Chain ranks[0] < ranks[1] < ... listed as element ids.
inline FinStructure order(const std::vector<int>& chain) {
    FinStructure o(order_sig(), static_cast<int>(chain.size()));
    for (std::size_t i = 0; i < chain.size(); ++i)
        for (std::size_t j = i + 1; j < chain.size(); ++j) o.set(0, {chain[i], chain[j]});
    return o;
}

inline FinStructure clique_union(const std::vector<int>& sizes) {
    int n = std::accumulate(sizes.begin(), sizes.end(), 0);
    FinStructure g(graph_sig(), n);
    int off = 0;
    for (int s : sizes) {
        for (int a = off; a < off + s; ++a)
            for (int b = off; b < off + s; ++b)
                if (a != b) g.set(0, {a, b});
        off += s;
    }
    return g;
}

inline FinStructure random_structure(std::mt19937_64& rng, SignaturePtr sig, int n, double p = 0.4) {
    FinStructure s(sig, n);
    std::bernoulli_distribution coin(p);
    for (int sym = 0; sym < sig->size(); ++sym) {
        int ar = (*sig)[sym].arity;
        if (ar == 1) {
            for (int a = 0; a < n; ++a)
                if (coin(rng)) s.set(sym, {a});
        } else if (ar == 2) {
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    if (coin(rng)) s.set(sym, {a, b});
        }
    }
    return s;
}

inline FinStructure permuted(const FinStructure& s, const std::vector<int>& perm) {
    FinStructure out(s.signature_ptr(), s.size());
    for (int sym = 0; sym < s.signature().size(); ++sym)
        for (auto t : s.tuples(sym)) {
            for (int& x : t) x = perm[x];
            out.set(sym, t);
        }
    return out;
}

// Independent isomorphism oracle: tries every permutation.
inline bool iso_by_permutations(const FinStructure& a, const FinStructure& b) {
    if (a.size() != b.size()) return false;
    std::vector<int> perm(a.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        if (permuted(a, perm) == b) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

// Independent embedding count: all injections checked tuple by tuple.
inline int count_embeddings_naive(const FinStructure& a, const FinStructure& b) {
    int n = a.size(), m = b.size();
    std::vector<int> img(n, 0);
    int count = 0;
    auto rec = [&](auto&& self, int i) -> void {
        if (i == n) {
            for (int sym = 0; sym < a.signature().size(); ++sym) {
                if (a.signature()[sym].arity != 2) continue;
                for (int x = 0; x < n; ++x)
                    for (int y = 0; y < n; ++y)
                        if (a.holds2(sym, x, y) != b.holds2(sym, img[x], img[y])) return;
            }
            ++count;
            return;
        }
        for (int y = 0; y < m; ++y) {
            if (std::find(img.begin(), img.begin() + i, y) != img.begin() + i) continue;
            img[i] = y;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return count;
}

}  // namespace testing_helpers
