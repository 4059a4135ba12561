#include <algorithm>
#include <map>

#include "fraisse/structure.hpp"

namespace fraisse {

namespace {

std::vector<int> rank_values(const std::vector<std::vector<long>>& sigs) {
    std::vector<std::vector<long>> sorted = sigs;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> out(sigs.size());
    for (std::size_t i = 0; i < sigs.size(); ++i)
        out[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sigs[i]) - sorted.begin());
    return out;
}

std::vector<int> refine_colours(const FinStructure& s, const std::vector<int>& input) {
    const int n = s.size();
    const Signature& sig = s.signature();
    std::vector<std::vector<long>> sigs(n);
    for (int v = 0; v < n; ++v) {
        sigs[v].push_back(input.empty() ? 0 : input[v]);
        for (int sym = 0; sym < sig.size(); ++sym) {
            if (sig[sym].arity == 1) sigs[v].push_back(s.holds1(sym, v));
            else if (sig[sym].arity == 2) sigs[v].push_back(s.holds2(sym, v, v));
        }
    }
    // tuple-position counts for higher arities
    for (int sym = 0; sym < sig.size(); ++sym) {
        if (sig[sym].arity < 3) continue;
        std::vector<std::vector<long>> cnt(n, std::vector<long>(sig[sym].arity, 0));
        for (const auto& t : s.tuples(sym))
            for (int i = 0; i < sig[sym].arity; ++i) cnt[t[i]][i]++;
        for (int v = 0; v < n; ++v) sigs[v].insert(sigs[v].end(), cnt[v].begin(), cnt[v].end());
    }
    std::vector<int> colour = rank_values(sigs);
    int classes = colour.empty() ? 0 : *std::max_element(colour.begin(), colour.end()) + 1;
    for (int round = 0; round < n; ++round) {
        std::vector<std::vector<long>> next(n);
        for (int v = 0; v < n; ++v) {
            next[v].push_back(colour[v]);
            std::vector<long> nb;
            for (int sym = 0; sym < sig.size(); ++sym) {
                if (sig[sym].arity != 2) continue;
                for (int u = 0; u < n; ++u) {
                    if (u == v) continue;
                    int code = s.holds2(sym, v, u) * 2 + s.holds2(sym, u, v);
                    if (code) nb.push_back((static_cast<long>(sym) * 4 + code) * (n + 1) + colour[u]);
                }
            }
            std::sort(nb.begin(), nb.end());
            next[v].insert(next[v].end(), nb.begin(), nb.end());
        }
        std::vector<int> nc = rank_values(next);
        int nclasses = *std::max_element(nc.begin(), nc.end()) + 1;
        colour = std::move(nc);
        if (nclasses == classes) break;
        classes = nclasses;
    }
    return colour;
}

struct Searcher {
    const FinStructure& s;
    std::vector<int> slot_colour;  // colour required at each position
    std::vector<int> colour;
    std::vector<int> order;
    std::vector<char> used;
    std::vector<std::vector<std::uint8_t>> cur, best;
    std::vector<int> best_order;
    bool have_best = false;

    void segment(int k, std::vector<std::uint8_t>& seg) const {
        seg.clear();
        const Signature& sig = s.signature();
        const int vk = order[k];
        for (int sym = 0; sym < sig.size(); ++sym) {
            const int ar = sig[sym].arity;
            if (ar == 1) {
                seg.push_back(s.holds1(sym, vk));
            } else if (ar == 2) {
                seg.push_back(s.holds2(sym, vk, vk));
                for (int j = 0; j < k; ++j) {
                    seg.push_back(s.holds2(sym, order[j], vk));
                    seg.push_back(s.holds2(sym, vk, order[j]));
                }
            } else {
                std::vector<int> idx(ar, 0);
                Tuple t(ar);
                while (true) {
                    bool has = false;
                    for (int i = 0; i < ar; ++i) {
                        has = has || idx[i] == k;
                        t[i] = order[idx[i]];
                    }
                    if (has) seg.push_back(s.holds(sym, t));
                    int p = ar - 1;
                    while (p >= 0 && ++idx[p] == k + 1) idx[p--] = 0;
                    if (p < 0) break;
                }
            }
        }
    }

    void run(int k, bool less) {
        const int n = s.size();
        if (k == n) {
            if (less || !have_best) {
                best = cur;
                best_order = order;
                have_best = true;
            }
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (used[v] || colour[v] != slot_colour[k]) continue;
            order[k] = v;
            used[v] = 1;
            segment(k, cur[k]);
            bool child_less = less || !have_best;
            bool prune = false;
            if (!child_less) {
                int c = cur[k] < best[k] ? -1 : (best[k] < cur[k] ? 1 : 0);
                if (c > 0) prune = true;
                else if (c < 0) child_less = true;
            }
            if (!prune) run(k + 1, child_less);
            used[v] = 0;
        }
    }
};

}  // namespace

Canonical canonical_form(const FinStructure& s, const std::vector<int>& colours) {
    const int n = s.size();
    if (!colours.empty() && static_cast<int>(colours.size()) != n)
        throw InputError("colouring size mismatch");
    Searcher se{s, {}, refine_colours(s, colours), std::vector<int>(n), std::vector<char>(n, 0),
                std::vector<std::vector<std::uint8_t>>(n), {}, {}, false};
    se.slot_colour = se.colour;
    std::sort(se.slot_colour.begin(), se.slot_colour.end());
    se.run(0, false);
    Canonical out;
    out.structure = restrict_ordered(s, se.best_order);
    out.relabel.assign(n, -1);
    for (int i = 0; i < n; ++i) out.relabel[se.best_order[i]] = i;
    return out;
}

std::string canonical_key(const FinStructure& s, const std::vector<int>& colours) {
    Canonical c = canonical_form(s, colours);
    std::string k = c.structure.key();
    if (!colours.empty()) {
        std::vector<int> cc(s.size());
        for (int v = 0; v < s.size(); ++v) cc[c.relabel[v]] = colours[v];
        k += '#';
        for (int x : cc) {
            k += std::to_string(x);
            k += ',';
        }
    }
    return k;
}

}  // namespace fraisse
