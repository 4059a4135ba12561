#include "fraisse/extension.hpp"

#include <algorithm>

#include "fraisse/splitting.hpp"

namespace fraisse {

namespace {

bool restrictions_ok(const FinStructure& s, const PartialMap& f, int size) {
    const std::vector<int> dom = f.domain();
    for (const auto& pick : anchors_up_to(static_cast<int>(dom.size()), size)) {
        PartialMap r;
        for (int p : pick) r.set(dom[p], f.at(dom[p]));
        if (!r.is_injective() || find_violation(s, s, r)) return false;
    }
    return true;
}

}  // namespace

ExtensionResult extend_partial_isomorphism(const FinStructure& stage, const ClassOracle& oracle,
                                           const AbsorbingPartition& A, const AbsorbingPartition& B,
                                           const PartialMap& g, const std::vector<std::vector<int>>& classes,
                                           int k) {
    const int n = stage.size();
    if (static_cast<int>(A.in_A.size()) != n || static_cast<int>(B.in_A.size()) != n)
        throw InputError("partitions do not cover the stage");
    FinStructure point(oracle.signature(), 0);
    if (auto one = enumerate_members(oracle, 1); !one.empty()) point = one[0];
    if (find_split_witness(oracle, point, 4).verdict == SplitVerdict::Splits)
        throw InputError("class " + oracle.name() + " splits; partial isomorphisms need not extend");
    std::vector<int> cls(n, -1);
    for (int i = 0; i < static_cast<int>(classes.size()); ++i)
        for (int x : classes[i]) {
            if (x < 0 || x >= n || cls[x] >= 0) throw InputError("classes do not partition the stage");
            cls[x] = i;
        }
    if (std::find(cls.begin(), cls.end(), -1) != cls.end()) throw InputError("classes do not cover the stage");
    for (auto [a, b] : g.pairs()) {
        if (a < 0 || a >= n || !A.in_A[a]) throw InputError("g is defined outside A");
        if (b < 0 || b >= n || !B.in_A[b]) throw InputError("g maps outside B");
    }
    if (!g.is_injective() || find_violation(stage, stage, g)) throw InputError("g is not a partial isomorphism");

    const int m = static_cast<int>(classes.size());
    auto count = [&](int i, const AbsorbingPartition& p, bool inside) {
        int c = 0;
        for (int x : classes[i]) c += static_cast<bool>(p.in_A[x]) == inside;
        return c;
    };
    ExtensionResult res;
    res.class_image.assign(m, -1);
    std::vector<int> preimage(m, -1);
    std::vector<int> todo;
    for (int a = 0; a < n; ++a)
        if (A.in_A[a] && !g.contains(a)) todo.push_back(a);
    PartialMap f = g;

    // class map bookkeeping with undo
    auto bind = [&](int a, int b, std::vector<int>& bound_now) {
        const int i = cls[a], j = cls[b];
        if (res.class_image[i] == j) return true;
        if (res.class_image[i] >= 0 || preimage[j] >= 0) return false;
        if (count(i, A, true) != count(j, B, true) || count(i, A, false) != count(j, B, false)) return false;
        res.class_image[i] = j;
        preimage[j] = i;
        bound_now.push_back(i);
        return true;
    };
    auto unbind = [&](std::vector<int>& bound_now) {
        for (int i : bound_now) {
            preimage[res.class_image[i]] = -1;
            res.class_image[i] = -1;
        }
        bound_now.clear();
    };
    std::vector<int> seed_bound;
    for (auto [a, b] : g.pairs())
        if (!bind(a, b, seed_bound)) throw InputError("g does not respect the classes or their sizes");

    auto rec = [&](auto&& self, std::size_t idx) -> bool {
        if (idx == todo.size()) return true;
        const int a = todo[idx];
        for (int b = 0; b < n; ++b) {
            if (!B.in_A[b] || f.in_range(b) || !extends_consistently(stage, stage, f, a, b)) continue;
            std::vector<int> bound_now;
            if (!bind(a, b, bound_now)) continue;
            f.set(a, b);
            if (self(self, idx + 1)) return true;
            f.erase(a);
            unbind(bound_now);
        }
        return false;
    };
    if (!rec(rec, 0)) {
        res.failure = "g does not extend to an isomorphism from A onto B";
        return res;
    }
    res.on_A = f;
    // classes missing A get the remaining classes of matching size, in order
    for (int i = 0; i < m; ++i) {
        if (res.class_image[i] >= 0) continue;
        for (int j = 0; j < m; ++j)
            if (preimage[j] < 0 && count(i, A, false) == count(j, B, false) && count(i, A, true) == count(j, B, true)) {
                res.class_image[i] = j;
                preimage[j] = i;
                break;
            }
        if (res.class_image[i] < 0) throw InputError("block sizes outside A and B do not match");
    }
    for (int i = 0; i < m; ++i) {
        std::vector<int> src, dst;
        for (int x : classes[i])
            if (!A.in_A[x]) src.push_back(x);
        for (int y : classes[res.class_image[i]])
            if (!B.in_A[y]) dst.push_back(y);
        if (src.size() != dst.size()) throw InputError("block sizes outside A and B do not match");
        std::sort(src.begin(), src.end());
        std::sort(dst.begin(), dst.end());
        for (std::size_t t = 0; t < src.size(); ++t) f.set(src[t], dst[t]);
    }
    res.total = f;
    res.small_sets_ok = restrictions_ok(stage, f, k + 1);
    res.automorphism = static_cast<int>(f.size()) == n && f.is_injective() && is_embedding(stage, stage, f);
    res.ok = res.small_sets_ok && res.automorphism;
    if (!res.ok) res.failure = res.small_sets_ok ? "total map is not an automorphism" : "a small restriction fails";
    return res;
}

}  // namespace fraisse
