#include "fraisse/limit.hpp"

#include <algorithm>

#include "fraisse/amalgam.hpp"

namespace fraisse {

std::vector<std::vector<int>> anchors_up_to(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start, int remaining) -> void {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        for (int x = start; x < n; ++x) {
            cur.push_back(x);
            self(self, x + 1, remaining - 1);
            cur.pop_back();
        }
    };
    for (int size = 0; size <= std::min(k, n); ++size) rec(rec, 0, size);
    return out;
}

LimitApprox build_limit_approx(OraclePtr oracle, int k, int T, int m, const FinStructure& seed) {
    if (!oracle->metadata().claims_sap)
        throw InputError("oracle " + oracle->name() + " does not claim SAP; points cannot be added freely");
    if (!oracle->member(seed)) throw InputError("seed is not a member of " + oracle->name());
    if (k < 0 || T < 0 || m < 1) throw InputError("need k >= 0, T >= 0, m >= 1");
    LimitApprox approx{oracle, {seed}, k, m};
    for (int t = 0; t < T; ++t) {
        const FinStructure& prev = approx.stages.back();
        FinStructure work = prev;
        for (const auto& X : anchors_up_to(prev.size(), k)) {
            FinStructure Xs = restrict_ordered(prev, X);
            PartialMap f;
            for (int i = 0; i < static_cast<int>(X.size()); ++i) f.set(i, X[i]);
            for (const auto& p : enumerate_rqf_types(prev, X, *oracle)) {
                for (int r = 0; r < m; ++r) {
                    AmalgamationProblem pr{Xs, work, p.extension, f,
                                           PartialMap::identity(static_cast<int>(X.size())), true};
                    auto res = amalgamate(pr, *oracle);
                    if (!res.amalgam)
                        throw std::runtime_error("no strong amalgam realizing a type over an anchor of size " +
                                                 std::to_string(X.size()) + " at stage " + std::to_string(t));
                    work = std::move(res.amalgam->D);
                }
            }
        }
        approx.stages.push_back(std::move(work));
    }
    return approx;
}

namespace {

std::vector<int> realizers(const FinStructure& s, const RqfType& p) {
    std::vector<int> out;
    for (int z = 0; z < s.size(); ++z)
        if (std::find(p.anchor.begin(), p.anchor.end(), z) == p.anchor.end() && realizes(s, p, z))
            out.push_back(z);
    return out;
}

}  // namespace

ClosureReport verify_extension_property(const LimitApprox& approx, int k) {
    ClosureReport rep;
    const ClassOracle& oracle = *approx.oracle;
    for (int t = 0; t <= approx.T(); ++t)
        if (!oracle.member(approx.stages[t])) {
            rep.ok = false;
            rep.reason = "stage " + std::to_string(t) + " is not a member of the class";
            return rep;
        }
    for (int t = 0; t < approx.T(); ++t) {
        const FinStructure& cur = approx.stages[t];
        const FinStructure& next = approx.stages[t + 1];
        std::vector<int> prefix(cur.size());
        for (int x = 0; x < cur.size(); ++x) prefix[x] = x;
        if (next.size() < cur.size() || !(restrict_ordered(next, prefix) == cur)) {
            rep.ok = false;
            rep.reason = "stage " + std::to_string(t) + " is not included in stage " + std::to_string(t + 1);
            return rep;
        }
        for (const auto& X : anchors_up_to(cur.size(), k))
            for (const auto& p : enumerate_rqf_types(cur, X, oracle)) {
                int count = static_cast<int>(realizers(next, p).size());
                if (count < approx.m) {
                    rep.ok = false;
                    rep.reason = "type over anchor realized " + std::to_string(count) + " times";
                    rep.failure = ClosureFailure{t, X, p.extension, count, ""};
                    return rep;
                }
            }
    }
    return rep;
}

std::vector<int> AbsorbingPartition::A() const {
    std::vector<int> out;
    for (int x = 0; x < static_cast<int>(in_A.size()); ++x)
        if (in_A[x]) out.push_back(x);
    return out;
}

std::vector<int> AbsorbingPartition::complement() const {
    std::vector<int> out;
    for (int x = 0; x < static_cast<int>(in_A.size()); ++x)
        if (!in_A[x]) out.push_back(x);
    return out;
}

AbsorbingPartition AbsorbingPartition::flipped() const {
    AbsorbingPartition out = *this;
    for (auto& v : out.in_A) v = !v;
    return out;
}

AbsorbingPartition build_absorbing_partition(const LimitApprox& approx) {
    if (approx.m < 2) throw InputError("absorbing partitions need multiplicity >= 2");
    if (approx.T() < 1) throw InputError("absorbing partitions need at least two stages");
    const FinStructure& prev = approx.stages[approx.T() - 1];
    const FinStructure& top = approx.top();
    std::vector<int> side(top.size(), -1);  // 1: A, 0: complement
    for (const auto& X : anchors_up_to(prev.size(), approx.k))
        for (const auto& p : enumerate_rqf_types(prev, X, *approx.oracle)) {
            int inA = 0, out = 0;
            auto zs = realizers(top, p);
            for (int z : zs) {
                if (side[z] == 1) ++inA;
                if (side[z] == 0) ++out;
            }
            for (int z : zs) {
                if (side[z] >= 0) continue;
                side[z] = inA <= out ? 1 : 0;
                (side[z] ? inA : out)++;
            }
        }
    AbsorbingPartition part;
    part.level = approx.k;
    part.in_A.resize(top.size());
    int next = 1;
    for (int x = 0; x < top.size(); ++x) {
        if (side[x] < 0) {
            side[x] = next;
            next = 1 - next;
        }
        part.in_A[x] = static_cast<char>(side[x]);
    }
    return part;
}

ClosureReport check_absorbing_partition(const LimitApprox& approx, const AbsorbingPartition& part) {
    ClosureReport rep;
    if (static_cast<int>(part.in_A.size()) != approx.top().size()) {
        rep.ok = false;
        rep.reason = "partition size differs from the top stage";
        return rep;
    }
    if (approx.T() < 1) return rep;
    const FinStructure& prev = approx.stages[approx.T() - 1];
    for (const auto& X : anchors_up_to(prev.size(), part.level))
        for (const auto& p : enumerate_rqf_types(prev, X, *approx.oracle)) {
            int inA = 0, out = 0;
            for (int z : realizers(approx.top(), p)) (part.in_A[z] ? inA : out)++;
            if (inA == 0 || out == 0) {
                rep.ok = false;
                rep.reason = std::string("type not realized in ") + (inA == 0 ? "A" : "the complement");
                rep.failure = ClosureFailure{approx.T() - 1, X, p.extension, inA == 0 ? inA : out,
                                             inA == 0 ? "A" : "complement"};
                return rep;
            }
        }
    return rep;
}

BackAndForthResult back_and_forth(const LimitApprox& approx, const AbsorbingPartition& part, int rounds) {
    if (approx.T() < 1) throw InputError("back and forth needs at least two stages");
    const FinStructure& top = approx.top();
    const int prev_n = approx.stages[approx.T() - 1].size();
    const std::vector<int> A = part.A();
    BackAndForthResult res;
    for (int r = 0; r < rounds; ++r) {
        bool added = false;
        if (r % 2 == 0) {
            for (int a : A) {
                if (res.map.contains(a)) continue;
                for (int b = 0; b < prev_n && !added; ++b)
                    if (!res.map.in_range(b) && extends_consistently(top, top, res.map, a, b)) {
                        res.map.set(a, b);
                        added = true;
                    }
                if (added) break;
            }
        } else {
            for (int b = 0; b < prev_n && !added; ++b) {
                if (res.map.in_range(b)) continue;
                for (int a : A)
                    if (!res.map.contains(a) && extends_consistently(top, top, res.map, a, b)) {
                        res.map.set(a, b);
                        added = true;
                        break;
                    }
            }
        }
        if (!added) {
            res.exhausted = true;
            break;
        }
        ++res.rounds_done;
    }
    return res;
}

Bundle k2_clique_bundle(int cliques, int size) {
    if (cliques < 1 || size < 2) throw InputError("need at least one clique of size >= 2");
    OraclePtr k2 = make_oracle("k2");
    FinStructure seed(k2->signature(), cliques);
    FinStructure top(k2->signature(), cliques * size);
    std::vector<std::vector<int>> members(cliques);
    for (int q = 0; q < cliques; ++q) {
        members[q].push_back(q);
        for (int j = 0; j < size - 1; ++j) members[q].push_back(cliques + q * (size - 1) + j);
    }
    for (const auto& cl : members)
        for (int a : cl)
            for (int b : cl)
                if (a != b) top.set(0, {a, b});
    Bundle b{LimitApprox{k2, {seed, top}, 1, 2}, {}};
    b.partition.level = 1;
    b.partition.in_A.assign(top.size(), 0);
    for (const auto& cl : members)
        for (int j = 0; j < size / 2; ++j) b.partition.in_A[cl[j]] = 1;
    return b;
}

}  // namespace fraisse
