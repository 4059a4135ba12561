#include "fraisse/splitting.hpp"

#include <algorithm>
#include <map>

namespace fraisse {

std::string to_string(SplitVerdict v) {
    switch (v) {
        case SplitVerdict::Splits: return "splits-up-to-bound";
        case SplitVerdict::Blocked: return "does-not-split-up-to-bound";
        case SplitVerdict::Inconclusive: return "inconclusive-at-bound";
    }
    return "?";
}

namespace {

// D2 candidates: D1 with every (C point, new point) pair undecided.
std::optional<FinStructure> toggle_search(const ClassOracle& oracle, const FinStructure& D1,
                                          const std::vector<int>& cpos, int d_size, Budget* budget) {
    const int n = D1.size();
    Completion comp;
    comp.work = D1;
    comp.decided.assign(n, std::vector<char>(n, 1));
    for (int w = d_size; w < n; ++w) {
        for (int c : cpos) {
            comp.work.clear_pair(c, w);
            comp.decided[w][c] = comp.decided[c][w] = 0;
        }
        comp.fresh.push_back(w);
    }
    for (int a = 0; a < d_size; ++a) comp.active.push_back(a);
    std::optional<FinStructure> out;
    complete(oracle, std::move(comp), [&](const FinStructure& d2) {
        if (d2 == D1) return true;
        out = d2;
        return false;
    }, budget);
    return out;
}

}  // namespace

std::optional<SplitWitness> witness_for(const ClassOracle& oracle, const FinStructure& C,
                                        const FinStructure& D, const PartialMap& i, int slack,
                                        Budget* budget) {
    std::vector<int> cpos = i.range();
    for (int s = 1; s <= slack; ++s) {
        std::optional<SplitWitness> found;
        complete(oracle, Completion::over(D, s), [&](const FinStructure& d1) {
            auto d2 = toggle_search(oracle, d1, cpos, D.size(), budget);
            if (budget && budget->exhausted) return false;
            if (!d2) return true;
            SplitWitness w{C, D, i, d1, *d2, PartialMap::identity(D.size()),
                           PartialMap::identity(D.size()), PartialMap::identity(d1.size()), {}};
            w.violation = *find_violation(d1, *d2, w.f);
            found = std::move(w);
            return false;
        }, budget);
        if (found || (budget && budget->exhausted)) return found;
    }
    return std::nullopt;
}

SplitSearch find_split_witness(const ClassOracle& oracle, const FinStructure& C, int size_bound,
                               int slack, std::uint64_t node_budget) {
    if (!oracle.member(C)) throw InputError("C is not a member of " + oracle.name());
    SplitSearch out;
    out.bound = size_bound;
    out.slack = slack;
    std::vector<int> colours(C.size());
    for (int x = 0; x < C.size(); ++x) colours[x] = x + 1;
    const PartialMap i = PartialMap::identity(C.size());
    for (int size = C.size(); size <= size_bound; ++size) {
        std::map<std::string, FinStructure> ds;
        std::vector<int> col = colours;
        col.resize(size, 0);
        complete(oracle, Completion::over(C, size - C.size()), [&](const FinStructure& d) {
            ds.emplace(canonical_key(d, col), d);
            return true;
        });
        for (const auto& [key, D] : ds) {
            ++out.pairs_checked;
            Budget budget{node_budget};
            auto w = witness_for(oracle, C, D, i, slack, &budget);
            if (w) {
                out.witnesses.push_back(std::move(*w));
                continue;
            }
            out.verdict = budget.exhausted ? SplitVerdict::Inconclusive : SplitVerdict::Blocked;
            out.blocked_D = D;
            out.blocked_i = i;
            out.witnesses.clear();
            return out;
        }
    }
    return out;
}

namespace {

bool total_on(const PartialMap& m, int n) {
    if (static_cast<int>(m.size()) != n) return false;
    for (int x = 0; x < n; ++x)
        if (!m.contains(x)) return false;
    return true;
}

bool fail(std::string* reason, const std::string& msg) {
    if (reason) *reason = msg;
    return false;
}

}  // namespace

bool verify_split_witness(const SplitWitness& w, const ClassOracle& oracle, std::string* reason) {
    if (!total_on(w.i, w.C.size()) || !is_embedding(w.C, w.D, w.i)) return fail(reason, "i is not an embedding of C into D");
    if (!total_on(w.j1, w.D.size()) || !is_embedding(w.D, w.D1, w.j1)) return fail(reason, "j1 is not an embedding of D into D1");
    if (!total_on(w.j2, w.D.size()) || !is_embedding(w.D, w.D2, w.j2)) return fail(reason, "j2 is not an embedding of D into D2");
    if (!oracle.member(w.D1)) return fail(reason, "D1 is not in the class");
    if (!oracle.member(w.D2)) return fail(reason, "D2 is not in the class");
    if (w.D1.size() != w.D2.size() || !total_on(w.f, w.D1.size()) || !w.f.is_injective())
        return fail(reason, "f is not a bijection D1 -> D2");
    for (int x : w.f.range())
        if (x < 0 || x >= w.D2.size()) return fail(reason, "f leaves D2");
    if (!(w.f.compose(w.j1) == w.j2)) return fail(reason, "f o j1 differs from j2");
    std::vector<int> cimg;
    for (int x : w.i.range()) cimg.push_back(w.j1.at(x));
    std::vector<int> rest;
    for (int x = 0; x < w.D1.size(); ++x)
        if (std::find(cimg.begin(), cimg.end(), x) == cimg.end()) rest.push_back(x);
    if (!is_embedding(w.D1, w.D2, w.f.restrict_to(rest)))
        return fail(reason, "f is not an isomorphism off C");
    if (!find_violation(w.D1, w.D2, w.f)) return fail(reason, "f is an isomorphism of D1 and D2");
    return true;
}

}  // namespace fraisse
