#include "fraisse/amalgam.hpp"

#include <algorithm>
#include <set>

namespace fraisse {

std::string to_string(Property p) {
    switch (p) {
        case Property::HP: return "HP";
        case Property::JEP: return "JEP";
        case Property::AP: return "AP";
        case Property::SAP: return "SAP";
    }
    return "?";
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "holds-up-to-bound";
        case Verdict::Fails: return "counterexample";
        case Verdict::Inconclusive: return "inconclusive-at-bound";
    }
    return "?";
}

Property parse_property(const std::string& s) {
    if (s == "HP") return Property::HP;
    if (s == "JEP") return Property::JEP;
    if (s == "AP") return Property::AP;
    if (s == "SAP") return Property::SAP;
    throw InputError("unknown property '" + s + "'");
}

namespace {

// Tries one identification pattern: jmap sends C points to D points (-1: fresh).
std::optional<Amalgam> try_pattern(const AmalgamationProblem& pr, const ClassOracle& oracle,
                                   const std::vector<int>& jmap0, Budget* budget, bool& exhausted) {
    const FinStructure& B = pr.B;
    const FinStructure& C = pr.C;
    PartialMap partial;
    for (int c = 0; c < C.size(); ++c)
        if (jmap0[c] >= 0) {
            if (!extends_consistently(C, B, partial, c, jmap0[c])) return std::nullopt;
            partial.set(c, jmap0[c]);
        }
    std::vector<int> jmap = jmap0;
    int fresh = 0;
    for (int c = 0; c < C.size(); ++c)
        if (jmap[c] < 0) jmap[c] = B.size() + fresh++;
    Completion comp = Completion::over(B, fresh);
    const Signature& sig = C.signature();
    // prescribe every relation among images of C
    for (int c1 = 0; c1 < C.size(); ++c1)
        for (int c2 = 0; c2 < C.size(); ++c2) {
            const int d1 = jmap[c1], d2 = jmap[c2];
            if (d1 < B.size() && d2 < B.size()) continue;
            comp.decided[d1][d2] = comp.decided[d2][d1] = 1;
            for (int s = 0; s < sig.size(); ++s) {
                if (sig[s].arity == 1 && c1 == c2 && C.holds1(s, c1)) comp.work.set(s, {d1});
                if (sig[s].arity == 2 && C.holds2(s, c1, c2)) comp.work.set(s, {d1, d2});
            }
        }
    for (int s = 0; s < sig.size(); ++s) {
        if (sig[s].arity < 3) continue;
        for (auto t : C.tuples(s)) {
            for (int& x : t) x = jmap[x];
            comp.work.set(s, t);
        }
    }
    std::optional<Amalgam> found;
    bool finished = complete(oracle, std::move(comp), [&](const FinStructure& d) {
        found = Amalgam{d, PartialMap::identity(B.size()), PartialMap::from_vector(jmap)};
        return false;
    }, budget);
    if (!finished && !found) exhausted = true;
    return found;
}

}  // namespace

AmalgamResult amalgamate(const AmalgamationProblem& pr, const ClassOracle& oracle, Budget* budget) {
    if (!is_embedding(pr.A, pr.B, pr.f) || pr.f.size() != static_cast<std::size_t>(pr.A.size()))
        throw InputError("f is not an embedding of A into B");
    if (!is_embedding(pr.A, pr.C, pr.g) || pr.g.size() != static_cast<std::size_t>(pr.A.size()))
        throw InputError("g is not an embedding of A into C");
    AmalgamResult res;
    std::vector<int> base(pr.C.size(), -1);
    for (auto [a, c] : pr.g.pairs()) base[c] = pr.f.at(a);
    std::vector<int> rest;
    for (int c = 0; c < pr.C.size(); ++c)
        if (base[c] < 0) rest.push_back(c);
    std::vector<int> targets;
    for (int b = 0; b < pr.B.size(); ++b)
        if (!pr.f.in_range(b)) targets.push_back(b);

    const int max_ident = pr.strong ? 0 : static_cast<int>(std::min(rest.size(), targets.size()));
    for (int size = max_ident; size >= 0; --size) {
        // choose `size` points of rest (in order) and injective targets
        std::vector<int> jmap = base;
        std::vector<char> used(pr.B.size(), 0);
        std::optional<Amalgam> hit;
        auto rec = [&](auto&& self, std::size_t idx, int remaining) -> bool {
            if (remaining == 0) {
                hit = try_pattern(pr, oracle, jmap, budget, res.exhausted);
                return hit.has_value() || (budget && budget->exhausted);
            }
            if (rest.size() - idx < static_cast<std::size_t>(remaining)) return false;
            const int c = rest[idx];
            for (int b : targets) {
                if (used[b]) continue;
                jmap[c] = b;
                used[b] = 1;
                bool stop = self(self, idx + 1, remaining - 1);
                used[b] = 0;
                jmap[c] = -1;
                if (stop) return true;
            }
            return self(self, idx + 1, remaining);
        };
        rec(rec, 0, size);
        if (hit) {
            res.amalgam = std::move(hit);
            res.exhausted = false;
            return res;
        }
        if (budget && budget->exhausted) return res;
    }
    return res;
}

namespace {

std::vector<PartialMap> embedding_orbit_reps(const FinStructure& a, const FinStructure& b) {
    auto auts = find_embeddings(b, b);
    std::vector<PartialMap> out;
    std::set<std::vector<int>> seen;
    for (const auto& e : find_embeddings(a, b)) {
        std::vector<int> best;
        for (const auto& s : auts) {
            std::vector<int> img(a.size());
            for (int x = 0; x < a.size(); ++x) img[x] = s.at(e.at(x));
            if (best.empty() || img < best) best = img;
        }
        if (best.empty()) best.assign(0, 0);
        if (seen.insert(best).second) out.push_back(PartialMap::from_vector(best));
    }
    return out;
}

}  // namespace

PropertyReport check_property(const ClassOracle& oracle, Property property, int bound,
                              std::uint64_t node_budget) {
    if (bound < 1) throw InputError("bound must be ≥ 1");
    PropertyReport rep;
    rep.property = property;
    rep.bound = bound;
    std::vector<std::vector<FinStructure>> members(bound + 1);
    for (int n = 0; n <= bound; ++n) members[n] = enumerate_members(oracle, n);

    if (property == Property::HP) {
        for (int n = 1; n <= bound; ++n)
            for (const auto& m : members[n])
                for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
                    ++rep.problems;
                    std::vector<int> sub;
                    for (int x = 0; x < n; ++x)
                        if (mask >> x & 1) sub.push_back(x);
                    if (!oracle.member(induced_substructure(m, sub).structure)) {
                        rep.verdict = Verdict::Fails;
                        rep.hp_structure = m;
                        rep.hp_subset = sub;
                        return rep;
                    }
                }
        return rep;
    }

    bool any_exhausted = false;
    auto run = [&](AmalgamationProblem pr) -> bool {
        ++rep.problems;
        Budget budget{node_budget};
        bool strong_only = property == Property::SAP;
        pr.strong = true;
        AmalgamResult r = amalgamate(pr, oracle, &budget);
        if (!r.amalgam && !strong_only && !r.exhausted) {
            pr.strong = false;
            Budget b2{node_budget};
            r = amalgamate(pr, oracle, &b2);
        }
        if (r.amalgam) return true;
        if (r.exhausted) {
            any_exhausted = true;
            return true;
        }
        pr.strong = strong_only;
        rep.verdict = Verdict::Fails;
        rep.searched_up_to = pr.B.size() + pr.C.size() - (strong_only ? pr.A.size() : 0);
        rep.counterexample = std::move(pr);
        return false;
    };

    if (property == Property::JEP) {
        FinStructure empty(oracle.signature(), 0);
        std::vector<const FinStructure*> all;
        for (int n = 0; n <= bound; ++n)
            for (const auto& m : members[n]) all.push_back(&m);
        for (std::size_t x = 0; x < all.size(); ++x)
            for (std::size_t y = x; y < all.size(); ++y)
                if (!run({empty, *all[x], *all[y], PartialMap{}, PartialMap{}, false})) return rep;
    } else {
        for (int a = 0; a <= bound; ++a)
            for (const auto& A : members[a]) {
                std::vector<std::pair<const FinStructure*, PartialMap>> exts;
                for (int b = a + 1; b <= bound; ++b)
                    for (const auto& B : members[b])
                        for (auto& f : embedding_orbit_reps(A, B)) exts.push_back({&B, f});
                for (std::size_t x = 0; x < exts.size(); ++x)
                    for (std::size_t y = x; y < exts.size(); ++y)
                        if (!run({A, *exts[x].first, *exts[y].first, exts[x].second, exts[y].second,
                                  false}))
                            return rep;
            }
    }
    if (any_exhausted) rep.verdict = Verdict::Inconclusive;
    return rep;
}

TransportResult transport_type(const PartialMap& f, const RqfType& p, const FinStructure& target,
                               const ClassOracle& oracle) {
    TransportResult out;
    std::vector<int> anchor;
    for (int x : p.anchor) {
        auto y = f.get(x);
        if (!y) throw InputError("anchor element " + std::to_string(x) + " not covered by the map");
        anchor.push_back(*y);
    }
    std::vector<int> sorted = anchor;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InputError("map is not injective on the anchor");
    FinStructure anchor_struct = restrict_ordered(target, anchor);
    out.type.anchor = anchor;
    out.type.nontrivial = p.nontrivial;
    out.type.equals_anchor = p.equals_anchor;
    if (!p.nontrivial) {
        out.anchor_consistent = anchor_struct == p.extension;
        out.type.extension = anchor_struct;
        out.realized = oracle.member(anchor_struct);
        return out;
    }
    std::vector<int> first(p.anchor.size());
    for (std::size_t i = 0; i < first.size(); ++i) first[i] = static_cast<int>(i);
    out.anchor_consistent = restrict_ordered(p.extension, first) == anchor_struct;
    out.type.extension = replace_anchor_structure(p.extension, anchor_struct);
    out.realized = oracle.member(out.type.extension);
    return out;
}

}  // namespace fraisse
