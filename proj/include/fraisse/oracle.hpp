#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fraisse/structure.hpp"

namespace fraisse {

// Tuples placed on a single new point p: unary (p) or binary (p,p).
struct SelfOption {
    std::vector<int> symbols;
};

// Tuples between a new point p and an existing point q: (symbol, 0) is (p,q), (symbol, 1) is (q,p).
struct LinkOption {
    std::vector<std::pair<int, int>> tuples;
};

struct ClassMetadata {
    bool claims_sap = false;
    std::optional<bool> claims_splits;
};

class ClassOracle {
public:
    virtual ~ClassOracle() = default;

    virtual std::string name() const = 0;
    virtual SignaturePtr signature() const = 0;
    virtual bool member(const FinStructure& s) const = 0;
    virtual ClassMetadata metadata() const = 0;

    // Is the substructure on `active` a member, given that it is one without p?
    virtual bool accepts_point(const FinStructure& s, const std::vector<int>& active, int p) const;

    // Candidate relation patterns for free decisions; membership prunes the rest.
    virtual std::vector<SelfOption> self_options() const;
    virtual std::vector<LinkOption> link_options() const;

    std::vector<RqfType> extend(const FinStructure& s, const std::vector<int>& anchor) const;
};

using OraclePtr = std::shared_ptr<const ClassOracle>;

// Keys: k1, k2, graphs, linear-orders, rational-metric[:den:diam], unary-marked,
// rs-example, mh:<|I|>:<gen>|<gen>... with generators as comma lists.
OraclePtr make_oracle(const std::string& key);
std::vector<std::string> builtin_oracle_names();

struct Budget {
    std::uint64_t limit = 0;  // 0: unlimited
    std::uint64_t used = 0;
    bool exhausted = false;
    bool tick() {
        ++used;
        if (limit && used > limit) exhausted = true;
        return !exhausted;
    }
};

// Backtracking completion of a partially decided structure. Points in `fresh`
// are activated in order; for each, its self tuples (unless decided) and its
// links to every earlier active point (unless decided) are chosen from the
// oracle's options, pruning by membership on the decided part.
struct Completion {
    FinStructure work;
    std::vector<int> active;                 // mutually decided points, link order for fresh points
    std::vector<int> fresh;
    std::vector<std::vector<char>> decided;  // decided[p][q]; decided[p][p] = self decided

    static Completion over(const FinStructure& base, int new_points);
};

// visit returns false to stop. Returns false if stopped early or the budget ran out.
bool complete(const ClassOracle& oracle, Completion c,
              const std::function<bool(const FinStructure&)>& visit, Budget* budget = nullptr);

std::vector<RqfType> enumerate_rqf_types(const FinStructure& s, const std::vector<int>& anchor,
                                         const ClassOracle& oracle, bool nontrivial_only = true);

// Members of size exactly n up to isomorphism, in canonical-key order.
std::vector<FinStructure> enumerate_members(const ClassOracle& oracle, int n);

}  // namespace fraisse
