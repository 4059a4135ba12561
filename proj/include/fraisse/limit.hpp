#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fraisse/oracle.hpp"

namespace fraisse {

// Chain M_0 ⊆ ... ⊆ M_T; each stage is a prefix of the next, so the inclusions
// are identities on element ids.
struct LimitApprox {
    OraclePtr oracle;
    std::vector<FinStructure> stages;
    int k = 1;
    int m = 1;

    const FinStructure& top() const { return stages.back(); }
    int T() const { return static_cast<int>(stages.size()) - 1; }
};

// Subsets of {0..n-1} of size at most k, by size then lexicographically.
std::vector<std::vector<int>> anchors_up_to(int n, int k);

// Each step realizes every nontrivial type over every anchor of size <= k of the
// previous stage m times, adding points by strong amalgamation.
LimitApprox build_limit_approx(OraclePtr oracle, int k, int T, int m, const FinStructure& seed);

struct ClosureFailure {
    int stage = 0;  // anchor lives in this stage, realizations counted in the next
    std::vector<int> anchor;
    FinStructure type;  // extension over the anchor, new point last
    int realizations = 0;
    std::string side;  // partition checks: "A" or "complement"
};

struct ClosureReport {
    bool ok = true;
    std::string reason;
    std::optional<ClosureFailure> failure;
};

ClosureReport verify_extension_property(const LimitApprox& approx, int k);

struct AbsorbingPartition {
    std::vector<char> in_A;  // over the top stage
    int level = 1;

    std::vector<int> A() const;
    std::vector<int> complement() const;
    AbsorbingPartition flipped() const;
};

AbsorbingPartition build_absorbing_partition(const LimitApprox& approx);

// Every nontrivial type over an anchor of size <= level in M_{T-1} is realized in
// M_T on both sides.
ClosureReport check_absorbing_partition(const LimitApprox& approx, const AbsorbingPartition& part);

struct BackAndForthResult {
    PartialMap map;  // from A (top stage ids) into M_{T-1}
    int rounds_done = 0;
    bool exhausted = false;
};

BackAndForthResult back_and_forth(const LimitApprox& approx, const AbsorbingPartition& part, int rounds);

// Stages: one point per clique, then `cliques` cliques of `size`; the partition puts
// the first half of every clique in A.
struct Bundle {
    LimitApprox approx;
    AbsorbingPartition partition;
};

Bundle k2_clique_bundle(int cliques, int size);

}  // namespace fraisse
