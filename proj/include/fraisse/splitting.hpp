#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fraisse/oracle.hpp"

namespace fraisse {

// Two extensions D1, D2 of D that agree off C but are not isomorphic over D.
// Labels are shared: D is the prefix of both, f is the identity unless a caller
// supplies something else.
struct SplitWitness {
    FinStructure C, D;
    PartialMap i;  // C -> D
    FinStructure D1, D2;
    PartialMap j1, j2;  // D -> D1, D -> D2
    PartialMap f;       // D1 -> D2
    Violation violation;
};

enum class SplitVerdict { Splits, Blocked, Inconclusive };
std::string to_string(SplitVerdict v);

struct SplitSearch {
    SplitVerdict verdict = SplitVerdict::Splits;
    int bound = 0;
    int slack = 1;
    std::vector<SplitWitness> witnesses;  // one per enumerated (D, i) when splitting
    std::optional<FinStructure> blocked_D;  // C occupies positions 0..|C|-1
    std::optional<PartialMap> blocked_i;
    std::uint64_t pairs_checked = 0;
};

// Witness for one (D, i), searching D1 with up to `slack` new points.
std::optional<SplitWitness> witness_for(const ClassOracle& oracle, const FinStructure& C,
                                        const FinStructure& D, const PartialMap& i, int slack = 1,
                                        Budget* budget = nullptr);

// Every (D, i) with |D| <= size_bound, up to isomorphism over i(C).
SplitSearch find_split_witness(const ClassOracle& oracle, const FinStructure& C, int size_bound,
                               int slack = 1, std::uint64_t node_budget = 5'000'000);

bool verify_split_witness(const SplitWitness& w, const ClassOracle& oracle,
                          std::string* reason = nullptr);

struct ControlCertificate {
    FinStructure ambient;
    int c = 0;
    std::vector<int> K;  // sorted
    int verified_bound = 0;
};

struct ControlRefutation {
    PartialMap f;  // on F1 ∪ {c}, restriction to F1 an isomorphism, f itself not
};

// Check of the control condition for |F1| <= f_bound, F1 ranging over subsets of
// the ambient structure. With arities <= 2 a refutation restricts to one on
// K ∪ {x}, so only single extra points are tried; otherwise this is the
// exhaustive search below.
std::optional<ControlRefutation> refute_control(const FinStructure& ambient, int c,
                                                const std::vector<int>& K, int f_bound);
// Depth-first over increasing source points and all images.
std::optional<ControlRefutation> refute_control_exhaustive(const FinStructure& ambient, int c,
                                                           const std::vector<int>& K, int f_bound);
bool verify_control(const ControlCertificate& cert);

// Smallest K (by size, then lexicographically) avoiding `exclude`, drawn from the
// first `pool_size` elements (all when negative). F1 ranges over the whole stage.
std::optional<ControlCertificate> find_control(const FinStructure& stage, int c,
                                               const ClassOracle& oracle, int k_bound, int f_bound,
                                               const std::vector<int>& exclude = {},
                                               int pool_size = -1);

class ControlNotFound : public std::runtime_error {
public:
    explicit ControlNotFound(int point)
        : std::runtime_error("class is not known non-splitting at these bounds: no control for point " +
                             std::to_string(point)),
          point_(point) {}
    int point() const { return point_; }

private:
    int point_;
};

struct EquivalenceReport {
    std::vector<std::vector<int>> classes;  // sorted, ordered by least element
    std::vector<ControlCertificate> certificates;  // one per point, in `points` order
    bool consistent = true;  // the pair relation is an equivalence and types agree over common K
    std::string inconsistency;
};

// a ~ b when some K avoiding b controls a and a, b have the same type over K.
EquivalenceReport equivalence_classes(const FinStructure& stage, const ClassOracle& oracle,
                                      const std::vector<int>& points, int k_bound, int f_bound,
                                      int pool_size = -1);

struct TypePermutationReport {
    bool holds = true;
    std::uint64_t maps_checked = 0;
    std::optional<PartialMap> counterexample;
};

// For points controlled by K ⊆ F: every injection that embeds F and sends each c_i
// to a realization of its transported type over f(K) is an embedding.
TypePermutationReport check_type_permutations(const FinStructure& stage, const std::vector<int>& K,
                                               const std::vector<int>& F,
                                               const std::vector<int>& controlled);

}  // namespace fraisse
