#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fraisse/bm_game.hpp"
#include "fraisse/limit.hpp"
#include "fraisse/metric_oracle.hpp"
#include "fraisse/rational.hpp"

namespace fraisse {

struct MetricSpace {
    std::vector<std::vector<Rational>> d;
    std::optional<Rational> bound;

    int size() const { return static_cast<int>(d.size()); }
    Rational diameter() const;
};

// First defect in the metric axioms (and the bound), or nullopt.
std::optional<std::string> metric_defect(const MetricSpace& X);
MetricSpace metric_from_structure(const MetricClass& oracle, const FinStructure& s);
FinStructure structure_from_metric(const MetricClass& oracle, const MetricSpace& X);

// A function on support points of a space.
struct KatetovMap {
    std::vector<int> support;
    std::vector<Rational> values;

    Rational at(int x) const;
    bool defined(int x) const;
};

struct KatetovViolation {
    int x = -1, y = -1;
    std::string inequality;  // "difference" or "sum"
};

std::optional<KatetovViolation> katetov_violation(const MetricSpace& X, const KatetovMap& g);
inline bool is_katetov(const MetricSpace& X, const KatetovMap& g) { return !katetov_violation(X, g); }

// g_x(y) = d(x, y) on the given support.
KatetovMap distance_map(const MetricSpace& X, int x, const std::vector<int>& support);

// Extension to `targets` by min over the support of g(y) + d(x, y).
KatetovMap katetov_extension(const MetricSpace& X, const KatetovMap& g, const std::vector<int>& targets);

// max |g1 - g2| over the common support.
Rational sup_distance(const KatetovMap& g1, const KatetovMap& g2);

struct SplitPair {
    KatetovMap g1, g2;
    Rational D, delta;
    bool capped = false;  // values were lowered to the space bound
    bool verified = false;
};

// On support {c} ∪ others: g1 = 2D everywhere, g2 = g1 except g2(c) = 2D - δ with δ the
// midpoint of (ε, d_star). With `cap`, 2D is replaced by min(2D, cap) and the result
// rechecked.
SplitPair split_pair(const MetricSpace& X, int c, const std::vector<int>& others, const Rational& d_star,
                     const Rational& eps, std::optional<Rational> cap = std::nullopt);

struct UrysohnBuild {
    std::shared_ptr<const MetricClass> oracle;
    LimitApprox approx;
    std::vector<MetricSpace> stages;
};

// Stages realize every Katětov map with support of size <= 2, values on the grid,
// m times; sphere means diameter 1.
UrysohnBuild build_rational_urysohn(int levels, int denominator_bound, const Rational& diameter_bound,
                                    bool sphere, int m = 1);

// All Katětov maps on `support` with values q/den, 0 < value <= vmax.
std::vector<KatetovMap> katetov_grid(const MetricSpace& X, const std::vector<int>& support, int den,
                                     const Rational& vmax);

struct ExtensionFailure {
    KatetovMap g;
    Rational best_error;
};

struct ApproxExtensionReport {
    bool ok = true;
    std::uint64_t maps_checked = 0;
    std::optional<ExtensionFailure> failure;
};

// Supports are nonempty subsets of the first `pool` points (all when negative) of size
// <= support_bound; a map is ε-realized by z when |d(z, y) - g(y)| <= ε on the support.
ApproxExtensionReport check_approx_extension(const MetricSpace& X, const Rational& eps, int support_bound,
                                             int den, const Rational& vmax, int pool = -1);

struct Deletion {
    int center = 0;
    Rational radius;
    Rational shrink = Rational(1);  // removes points at distance < radius * shrink
};

struct CarveReport {
    std::vector<int> F;
    bool empty = false;
    ApproxExtensionReport absorption;  // maps with g(x) > d(x, F) must be realized exactly in F
};

CarveReport carve_absorbing_subspace(const MetricSpace& X, const std::vector<Deletion>& deletions,
                                     int support_bound, int den, const Rational& vmax, int pool = -1);

// Metric game: partial isometries with radii.
struct MetricGameSetup {
    MetricSpace space;
    std::vector<char> in_A, in_B;
    int c_star = -1;
    Rational d_star, eps;
    std::vector<std::vector<int>> cells;  // cover of B^c, each of diameter < ε/2
};

struct MetricMove {
    PartialMap f;
    Rational radius;
};

struct MetricCertificate {
    int cell = -1;  // -1: no cell was reachable
    std::uint64_t extensions_checked = 0;
    std::uint64_t landing_in_cell = 0;
    bool holds() const { return landing_in_cell == 0; }
};

struct MetricRound {
    MetricMove move;
    int cell = -1;
    bool exact_split_pair = false;  // realized the split_pair maps exactly, else a realized pair of the same shape
    KatetovMap g1, g2;
    int z = -1, z2 = -1;
    MetricMove reply;
    MetricCertificate certificate;
};

struct MetricGameState {
    std::shared_ptr<const MetricGameSetup> setup;
    std::vector<MetricRound> rounds;
    std::vector<int> excluded;
    bool aborted = false;
    std::string abort_reason;

    MetricMove current() const;
};

// c* is the least complement point of A inside the first `prefix` points; d_star is half
// its distance to A and ε half of d_star.
std::shared_ptr<const MetricGameSetup> new_metric_game(const MetricSpace& space, const AbsorbingPartition& A,
                                                       const AbsorbingPartition& B, int prefix);

// Throws IllegalMove on distortion, shrinking domains, images of earlier points moved
// farther than the last radius, or growing radii; a distortion is
// reported as a Violation with symbol -2 on the offending pair.
void check_metric_move(const MetricGameState& state, const MetricMove& move);
MetricCertificate metric_exclusion_by_search(const MetricGameSetup& setup, const MetricMove& reply, int cell);
const MetricRound* metric_splitter_reply(MetricGameState& state, const MetricMove& move);
// Rebuilds the setup from the space and both sides, replays every move and compares
// replies, realizations and certificate counts.
ReplayReport check_metric_transcript(const MetricGameState& transcript);

// One exact-isometry pair on top of current(), or current() itself when none is left.
MetricMove metric_player_one_move(const MetricGameState& state, bool random_policy, std::mt19937_64& rng);

MetricGameState run_metric_game(std::shared_ptr<const MetricGameSetup> setup, int rounds, std::uint64_t seed,
                                bool random_policy);

}  // namespace fraisse
