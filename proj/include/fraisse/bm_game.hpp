#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "fraisse/limit.hpp"
#include "fraisse/splitting.hpp"

namespace fraisse {

// Player I moved outside the rules; `violation` is set when the move is not a partial isomorphism.
class IllegalMove : public std::runtime_error {
public:
    IllegalMove(const std::string& what, std::optional<Violation> v = std::nullopt)
        : std::runtime_error(what), violation(std::move(v)) {}
    std::optional<Violation> violation;
};

struct GameSetup {
    Bundle bundle;
    AbsorbingPartition partB;  // B side; equal to the bundle's partition by default
    FinStructure C;
    std::vector<int> c_star;  // C embedded in the complement of A, position x holds C's element x
    int g_cap = 2;            // largest |dom g| in the enumeration
    std::vector<PartialMap> g_list;

    const FinStructure& stage() const { return bundle.approx.top(); }
    const AbsorbingPartition& partA() const { return bundle.partition; }
};

// Partial isomorphisms g of the stage with c_star ⊆ dom g ⊆ A^c, ran g ⊆ B^c and
// |dom g| <= cap, by size, then domain, then images.
std::vector<PartialMap> enumerate_g_list(const FinStructure& stage, const AbsorbingPartition& A,
                                         const AbsorbingPartition& B, const std::vector<int>& c_star, int cap);

// Refuses when the class is not seen to split around C at bound 4, or when C has no
// copy inside A^c. Copies inside M_{T-1} are preferred so absorption applies to them.
// A negative g_cap means |C|.
std::shared_ptr<const GameSetup> new_game(const Bundle& bundle, const FinStructure& C, int g_cap = -1,
                                          std::optional<AbsorbingPartition> partB = std::nullopt);

struct ExclusionCertificate {
    int k = -1;  // -1: no g in the list was compatible with the move
    std::uint64_t extensions_checked = 0;
    std::uint64_t compatible_found = 0;
    bool holds() const { return compatible_found == 0; }
};

struct GameRound {
    PartialMap move;
    int k = -1;
    std::vector<int> D;  // dom of move ∪ g_k, c_star first
    std::optional<SplitWitness> witness;
    int w1 = -1, w2 = -1;  // realizations of the new witness point in A and B
    PartialMap reply;
    ExclusionCertificate certificate;
};

struct GameState {
    std::shared_ptr<const GameSetup> setup;
    std::string policy;
    std::vector<GameRound> rounds;
    std::vector<int> excluded;
    bool aborted = false;
    std::optional<PartialMap> abort_move;
    std::string abort_reason;

    PartialMap current() const { return rounds.empty() ? PartialMap{} : rounds.back().reply; }
};

// Throws IllegalMove unless move ⊇ current(), dom ⊆ A, ran ⊆ B and move is a partial isomorphism.
void check_move(const GameState& state, const PartialMap& move);

// Every partial isomorphism extending h and defined on c_star, checked against g.
ExclusionCertificate exclusion_by_search(const GameSetup& setup, const PartialMap& h, int k);

// Player II. Appends and returns a round; returns null and sets `aborted` when the
// stage has no room left for a split witness.
const GameRound* splitter_reply(GameState& state, const PartialMap& move);

enum class PolicyKind { MinimalLegal, Random, Adversarial };
struct Policy {
    PolicyKind kind = PolicyKind::MinimalLegal;
    std::uint64_t seed = 0;
};
// "minimal-legal", "random:<seed>" (seed defaults to 0), "adversarial-toward-g0".
Policy parse_policy(const std::string& s);
std::string to_string(const Policy& p);

// One new pair on top of current(), or current() itself when no legal pair exists.
PartialMap player_one_move(const GameState& state, const Policy& policy, std::mt19937_64& rng);

GameState run_auto_game(std::shared_ptr<const GameSetup> setup, int rounds, const Policy& policy);

struct ReplayReport {
    bool ok = true;
    int failed_round = -1;
    std::string reason;
};

// Rebuilds the setup from the bundle and C, replays the recorded moves and rederives
// every reply and certificate.
ReplayReport check_exclusion(const GameState& transcript);

// The union of the replies admits no extension on c_star compatible with any excluded g.
bool final_position_excludes_all(const GameState& state);

}  // namespace fraisse
