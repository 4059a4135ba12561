#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fraisse/limit.hpp"
#include "fraisse/mh.hpp"

namespace fraisse {

struct AutGroup {
    std::uint64_t order = 1;
    std::vector<Perm> generators;       // transversal elements of a stabilizer chain
    std::vector<int> orbit_sizes;       // |orbit of point i under the stabilizer of 0..i-1|
};

constexpr int kAutomorphismCap = 12;

// Stabilizer chain by backtracking; refuses structures above `cap` elements.
AutGroup automorphism_group(const FinStructure& s, int cap = kAutomorphismCap);

// An automorphism extending `fixed`, if one exists.
std::optional<Perm> find_automorphism(const FinStructure& s, const PartialMap& fixed);
bool is_automorphism(const FinStructure& s, const Perm& p);

// Orbits of the group generated by `gens`, sorted by least element.
std::vector<std::vector<int>> orbits(const std::vector<Perm>& gens, int n);

struct WreathReport {
    bool classes_preserved = true;
    bool kernel_full = true;
    bool order_equation = true;
    std::optional<bool> h_matches;  // set when an expected H was given
    std::uint64_t order = 0;
    std::uint64_t block_product = 1;  // product of n_i!
    std::vector<Perm> H_induced;      // closure of the induced action on class indices
    std::optional<Perm> failing_automorphism;
    std::optional<std::pair<int, int>> missing_transposition;
    std::string message;

    bool passed() const { return classes_preserved && kernel_full && order_equation && h_matches.value_or(true); }
};

// `classes` partitions the domain; H_expected is a generator list on class indices.
WreathReport verify_wreath_factorization(const FinStructure& s, const std::vector<std::vector<int>>& classes,
                                         const std::optional<std::vector<Perm>>& H_expected = std::nullopt);

struct TypeTreeNode {
    std::vector<int> copy;            // an embedding of C0, position x holds C0's element x
    std::vector<int> base;            // sets chosen before this node split; children agree over it
    std::vector<int> distinguisher;   // separates the two children over base, empty at leaves
    int parent = -1;
};

struct TypeTree {
    int depth = 0;
    int reached = 0;                   // depth actually built
    std::vector<TypeTreeNode> nodes;   // level by level, root first
    std::vector<int> leaves;           // node indices
    std::vector<int> F;                // union of every distinguisher, sorted
    std::string note;
};

// Greedy Cantor scheme in the top stage: each node splits into itself and a copy of C0 with
// the same type over the sets chosen so far, separated by one new point. Refused when the
// class is not seen to split around C0 at bound 4.
TypeTree type_splitting_tree(const LimitApprox& approx, const FinStructure& C0, int depth);

// Leaves pairwise differ over F, siblings agree over the sets above them.
bool verify_type_tree(const LimitApprox& approx, const TypeTree& tree, std::string* reason = nullptr);

}  // namespace fraisse
