#pragma once

#include <optional>
#include <string>

#include "fraisse/oracle.hpp"

namespace fraisse {

struct AmalgamationProblem {
    FinStructure A, B, C;
    PartialMap f, g;  // A -> B, A -> C
    bool strong = false;
};

struct Amalgam {
    FinStructure D;
    PartialMap i, j;  // B -> D, C -> D
};

struct AmalgamResult {
    std::optional<Amalgam> amalgam;
    bool exhausted = false;  // budget ran out before the search finished
};

// B is kept as the first |B| points of D. Non-strong mode tries the largest
// identifications first, so the first hit has minimal |D|.
AmalgamResult amalgamate(const AmalgamationProblem& problem, const ClassOracle& oracle,
                         Budget* budget = nullptr);

enum class Property { HP, JEP, AP, SAP };
enum class Verdict { Holds, Fails, Inconclusive };

std::string to_string(Property p);
std::string to_string(Verdict v);
Property parse_property(const std::string& s);

struct PropertyReport {
    Property property = Property::HP;
    int bound = 0;
    Verdict verdict = Verdict::Holds;
    std::optional<AmalgamationProblem> counterexample;  // JEP/AP/SAP
    std::optional<FinStructure> hp_structure;           // HP: member with a bad substructure
    std::vector<int> hp_subset;
    int searched_up_to = 0;  // largest |D| considered for the counterexample
    std::uint64_t problems = 0;
};

// Exhaustive over members up to `bound` elements; node_budget bounds each amalgam search.
PropertyReport check_property(const ClassOracle& oracle, Property property, int bound,
                              std::uint64_t node_budget = 2'000'000);

struct TransportResult {
    RqfType type;
    bool anchor_consistent = true;  // f is an isomorphism of the anchor structures
    bool realized = true;           // the renamed extension lies in the class
};

TransportResult transport_type(const PartialMap& f, const RqfType& p, const FinStructure& target,
                               const ClassOracle& oracle);

}  // namespace fraisse
