#pragma once

#include <string>
#include <vector>

#include "fraisse/limit.hpp"

namespace fraisse {

struct ExtensionResult {
    bool ok = false;
    PartialMap on_A;   // g extended to an isomorphism ⟨A⟩ -> ⟨B⟩
    PartialMap total;  // on the whole stage
    std::vector<int> class_image;  // class i goes to class_image[i]
    bool small_sets_ok = false;    // every restriction to <= k+1 points is a partial isomorphism
    bool automorphism = false;
    std::string failure;
};

// Extends g (dom ⊆ A, ran ⊆ B) by first completing it on A, then sending each
// class's part outside A to the image class's part outside B in increasing order.
// `classes` must partition the stage. Throws InputError for illegal g, unsplit
// preconditions, or block sizes that do not match.
ExtensionResult extend_partial_isomorphism(const FinStructure& stage, const ClassOracle& oracle,
                                           const AbsorbingPartition& A, const AbsorbingPartition& B,
                                           const PartialMap& g, const std::vector<std::vector<int>>& classes,
                                           int k = 1);

}  // namespace fraisse
