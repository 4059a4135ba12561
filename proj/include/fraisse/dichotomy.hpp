#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fraisse/limit.hpp"
#include "fraisse/splitting.hpp"

namespace fraisse {

struct DichotomyOptions {
    int bound = 4;
    int slack = 1;
    int max_c = -1;  // largest |C| tried; bound / 2 when negative
    int k_bound = 2;
    int f_bound = 3;
    int T = 3;  // control stage: c from M_{T-2}, K from M_{T-1}, F over M_T
    int m = 1;
    bool controls_when_split = false;
    std::uint64_t node_budget = 5'000'000;
};

struct BlockedCase {
    FinStructure C;
    FinStructure D;
    PartialMap i;
};

struct DichotomyReport {
    std::string oracle;
    DichotomyOptions options;
    SplitVerdict verdict = SplitVerdict::Inconclusive;
    std::optional<SplitSearch> split;  // the splitting C is split->witnesses[0].C
    std::vector<BlockedCase> blocked;  // one per C tried, when none splits
    std::optional<FinStructure> control_stage;
    std::vector<int> control_points;
    std::vector<ControlCertificate> certificates;
    std::vector<int> uncontrolled;
    std::vector<std::vector<int>> classes;
    std::string note;
};

// Looks for a splitting C of size <= max_c; if none exists at the bound, backs the
// negative answer with control certificates on a limit stage. A blocked search
// without certificates for every point is reported inconclusive.
DichotomyReport classify_splitting(OraclePtr oracle, const DichotomyOptions& opts = {});

// Same with a fixed C; controls are still computed when it is blocked.
DichotomyReport classify_splitting_at(OraclePtr oracle, const FinStructure& C, const DichotomyOptions& opts = {});

}  // namespace fraisse
