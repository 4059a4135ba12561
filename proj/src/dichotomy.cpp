#include "fraisse/dichotomy.hpp"

namespace fraisse {

namespace {

void attach_controls(DichotomyReport& rep, OraclePtr oracle, const DichotomyOptions& opts) {
    if (!oracle->metadata().claims_sap) {
        rep.note = "no control stage: the class does not claim SAP";
        return;
    }
    if (opts.T < 2) throw InputError("control stages need T >= 2");
    auto seeds = enumerate_members(*oracle, 1);
    if (seeds.empty()) throw InputError("class has no one-point member");
    LimitApprox approx = build_limit_approx(oracle, 1, opts.T, opts.m, seeds[0]);
    const FinStructure& stage = approx.top();
    const int pool = approx.stages[opts.T - 1].size();
    rep.control_stage = stage;
    for (int c = 0; c < approx.stages[opts.T - 2].size(); ++c) {
        rep.control_points.push_back(c);
        auto cert = find_control(stage, c, *oracle, opts.k_bound, opts.f_bound, {}, pool);
        if (cert) rep.certificates.push_back(*cert);
        else rep.uncontrolled.push_back(c);
    }
    if (rep.uncontrolled.empty()) {
        auto eq = equivalence_classes(stage, *oracle, rep.control_points, opts.k_bound, opts.f_bound, pool);
        rep.classes = eq.classes;
        if (!eq.consistent) rep.note = eq.inconsistency;
    }
}

void settle_blocked(DichotomyReport& rep, OraclePtr oracle, const DichotomyOptions& opts) {
    attach_controls(rep, oracle, opts);
    if (rep.control_stage && rep.uncontrolled.empty() && rep.note.empty()) {
        rep.verdict = SplitVerdict::Blocked;
    } else {
        rep.verdict = SplitVerdict::Inconclusive;
        if (rep.note.empty())
            rep.note = "no split witness found, but " + std::to_string(rep.uncontrolled.size()) +
                       " points have no control at these bounds";
    }
}

}  // namespace

DichotomyReport classify_splitting(OraclePtr oracle, const DichotomyOptions& opts) {
    DichotomyReport rep;
    rep.oracle = oracle->name();
    rep.options = opts;
    const int max_c = opts.max_c < 0 ? std::max(1, opts.bound / 2) : opts.max_c;
    bool inconclusive = false;
    for (int size = 1; size <= max_c; ++size)
        for (const auto& C : enumerate_members(*oracle, size)) {
            SplitSearch s = find_split_witness(*oracle, C, opts.bound, opts.slack, opts.node_budget);
            if (s.verdict == SplitVerdict::Splits) {
                rep.split = std::move(s);
                rep.blocked.clear();
                rep.verdict = SplitVerdict::Splits;
                if (opts.controls_when_split) attach_controls(rep, oracle, opts);
                return rep;
            }
            if (s.verdict == SplitVerdict::Inconclusive) inconclusive = true;
            else rep.blocked.push_back({C, *s.blocked_D, *s.blocked_i});
        }
    if (inconclusive) {
        rep.verdict = SplitVerdict::Inconclusive;
        rep.note = "split search ran out of budget for some C";
        return rep;
    }
    settle_blocked(rep, oracle, opts);
    return rep;
}

DichotomyReport classify_splitting_at(OraclePtr oracle, const FinStructure& C, const DichotomyOptions& opts) {
    DichotomyReport rep;
    rep.oracle = oracle->name();
    rep.options = opts;
    SplitSearch s = find_split_witness(*oracle, C, opts.bound, opts.slack, opts.node_budget);
    if (s.verdict == SplitVerdict::Splits) {
        rep.split = std::move(s);
        rep.verdict = SplitVerdict::Splits;
        if (opts.controls_when_split) attach_controls(rep, oracle, opts);
        return rep;
    }
    if (s.verdict == SplitVerdict::Inconclusive) {
        rep.verdict = SplitVerdict::Inconclusive;
        rep.note = "split search ran out of budget";
        return rep;
    }
    rep.blocked.push_back({C, *s.blocked_D, *s.blocked_i});
    settle_blocked(rep, oracle, opts);
    return rep;
}

}  // namespace fraisse
