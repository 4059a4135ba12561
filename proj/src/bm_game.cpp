#include "fraisse/bm_game.hpp"

#include <algorithm>

namespace fraisse {

namespace {

bool partial_iso(const FinStructure& s, const PartialMap& m) {
    return m.is_injective() && !find_violation(s, s, m);
}

bool compatible(const FinStructure& s, const PartialMap& h, const PartialMap& g) {
    auto m = h.merge(g);
    return m && partial_iso(s, *m);
}

std::vector<int> members(const AbsorbingPartition& p, bool in_A, int limit) {
    std::vector<int> out;
    for (int x = 0; x < limit; ++x)
        if (static_cast<bool>(p.in_A[x]) == in_A) out.push_back(x);
    return out;
}

}  // namespace

std::vector<PartialMap> enumerate_g_list(const FinStructure& stage, const AbsorbingPartition& A,
                                         const AbsorbingPartition& B, const std::vector<int>& c_star, int cap) {
    if (cap < static_cast<int>(c_star.size())) throw InputError("g cap smaller than C*");
    std::vector<int> extra;
    for (int x : members(A, false, stage.size()))
        if (std::find(c_star.begin(), c_star.end(), x) == c_star.end()) extra.push_back(x);
    const std::vector<int> targets = members(B, false, stage.size());
    std::vector<PartialMap> out;
    const int room = cap - static_cast<int>(c_star.size());
    for (const auto& pick : anchors_up_to(static_cast<int>(extra.size()), room)) {
        std::vector<int> dom = c_star;
        for (int p : pick) dom.push_back(extra[p]);
        // images by increasing position of the domain list, targets ascending
        std::vector<PartialMap> found;
        PartialMap g;
        auto rec = [&](auto&& self, std::size_t idx) -> void {
            if (idx == dom.size()) {
                found.push_back(g);
                return;
            }
            for (int b : targets) {
                if (!extends_consistently(stage, stage, g, dom[idx], b)) continue;
                g.set(dom[idx], b);
                self(self, idx + 1);
                g.erase(dom[idx]);
            }
        };
        rec(rec, 0);
        for (auto& f : found) out.push_back(std::move(f));
    }
    // anchors_up_to lists by size first, which is the order we want
    return out;
}

std::shared_ptr<const GameSetup> new_game(const Bundle& bundle, const FinStructure& C, int g_cap,
                                          std::optional<AbsorbingPartition> partB) {
    const ClassOracle& oracle = *bundle.approx.oracle;
    if (bundle.approx.T() < 1) throw InputError("games need a bundle with at least two stages");
    if (!oracle.member(C)) throw InputError("C is not a member of " + oracle.name());
    if (find_split_witness(oracle, C, 4).verdict != SplitVerdict::Splits)
        throw InputError("class " + oracle.name() + " does not split around C at bound 4");
    auto setup = std::make_shared<GameSetup>();
    setup->bundle = bundle;
    setup->partB = partB ? *partB : bundle.partition;
    setup->C = C;
    setup->g_cap = g_cap < 0 ? C.size() : g_cap;
    const FinStructure& stage = bundle.approx.top();
    if (setup->partB.in_A.size() != static_cast<std::size_t>(stage.size()))
        throw InputError("partition of B does not cover the stage");
    const int prev = bundle.approx.stages[bundle.approx.T() - 1].size();
    for (int limit : {prev, stage.size()}) {
        Relabeled sub = induced_substructure(stage, members(bundle.partition, false, limit));
        auto emb = find_embeddings(C, sub.structure, 1);
        if (emb.empty()) continue;
        for (int x = 0; x < C.size(); ++x) setup->c_star.push_back(sub.elements[emb[0].at(x)]);
        break;
    }
    if (setup->c_star.size() != static_cast<std::size_t>(C.size()))
        throw InputError("no copy of C inside the complement of A; the partition does not absorb");
    setup->g_list = enumerate_g_list(stage, bundle.partition, setup->partB, setup->c_star, setup->g_cap);
    return setup;
}

void check_move(const GameState& state, const PartialMap& move) {
    const GameSetup& st = *state.setup;
    const FinStructure& s = st.stage();
    if (!move.extends(state.current())) throw IllegalMove("move does not extend Player II's last reply");
    for (auto [a, b] : move.pairs()) {
        if (a < 0 || a >= s.size() || b < 0 || b >= s.size()) throw IllegalMove("element out of range");
        if (!st.partA().in_A[a]) throw IllegalMove("domain element " + std::to_string(a) + " is not in A");
        if (!st.partB.in_A[b]) throw IllegalMove("range element " + std::to_string(b) + " is not in B");
    }
    if (auto v = find_violation(s, s, move)) throw IllegalMove("move is not a partial isomorphism", v);
    if (!move.is_injective()) throw IllegalMove("move is not injective", Violation{-1, {}, false});
}

ExclusionCertificate exclusion_by_search(const GameSetup& setup, const PartialMap& h, int k) {
    ExclusionCertificate cert;
    cert.k = k;
    if (k < 0) return cert;
    const FinStructure& s = setup.stage();
    const PartialMap& g = setup.g_list.at(k);
    PartialMap e = h;
    auto rec = [&](auto&& self, std::size_t idx) -> void {
        if (idx == setup.c_star.size()) {
            ++cert.extensions_checked;
            if (compatible(s, e, g)) ++cert.compatible_found;
            return;
        }
        const int c = setup.c_star[idx];
        if (e.contains(c)) {
            self(self, idx + 1);
            return;
        }
        for (int y = 0; y < s.size(); ++y) {
            if (!extends_consistently(s, s, e, c, y)) continue;
            e.set(c, y);
            self(self, idx + 1);
            e.erase(c);
        }
    };
    rec(rec, 0);
    return cert;
}

const GameRound* splitter_reply(GameState& state, const PartialMap& move) {
    if (state.aborted) throw InputError("game already aborted: " + state.abort_reason);
    check_move(state, move);
    const GameSetup& st = *state.setup;
    const FinStructure& s = st.stage();
    const ClassOracle& oracle = *st.bundle.approx.oracle;
    GameRound round;
    round.move = move;
    round.reply = move;
    for (int k = 0; k < static_cast<int>(st.g_list.size()); ++k) {
        if (std::find(state.excluded.begin(), state.excluded.end(), k) != state.excluded.end()) continue;
        if (compatible(s, move, st.g_list[k])) {
            round.k = k;
            break;
        }
    }
    if (round.k < 0) {
        round.certificate = exclusion_by_search(st, round.reply, -1);
        state.rounds.push_back(std::move(round));
        return &state.rounds.back();
    }
    const PartialMap g = *move.merge(st.g_list[round.k]);
    round.D = st.c_star;
    for (int x : g.domain())
        if (std::find(round.D.begin(), round.D.end(), x) == round.D.end()) round.D.push_back(x);
    std::vector<int> gD;
    for (int x : round.D) gD.push_back(g.at(x));
    const int nC = static_cast<int>(st.c_star.size());
    const int nD = static_cast<int>(round.D.size());
    const FinStructure Dst = restrict_ordered(s, round.D);
    // the new point keeps its relations to D off C* and changes one towards C*
    PartialMap off_c;
    for (int x = nC; x <= nD; ++x) off_c.set(x, x);
    const PartialMap ident = PartialMap::identity(nD + 1);
    for (int w1 = 0; w1 < s.size() && round.w1 < 0; ++w1) {
        if (!st.partA().in_A[w1] || g.contains(w1)) continue;
        std::vector<int> d1 = round.D;
        d1.push_back(w1);
        FinStructure D1 = restrict_ordered(s, d1);
        for (int w2 = 0; w2 < s.size(); ++w2) {
            if (!st.partB.in_A[w2] || g.in_range(w2)) continue;
            std::vector<int> d2 = gD;
            d2.push_back(w2);
            FinStructure D2 = restrict_ordered(s, d2);
            if (!is_embedding(D1, D2, off_c)) continue;
            auto v = find_violation(D1, D2, ident);
            if (!v) continue;
            round.w1 = w1;
            round.w2 = w2;
            round.witness = SplitWitness{st.C, Dst, PartialMap::identity(nC), std::move(D1), std::move(D2),
                                         PartialMap::identity(nD), PartialMap::identity(nD), ident, *v};
            break;
        }
    }
    if (round.w1 < 0) {
        state.aborted = true;
        state.abort_move = move;
        state.abort_reason = "absorption exhausted at round " + std::to_string(state.rounds.size()) +
                             ": no split witness over |D| = " + std::to_string(nD) + " realized in A and B";
        return nullptr;
    }
    std::string why;
    if (!verify_split_witness(*round.witness, oracle, &why))
        throw std::logic_error("realized split witness failed verification: " + why);
    round.reply.set(round.w1, round.w2);
    if (!partial_iso(s, round.reply)) throw std::logic_error("reply is not a partial isomorphism");
    round.certificate = exclusion_by_search(st, round.reply, round.k);
    state.excluded.push_back(round.k);
    state.rounds.push_back(std::move(round));
    return &state.rounds.back();
}

Policy parse_policy(const std::string& s) {
    if (s == "minimal-legal") return {PolicyKind::MinimalLegal, 0};
    if (s == "adversarial-toward-g0") return {PolicyKind::Adversarial, 0};
    if (s == "random") return {PolicyKind::Random, 0};
    if (s.rfind("random:", 0) == 0) {
        try {
            return {PolicyKind::Random, std::stoull(s.substr(7))};
        } catch (const std::exception&) {
            throw InputError("bad seed in policy '" + s + "'");
        }
    }
    throw InputError("unknown policy '" + s + "'");
}

std::string to_string(const Policy& p) {
    switch (p.kind) {
        case PolicyKind::MinimalLegal: return "minimal-legal";
        case PolicyKind::Random: return "random:" + std::to_string(p.seed);
        case PolicyKind::Adversarial: return "adversarial-toward-g0";
    }
    return "?";
}

PartialMap player_one_move(const GameState& state, const Policy& policy, std::mt19937_64& rng) {
    const GameSetup& st = *state.setup;
    const FinStructure& s = st.stage();
    const PartialMap cur = state.current();
    std::vector<std::pair<int, int>> legal;
    for (int a = 0; a < s.size(); ++a) {
        if (!st.partA().in_A[a] || cur.contains(a)) continue;
        for (int b = 0; b < s.size(); ++b)
            if (st.partB.in_A[b] && extends_consistently(s, s, cur, a, b)) legal.push_back({a, b});
    }
    PartialMap move = cur;
    if (legal.empty()) return move;
    std::pair<int, int> pick = legal.front();
    if (policy.kind == PolicyKind::Random) {
        pick = legal[std::uniform_int_distribution<std::size_t>(0, legal.size() - 1)(rng)];
    } else if (policy.kind == PolicyKind::Adversarial) {
        // aim at the least g still compatible, starting from g_0
        for (const auto& g : st.g_list) {
            if (!compatible(s, cur, g)) continue;
            for (auto [a, b] : legal) {
                PartialMap m = cur;
                m.set(a, b);
                if (compatible(s, m, g)) {
                    pick = {a, b};
                    goto chosen;
                }
            }
            break;
        }
    chosen:;
    }
    move.set(pick.first, pick.second);
    return move;
}

GameState run_auto_game(std::shared_ptr<const GameSetup> setup, int rounds, const Policy& policy) {
    if (rounds < 0) throw InputError("rounds must be >= 0");
    GameState state;
    state.setup = std::move(setup);
    state.policy = to_string(policy);
    std::mt19937_64 rng(policy.seed);
    for (int r = 0; r < rounds && !state.aborted; ++r) splitter_reply(state, player_one_move(state, policy, rng));
    return state;
}

ReplayReport check_exclusion(const GameState& t) {
    ReplayReport rep;
    auto fail = [&](int round, const std::string& why) {
        rep.ok = false;
        rep.failed_round = round;
        rep.reason = why;
        return rep;
    };
    std::shared_ptr<const GameSetup> fresh;
    try {
        fresh = new_game(t.setup->bundle, t.setup->C, t.setup->g_cap, t.setup->partB);
    } catch (const std::exception& e) {
        return fail(-1, std::string("setup does not rebuild: ") + e.what());
    }
    if (fresh->c_star != t.setup->c_star) return fail(-1, "C* differs from the canonical copy");
    if (fresh->g_list != t.setup->g_list) return fail(-1, "g enumeration differs");
    GameState replay;
    replay.setup = fresh;
    for (int r = 0; r < static_cast<int>(t.rounds.size()); ++r) {
        const GameRound& rec = t.rounds[r];
        const GameRound* got = nullptr;
        try {
            got = splitter_reply(replay, rec.move);
        } catch (const std::exception& e) {
            return fail(r, std::string("move rejected on replay: ") + e.what());
        }
        if (!got) return fail(r, "replay aborted where the transcript continues");
        if (got->k != rec.k) return fail(r, "different g index chosen");
        if (got->w1 != rec.w1 || got->w2 != rec.w2 || got->D != rec.D) return fail(r, "different witness realization");
        if (!(got->reply == rec.reply)) return fail(r, "reply differs from the strategy's");
        ExclusionCertificate again = exclusion_by_search(*fresh, rec.reply, rec.k);
        if (!again.holds()) return fail(r, "reply is still compatible with the excluded g");
        if (again.extensions_checked != rec.certificate.extensions_checked ||
            again.compatible_found != rec.certificate.compatible_found)
            return fail(r, "certificate counts differ");
        if (rec.witness) {
            std::string why;
            if (!verify_split_witness(*rec.witness, *fresh->bundle.approx.oracle, &why))
                return fail(r, "recorded split witness invalid: " + why);
        }
    }
    if (t.aborted) {
        // an abort is honest only if the strategy really finds no witness for that move
        if (!t.abort_move) return fail(static_cast<int>(t.rounds.size()), "abort without the offending move");
        try {
            if (splitter_reply(replay, *t.abort_move))
                return fail(static_cast<int>(t.rounds.size()), "strategy has a reply where the transcript aborts");
        } catch (const std::exception& e) {
            return fail(static_cast<int>(t.rounds.size()), std::string("abort move rejected: ") + e.what());
        }
    }
    if (!final_position_excludes_all(t)) return fail(static_cast<int>(t.rounds.size()) - 1, "final position still compatible");
    return rep;
}

bool final_position_excludes_all(const GameState& state) {
    const PartialMap h = state.current();
    for (int k : state.excluded)
        if (!exclusion_by_search(*state.setup, h, k).holds()) return false;
    return true;
}

}  // namespace fraisse
