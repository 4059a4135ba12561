#include <algorithm>
#include <random>

#include "fraisse/katetov.hpp"

namespace fraisse {

namespace {

Rational rabs(const Rational& r) { return r < Rational(0) ? -r : r; }

// |d(y, f(x)) - d(p, x)| <= tol for every x in dom f
bool within(const MetricSpace& X, const PartialMap& f, int p, int y, const Rational& tol) {
    for (auto [x, fx] : f.pairs())
        if (rabs(X.d[y][fx] - X.d[p][x]) > tol) return false;
    return true;
}

Rational power_of_half(int n) {
    Rational r(1);
    for (int i = 0; i < n; ++i) r /= Rational(2);
    return r;
}

}  // namespace

MetricMove MetricGameState::current() const {
    if (rounds.empty()) return MetricMove{PartialMap{}, Rational(1)};
    return rounds.back().reply;
}

std::shared_ptr<const MetricGameSetup> new_metric_game(const MetricSpace& space, const AbsorbingPartition& A,
                                                       const AbsorbingPartition& B, int prefix) {
    const int n = space.size();
    if (static_cast<int>(A.in_A.size()) != n || static_cast<int>(B.in_A.size()) != n)
        throw InputError("partitions do not cover the space");
    auto st = std::make_shared<MetricGameSetup>();
    st->space = space;
    st->in_A = A.in_A;
    st->in_B = B.in_A;
    for (int x = 0; x < std::min(prefix, n) && st->c_star < 0; ++x)
        if (!A.in_A[x]) st->c_star = x;
    if (st->c_star < 0) throw InputError("no complement point of A in the prefix");
    std::optional<Rational> rho;
    for (int a = 0; a < n; ++a)
        if (A.in_A[a] && (!rho || space.d[st->c_star][a] < *rho)) rho = space.d[st->c_star][a];
    if (!rho) throw InputError("A is empty");
    st->d_star = *rho / Rational(2);
    st->eps = st->d_star / Rational(2);
    for (int b = 0; b < n; ++b) {
        if (B.in_A[b]) continue;
        bool placed = false;
        for (auto& cell : st->cells) {
            bool close = true;
            for (int y : cell)
                if (!(space.d[b][y] < st->eps / Rational(2))) close = false;
            if (close) {
                cell.push_back(b);
                placed = true;
                break;
            }
        }
        if (!placed) st->cells.push_back({b});
    }
    return st;
}

void check_metric_move(const MetricGameState& state, const MetricMove& move) {
    const MetricGameSetup& st = *state.setup;
    const MetricMove cur = state.current();
    // earlier points stay in the domain; their images may move by at most the last radius
    for (auto [x, fx] : cur.f.pairs()) {
        if (!move.f.contains(x)) throw IllegalMove("move drops domain element " + std::to_string(x));
        const int y = move.f.at(x);
        if (y < 0 || y >= st.space.size() || st.space.d[y][fx] > cur.radius)
            throw IllegalMove("image of " + std::to_string(x) + " moved farther than the last radius");
    }
    if (!(move.radius > Rational(0)) || move.radius > cur.radius)
        throw IllegalMove("radius must be positive and at most the last one");
    for (auto [a, b] : move.f.pairs()) {
        if (a < 0 || a >= st.space.size() || b < 0 || b >= st.space.size()) throw IllegalMove("element out of range");
        if (!st.in_A[a]) throw IllegalMove("domain element " + std::to_string(a) + " is not in A");
        if (!st.in_B[b]) throw IllegalMove("range element " + std::to_string(b) + " is not in B");
    }
    if (!move.f.is_injective()) throw IllegalMove("move is not injective", Violation{-1, {}, false});
    for (auto [x, fx] : move.f.pairs())
        for (auto [y, fy] : move.f.pairs())
            if (st.space.d[x][y] != st.space.d[fx][fy])
                throw IllegalMove("move distorts a distance", Violation{-2, {x, y}, true});
}

MetricCertificate metric_exclusion_by_search(const MetricGameSetup& st, const MetricMove& reply, int cell) {
    MetricCertificate cert;
    cert.cell = cell;
    if (cell < 0) return cert;
    const auto& W = st.cells.at(cell);
    for (int y = 0; y < st.space.size(); ++y) {
        if (reply.f.in_range(y) || !within(st.space, reply.f, st.c_star, y, reply.radius)) continue;
        ++cert.extensions_checked;
        if (std::find(W.begin(), W.end(), y) != W.end()) ++cert.landing_in_cell;
    }
    return cert;
}

const MetricRound* metric_splitter_reply(MetricGameState& state, const MetricMove& move) {
    if (state.aborted) throw InputError("game already aborted: " + state.abort_reason);
    check_metric_move(state, move);
    const MetricGameSetup& st = *state.setup;
    const MetricSpace& X = st.space;
    const int n = static_cast<int>(state.rounds.size());
    MetricRound round;
    round.move = move;
    round.reply.f = move.f;
    round.reply.radius = std::min({move.radius, st.eps / Rational(2), power_of_half(n)});
    const int c = st.c_star;
    for (int i = 0; i < static_cast<int>(st.cells.size()) && round.cell < 0; ++i) {
        if (std::find(state.excluded.begin(), state.excluded.end(), i) != state.excluded.end()) continue;
        for (int b : st.cells[i])
            if (!move.f.in_range(b) && within(X, move.f, c, b, move.radius)) {
                round.cell = i;
                break;
            }
    }
    if (round.cell < 0) {
        round.certificate = metric_exclusion_by_search(st, round.reply, -1);
        state.rounds.push_back(std::move(round));
        return &state.rounds.back();
    }
    const auto& W = st.cells[round.cell];
    const std::vector<int> dom = move.f.domain();
    std::vector<int> support = dom;
    support.push_back(c);
    auto free_A = [&](int z) { return st.in_A[z] && !move.f.contains(z); };
    auto free_B = [&](int z) { return st.in_B[z] && !move.f.in_range(z); };

    // first the split_pair maps, realized exactly
    if (!dom.empty()) {
        SplitPair sp = split_pair(X, c, dom, st.d_star, st.eps, X.bound);
        if (sp.verified) {
            for (int z = 0; z < X.size() && round.z < 0; ++z) {
                if (!free_A(z)) continue;
                bool ok = true;
                for (std::size_t i = 0; i < support.size(); ++i) ok = ok && X.d[z][support[i]] == sp.g1.values[i];
                if (!ok) continue;
                for (int z2 = 0; z2 < X.size(); ++z2) {
                    if (!free_B(z2)) continue;
                    bool ok2 = true;
                    for (std::size_t i = 0; i < dom.size(); ++i) ok2 = ok2 && X.d[z2][move.f.at(dom[i])] == sp.g1.values[i];
                    for (int b : W) ok2 = ok2 && X.d[z2][b] == sp.g2.values.back();
                    if (ok2) {
                        round.z = z;
                        round.z2 = z2;
                        round.exact_split_pair = true;
                        round.g1 = sp.g1;
                        round.g2 = sp.g2;
                        break;
                    }
                }
            }
        }
    }
    // otherwise any realized pair agreeing off c* with a gap above ε on the whole cell
    for (int z = 0; z < X.size() && round.z < 0; ++z) {
        if (!free_A(z)) continue;
        for (int z2 = 0; z2 < X.size(); ++z2) {
            if (!free_B(z2)) continue;
            bool ok = true;
            for (int x : dom) ok = ok && X.d[z][x] == X.d[z2][move.f.at(x)];
            for (int b : W) ok = ok && rabs(X.d[z2][b] - X.d[z][c]) > st.eps;
            if (!ok) continue;
            round.z = z;
            round.z2 = z2;
            round.g1 = distance_map(X, z, support);
            round.g2 = round.g1;
            round.g2.values.back() = X.d[z2][W.front()];
            break;
        }
    }
    if (round.z < 0) {
        state.aborted = true;
        state.abort_reason = "absorption exhausted at round " + std::to_string(n) +
                             ": no realized Katetov pair over |X| = " + std::to_string(support.size());
        return nullptr;
    }
    if (!is_katetov(X, round.g1) || !is_katetov(X, round.g2))
        throw std::logic_error("realized maps are not Katetov");
    round.reply.f.set(round.z, round.z2);
    round.certificate = metric_exclusion_by_search(st, round.reply, round.cell);
    state.excluded.push_back(round.cell);
    state.rounds.push_back(std::move(round));
    return &state.rounds.back();
}

ReplayReport check_metric_transcript(const MetricGameState& t) {
    ReplayReport rep;
    auto fail = [&](int round, const std::string& why) {
        rep.ok = false;
        rep.failed_round = round;
        rep.reason = why;
        return rep;
    };
    const MetricGameSetup& st = *t.setup;
    std::shared_ptr<const MetricGameSetup> fresh;
    try {
        AbsorbingPartition A, B;
        A.in_A = st.in_A;
        B.in_A = st.in_B;
        fresh = new_metric_game(st.space, A, B, st.space.size());
    } catch (const std::exception& e) {
        return fail(-1, std::string("setup does not rebuild: ") + e.what());
    }
    if (fresh->c_star != st.c_star) return fail(-1, "c* is not the least point outside A");
    if (fresh->d_star != st.d_star || fresh->eps != st.eps) return fail(-1, "d* or epsilon differs");
    if (fresh->cells != st.cells) return fail(-1, "cell cover differs");
    MetricGameState replay;
    replay.setup = fresh;
    for (int r = 0; r < static_cast<int>(t.rounds.size()); ++r) {
        const MetricRound& rec = t.rounds[r];
        const MetricRound* got = nullptr;
        try {
            got = metric_splitter_reply(replay, rec.move);
        } catch (const std::exception& e) {
            return fail(r, std::string("move rejected on replay: ") + e.what());
        }
        if (!got) return fail(r, "replay aborted where the transcript continues");
        if (got->cell != rec.cell) return fail(r, "different target cell");
        if (got->z != rec.z || got->z2 != rec.z2) return fail(r, "different realization");
        if (!(got->reply.f == rec.reply.f) || got->reply.radius != rec.reply.radius)
            return fail(r, "reply differs from the strategy's");
        if (got->g1.values != rec.g1.values || got->g2.values != rec.g2.values) return fail(r, "Katetov maps differ");
        MetricCertificate again = metric_exclusion_by_search(*fresh, rec.reply, rec.cell);
        if (!again.holds()) return fail(r, "reply still reaches the target cell");
        if (again.extensions_checked != rec.certificate.extensions_checked ||
            again.landing_in_cell != rec.certificate.landing_in_cell)
            return fail(r, "certificate counts differ");
    }
    if (replay.excluded != t.excluded) return fail(static_cast<int>(t.rounds.size()) - 1, "excluded cells differ");
    return rep;
}

MetricMove metric_player_one_move(const MetricGameState& state, bool random_policy, std::mt19937_64& rng) {
    const MetricGameSetup& st = *state.setup;
    MetricMove cur = state.current();
    std::vector<std::pair<int, int>> legal;
    for (int a = 0; a < st.space.size(); ++a) {
        if (!st.in_A[a] || cur.f.contains(a)) continue;
        for (int b = 0; b < st.space.size(); ++b)
            if (st.in_B[b] && !cur.f.in_range(b) && within(st.space, cur.f, a, b, Rational(0))) legal.push_back({a, b});
    }
    if (!legal.empty()) {
        auto pick = random_policy ? legal[std::uniform_int_distribution<std::size_t>(0, legal.size() - 1)(rng)]
                                  : legal.front();
        cur.f.set(pick.first, pick.second);
    }
    return cur;
}

MetricGameState run_metric_game(std::shared_ptr<const MetricGameSetup> setup, int rounds, std::uint64_t seed,
                                bool random_policy) {
    MetricGameState state;
    state.setup = std::move(setup);
    std::mt19937_64 rng(seed);
    for (int r = 0; r < rounds && !state.aborted; ++r)
        metric_splitter_reply(state, metric_player_one_move(state, random_policy, rng));
    return state;
}

}  // namespace fraisse
