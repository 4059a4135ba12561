#include <algorithm>
#include <set>

#include "fraisse/oracle.hpp"

namespace fraisse {

bool ClassOracle::accepts_point(const FinStructure& s, const std::vector<int>& active, int) const {
    return member(restrict_ordered(s, active));
}

std::vector<SelfOption> ClassOracle::self_options() const {
    const Signature& sig = *signature();
    std::vector<int> cands;
    for (int i = 0; i < sig.size(); ++i)
        if (sig[i].arity <= 2) cands.push_back(i);
    std::vector<SelfOption> out;
    for (std::uint32_t mask = 0; mask < (1u << cands.size()); ++mask) {
        SelfOption o;
        for (std::size_t i = 0; i < cands.size(); ++i)
            if (mask >> i & 1) o.symbols.push_back(cands[i]);
        out.push_back(o);
    }
    return out;
}

std::vector<LinkOption> ClassOracle::link_options() const {
    const Signature& sig = *signature();
    std::vector<std::pair<int, int>> cands;
    for (int i = 0; i < sig.size(); ++i)
        if (sig[i].arity == 2) {
            cands.push_back({i, 0});
            cands.push_back({i, 1});
        }
    if (cands.size() > 16) throw InputError("too many binary symbols for generic link options");
    std::vector<LinkOption> out;
    for (std::uint32_t mask = 0; mask < (1u << cands.size()); ++mask) {
        LinkOption o;
        for (std::size_t i = 0; i < cands.size(); ++i)
            if (mask >> i & 1) o.tuples.push_back(cands[i]);
        out.push_back(o);
    }
    return out;
}

std::vector<RqfType> ClassOracle::extend(const FinStructure& s, const std::vector<int>& anchor) const {
    return enumerate_rqf_types(s, anchor, *this, true);
}

Completion Completion::over(const FinStructure& base, int new_points) {
    Completion c;
    c.work = base;
    const int n0 = base.size();
    for (int i = 0; i < new_points; ++i) c.work.add_point();
    const int n = c.work.size();
    c.decided.assign(n, std::vector<char>(n, 0));
    for (int a = 0; a < n0; ++a)
        for (int b = 0; b < n0; ++b) c.decided[a][b] = 1;
    for (int a = 0; a < n0; ++a) c.active.push_back(a);
    for (int i = n0; i < n; ++i) c.fresh.push_back(i);
    return c;
}

namespace {

struct Engine {
    const ClassOracle& oracle;
    Completion& c;
    const std::function<bool(const FinStructure&)>& visit;
    Budget* budget;
    std::vector<SelfOption> selfs;
    std::vector<LinkOption> links;
    bool stopped = false;

    void apply_self(int p, const SelfOption& o) {
        const Signature& sig = c.work.signature();
        for (int sym : o.symbols) {
            if (sig[sym].arity == 1) c.work.set(sym, {p});
            else c.work.set(sym, {p, p});
        }
    }
    void apply_link(int p, int q, const LinkOption& o) {
        for (auto [sym, dir] : o.tuples) {
            if (dir == 0) c.work.set(sym, {p, q});
            else c.work.set(sym, {q, p});
        }
    }
    bool tick() {
        if (budget && !budget->tick()) {
            stopped = true;
            return false;
        }
        return true;
    }

    void activate(std::size_t fi) {
        if (stopped) return;
        if (fi == c.fresh.size()) {
            if (!visit(c.work)) stopped = true;
            return;
        }
        const int p = c.fresh[fi];
        std::vector<int> partners = c.active;
        for (std::size_t k = 0; k < fi; ++k) partners.push_back(c.fresh[k]);
        // decided partners first, so their constraints prune before any free choice
        std::stable_partition(partners.begin(), partners.end(), [&](int q) { return c.decided[p][q] != 0; });
        std::vector<int> local{p};
        if (c.decided[p][p]) {
            if (oracle.accepts_point(c.work, local, p)) link(fi, partners, 0, local);
            return;
        }
        for (const auto& o : selfs) {
            if (!tick()) return;
            c.work.clear_pair(p, p);
            apply_self(p, o);
            if (oracle.accepts_point(c.work, local, p)) link(fi, partners, 0, local);
            if (stopped) break;
        }
        c.work.clear_pair(p, p);
    }

    void link(std::size_t fi, const std::vector<int>& partners, std::size_t j, std::vector<int>& local) {
        if (stopped) return;
        if (j == partners.size()) {
            activate(fi + 1);
            return;
        }
        const int p = c.fresh[fi];
        const int q = partners[j];
        local.push_back(q);
        if (c.decided[p][q]) {
            if (oracle.accepts_point(c.work, local, q)) link(fi, partners, j + 1, local);
        } else {
            for (const auto& o : links) {
                if (!tick()) break;
                c.work.clear_pair(p, q);
                apply_link(p, q, o);
                if (oracle.accepts_point(c.work, local, q)) link(fi, partners, j + 1, local);
                if (stopped) break;
            }
            c.work.clear_pair(p, q);
        }
        local.pop_back();
    }
};

}  // namespace

bool complete(const ClassOracle& oracle, Completion c,
              const std::function<bool(const FinStructure&)>& visit, Budget* budget) {
    Engine e{oracle, c, visit, budget, oracle.self_options(), oracle.link_options()};
    e.activate(0);
    return !e.stopped;
}

std::vector<RqfType> enumerate_rqf_types(const FinStructure& s, const std::vector<int>& anchor,
                                         const ClassOracle& oracle, bool nontrivial_only) {
    std::vector<int> sorted = anchor;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    FinStructure x = restrict_ordered(s, sorted);
    if (!oracle.member(x)) throw InputError("anchor structure rejected by oracle " + oracle.name());
    std::vector<RqfType> out;
    complete(oracle, Completion::over(x, 1), [&](const FinStructure& ext) {
        out.push_back(RqfType{sorted, ext, true, -1});
        return true;
    });
    if (!nontrivial_only) {
        for (int i = 0; i < static_cast<int>(sorted.size()); ++i)
            out.push_back(RqfType{sorted, x, false, i});
    }
    return out;
}

std::vector<FinStructure> enumerate_members(const ClassOracle& oracle, int n) {
    std::vector<FinStructure> level;
    FinStructure empty(oracle.signature(), 0);
    if (oracle.member(empty)) level.push_back(empty);
    for (int size = 0; size < n; ++size) {
        std::map<std::string, FinStructure> next;
        for (const auto& m : level) {
            complete(oracle, Completion::over(m, 1), [&](const FinStructure& ext) {
                Canonical cf = canonical_form(ext);
                std::string k = cf.structure.key();
                next.emplace(std::move(k), std::move(cf.structure));
                return true;
            });
        }
        level.clear();
        for (auto& [k, v] : next) level.push_back(std::move(v));
    }
    return level;
}

}  // namespace fraisse
