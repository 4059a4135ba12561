#include "fraisse/mh.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace fraisse {

std::vector<Perm> group_closure(const std::vector<Perm>& gens, int k) {
    if (k < 1 || k > 8) throw InputError("index set size must be in 1..8");
    Perm id(k);
    for (int i = 0; i < k; ++i) id[i] = i;
    for (const auto& g : gens) {
        if (static_cast<int>(g.size()) != k) throw InputError("generator length differs from |I|");
        std::vector<int> s = g;
        std::sort(s.begin(), s.end());
        if (s != id) throw InputError("generator is not a permutation of I");
    }
    std::set<Perm> seen{id};
    std::vector<Perm> frontier{id};
    while (!frontier.empty()) {
        std::vector<Perm> next;
        for (const auto& p : frontier)
            for (const auto& g : gens) {
                Perm q(k);
                for (int i = 0; i < k; ++i) q[i] = g[p[i]];
                if (seen.insert(q).second) next.push_back(q);
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

MhClass::MhClass(int k, std::vector<Perm> generators) : k_(k), gens_(std::move(generators)) {
    group_ = group_closure(gens_, k_);
    orbit1_.assign(k_, -1);
    for (int i = 0; i < k_; ++i) {
        if (orbit1_[i] >= 0) continue;
        for (const auto& g : group_) orbit1_[g[i]] = n_orbit1_;
        ++n_orbit1_;
    }
    orbit2_.assign(k_, std::vector<int>(k_, -1));
    for (int i = 0; i < k_; ++i)
        for (int j = 0; j < k_; ++j) {
            if (orbit2_[i][j] >= 0) continue;
            for (const auto& g : group_) orbit2_[g[i]][g[j]] = n_orbit2_;
            ++n_orbit2_;
        }
    std::vector<Symbol> syms;
    for (int o = 0; o < n_orbit1_; ++o) syms.push_back({"U" + std::to_string(o), 1});
    for (int o = 0; o < n_orbit2_; ++o) syms.push_back({"B" + std::to_string(o), 2});
    syms.push_back({"S", 2});
    sig_ = make_signature(std::move(syms));
}

std::string MhClass::name() const {
    std::ostringstream os;
    os << "mh:" << k_ << ":";
    for (std::size_t g = 0; g < gens_.size(); ++g) {
        if (g) os << '|';
        for (int i = 0; i < k_; ++i) os << (i ? "," : "") << gens_[g][i];
    }
    return os.str();
}

std::vector<SelfOption> MhClass::self_options() const {
    std::set<std::vector<int>> seen;
    std::vector<SelfOption> out;
    for (int i = 0; i < k_; ++i) {
        std::vector<int> syms{unary_symbol(orbit1_[i]), binary_symbol(orbit2_[i][i]), same_block_symbol()};
        if (seen.insert(syms).second) out.push_back(SelfOption{syms});
    }
    return out;
}

std::vector<LinkOption> MhClass::link_options() const {
    std::set<std::vector<std::pair<int, int>>> seen;
    std::vector<LinkOption> out;
    // different blocks first, then same block
    for (int same = 0; same < 2; ++same)
        for (int i = 0; i < k_; ++i)
            for (int j = 0; j < k_; ++j) {
                if ((i == j) != (same == 1)) continue;
                std::vector<std::pair<int, int>> t{{binary_symbol(orbit2_[i][j]), 0},
                                                   {binary_symbol(orbit2_[j][i]), 1}};
                if (same) {
                    t.push_back({same_block_symbol(), 0});
                    t.push_back({same_block_symbol(), 1});
                }
                std::sort(t.begin(), t.end());
                t.erase(std::unique(t.begin(), t.end()), t.end());
                if (seen.insert(t).second) out.push_back(LinkOption{t});
            }
    return out;
}

bool MhClass::member(const FinStructure& s) const {
    if (!(s.signature() == *sig_)) return false;
    std::vector<int> all(s.size());
    for (int x = 0; x < s.size(); ++x) all[x] = x;
    return check(s, all, -1);
}

bool MhClass::accepts_point(const FinStructure& s, const std::vector<int>& active, int p) const {
    return check(s, active, p);
}

// Membership of the substructure on elems. With fresh >= 0 the rest is known to
// be a member, so only pairs involving fresh need the uniformity test.
bool MhClass::check(const FinStructure& s, const std::vector<int>& elems, int fresh) const {
    const int n = static_cast<int>(elems.size());
    const int S = same_block_symbol();
    const auto& e = elems;
    std::vector<int> block(n, -1);
    int nb = 0;
    for (int x = 0; x < n; ++x) {
        if (!s.holds2(S, e[x], e[x])) return false;
        if (block[x] >= 0) continue;
        for (int y = 0; y < n; ++y)
            if (s.holds2(S, e[x], e[y])) block[y] = nb;
        ++nb;
    }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if ((block[x] == block[y]) != s.holds2(S, e[x], e[y])) return false;
    if (nb > k_) return false;
    std::vector<int> rep(nb, -1);
    for (int x = 0; x < n; ++x)
        if (rep[block[x]] < 0) rep[block[x]] = x;
    int fx = -1;
    for (int x = 0; x < n && fresh >= 0; ++x)
        if (e[x] == fresh) fx = x;
    if (fx >= 0 && rep[block[fx]] == fx) {
        // fresh represents its block: incremental only if the block is new
        for (int x = 0; x < n; ++x)
            if (x != fx && block[x] == block[fx]) fx = -1;
    }
    // relations must be constant on pairs of blocks
    auto uniform = [&](int x, int y) {
        const int rx = e[rep[block[x]]], ry = e[rep[block[y]]];
        for (int o = 0; o < n_orbit2_; ++o)
            if (s.holds2(binary_symbol(o), e[x], e[y]) != s.holds2(binary_symbol(o), rx, ry)) return false;
        return true;
    };
    for (int x = 0; x < n; ++x) {
        if (fx >= 0 && x != fx && rep[block[x]] != fx) {
            // only rows touching the fresh point can change
            if (!uniform(x, fx) || !uniform(fx, x)) return false;
            continue;
        }
        const int rx = e[rep[block[x]]];
        for (int o = 0; o < n_orbit1_; ++o)
            if (s.holds1(unary_symbol(o), e[x]) != s.holds1(unary_symbol(o), rx)) return false;
        for (int y = 0; y < n; ++y)
            if (!uniform(x, y)) return false;
    }
    // block b gets index idx[b]; checked on representatives against blocks < upto
    auto consistent = [&](const std::vector<int>& idx, int upto) {
        const int b = upto - 1;
        const int x = e[rep[b]], ix = idx[b];
        for (int o = 0; o < n_orbit1_; ++o)
            if (s.holds1(unary_symbol(o), x) != (orbit1_[ix] == o)) return false;
        for (int c = 0; c < upto; ++c) {
            const int y = e[rep[c]], iy = idx[c];
            for (int o = 0; o < n_orbit2_; ++o) {
                if (s.holds2(binary_symbol(o), x, y) != (orbit2_[ix][iy] == o)) return false;
                if (s.holds2(binary_symbol(o), y, x) != (orbit2_[iy][ix] == o)) return false;
            }
        }
        return true;
    };
    std::vector<int> idx(nb, -1);
    std::vector<char> used(k_, 0);
    auto rec = [&](auto&& self, int b) -> bool {
        if (b == nb) return true;
        for (int i = 0; i < k_; ++i) {
            if (used[i]) continue;
            idx[b] = i;
            used[i] = 1;
            bool ok = consistent(idx, b + 1) && self(self, b + 1);
            used[i] = 0;
            if (ok) return true;
        }
        return false;
    };
    return rec(rec, 0);
}

MhBuild build_MH(const WreathSpec& spec) {
    if (static_cast<int>(spec.block_sizes.size()) != spec.I)
        throw InputError("block_sizes length differs from I");
    auto oracle = std::make_shared<const MhClass>(spec.I, spec.generators);
    MhBuild out;
    out.oracle = oracle;
    std::vector<int> index_of;
    for (int i = 0; i < spec.I; ++i) {
        if (spec.block_sizes[i] < 0) throw InputError("negative block size");
        out.blocks.emplace_back();
        for (int m = 0; m < spec.block_sizes[i]; ++m) {
            out.blocks.back().push_back(static_cast<int>(index_of.size()));
            index_of.push_back(i);
        }
    }
    const int n = static_cast<int>(index_of.size());
    FinStructure s(oracle->signature(), n);
    for (int x = 0; x < n; ++x) {
        s.set(oracle->unary_symbol(oracle->unary_orbit(index_of[x])), {x});
        for (int y = 0; y < n; ++y) {
            s.set(oracle->binary_symbol(oracle->binary_orbit(index_of[x], index_of[y])), {x, y});
            if (index_of[x] == index_of[y]) s.set(oracle->same_block_symbol(), {x, y});
        }
    }
    out.structure = std::move(s);
    return out;
}

std::shared_ptr<const MhClass> parse_mh_key(const std::string& key) {
    if (key.rfind("mh:", 0) != 0) throw InputError("mh key must start with 'mh:'");
    std::string rest = key.substr(3);
    auto colon = rest.find(':');
    std::string kpart = rest.substr(0, colon);
    std::string gpart = colon == std::string::npos ? "" : rest.substr(colon + 1);
    int k = 0;
    try {
        k = std::stoi(kpart);
    } catch (const std::exception&) {
        throw InputError("bad index count in '" + key + "'");
    }
    std::vector<Perm> gens;
    std::stringstream gs(gpart);
    std::string g;
    while (std::getline(gs, g, '|')) {
        if (g.empty()) continue;
        Perm p;
        std::stringstream es(g);
        std::string e;
        while (std::getline(es, e, ',')) {
            try {
                p.push_back(std::stoi(e));
            } catch (const std::exception&) {
                throw InputError("bad generator entry in '" + key + "'");
            }
        }
        gens.push_back(p);
    }
    return std::make_shared<const MhClass>(k, gens);
}

OraclePtr make_mh_oracle(const std::string& key) { return parse_mh_key(key); }

}  // namespace fraisse
