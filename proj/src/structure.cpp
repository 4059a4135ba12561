#include "fraisse/structure.hpp"

#include <algorithm>
#include <numeric>

namespace fraisse {

Signature::Signature(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
    std::set<std::string> names;
    for (const auto& s : symbols_) {
        if (s.arity < 1) throw InputError("symbol '" + s.name + "' has arity < 1");
        if (!names.insert(s.name).second) throw InputError("duplicate symbol '" + s.name + "'");
    }
}

std::optional<int> Signature::index_of(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (symbols_[i].name == name) return i;
    return std::nullopt;
}

int Signature::max_arity() const {
    int m = 0;
    for (const auto& s : symbols_) m = std::max(m, s.arity);
    return m;
}

SignaturePtr make_signature(std::vector<Symbol> symbols) {
    return std::make_shared<const Signature>(std::move(symbols));
}

FinStructure::FinStructure(SignaturePtr sig, int n) : sig_(std::move(sig)), n_(n) {
    if (n < 0) throw InputError("negative domain size");
    const int k = sig_->size();
    unary_.resize(k);
    binary_.resize(k);
    higher_.resize(k);
    for (int s = 0; s < k; ++s) {
        const int ar = (*sig_)[s].arity;
        if (ar == 1) unary_[s].assign(n, 0);
        else if (ar == 2) binary_[s].assign(static_cast<std::size_t>(n) * n, 0);
    }
}

void FinStructure::check_tuple(int sym, std::span<const int> t) const {
    if (sym < 0 || sym >= sig_->size()) throw InputError("symbol index out of range");
    if (static_cast<int>(t.size()) != (*sig_)[sym].arity)
        throw InputError("tuple length does not match arity of '" + (*sig_)[sym].name + "'");
    for (int x : t)
        if (x < 0 || x >= n_) throw InputError("tuple entry out of range");
}

bool FinStructure::holds(int sym, std::span<const int> t) const {
    const int ar = (*sig_)[sym].arity;
    if (ar == 1) return unary_[sym][t[0]] != 0;
    if (ar == 2) return binary_[sym][t[0] * n_ + t[1]] != 0;
    return higher_[sym].count(Tuple(t.begin(), t.end())) != 0;
}

void FinStructure::set(int sym, std::span<const int> t, bool value) {
    check_tuple(sym, t);
    const int ar = (*sig_)[sym].arity;
    if (ar == 1) unary_[sym][t[0]] = value;
    else if (ar == 2) binary_[sym][t[0] * n_ + t[1]] = value;
    else if (value) higher_[sym].insert(Tuple(t.begin(), t.end()));
    else higher_[sym].erase(Tuple(t.begin(), t.end()));
}

std::vector<Tuple> FinStructure::tuples(int sym) const {
    std::vector<Tuple> out;
    const int ar = (*sig_)[sym].arity;
    if (ar == 1) {
        for (int a = 0; a < n_; ++a)
            if (unary_[sym][a]) out.push_back({a});
    } else if (ar == 2) {
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b)
                if (binary_[sym][a * n_ + b]) out.push_back({a, b});
    } else {
        out.assign(higher_[sym].begin(), higher_[sym].end());
    }
    return out;
}

std::size_t FinStructure::tuple_count() const {
    std::size_t c = 0;
    for (int s = 0; s < sig_->size(); ++s) {
        const int ar = (*sig_)[s].arity;
        if (ar == 1) c += std::count(unary_[s].begin(), unary_[s].end(), 1);
        else if (ar == 2) c += std::count(binary_[s].begin(), binary_[s].end(), 1);
        else c += higher_[s].size();
    }
    return c;
}

int FinStructure::add_point() {
    const int old = n_;
    ++n_;
    for (int s = 0; s < sig_->size(); ++s) {
        const int ar = (*sig_)[s].arity;
        if (ar == 1) {
            unary_[s].push_back(0);
        } else if (ar == 2) {
            std::vector<std::uint8_t> nb(static_cast<std::size_t>(n_) * n_, 0);
            for (int a = 0; a < old; ++a)
                for (int b = 0; b < old; ++b) nb[a * n_ + b] = binary_[s][a * old + b];
            binary_[s] = std::move(nb);
        }
    }
    return old;
}

void FinStructure::clear_pair(int a, int b) {
    for (int s = 0; s < sig_->size(); ++s) {
        const int ar = (*sig_)[s].arity;
        if (ar == 1) {
            if (a == b) unary_[s][a] = 0;
        } else if (ar == 2) {
            binary_[s][a * n_ + b] = 0;
            binary_[s][b * n_ + a] = 0;
        } else {
            for (auto it = higher_[s].begin(); it != higher_[s].end();) {
                const bool ha = std::find(it->begin(), it->end(), a) != it->end();
                const bool hb = std::find(it->begin(), it->end(), b) != it->end();
                bool only_ab = std::all_of(it->begin(), it->end(), [&](int x) { return x == a || x == b; });
                if (ha && hb && (a != b || only_ab)) it = higher_[s].erase(it);
                else ++it;
            }
        }
    }
}

bool FinStructure::operator==(const FinStructure& o) const {
    return n_ == o.n_ && *sig_ == *o.sig_ && unary_ == o.unary_ && binary_ == o.binary_ &&
           higher_ == o.higher_;
}

std::string FinStructure::key() const {
    std::string k;
    k.reserve(8 + tuple_count() * 4);
    k += std::to_string(n_);
    k += '|';
    for (int s = 0; s < sig_->size(); ++s) {
        const int ar = (*sig_)[s].arity;
        if (ar == 1) {
            for (auto v : unary_[s]) k += static_cast<char>('0' + v);
        } else if (ar == 2) {
            for (auto v : binary_[s]) k += static_cast<char>('0' + v);
        } else {
            for (const auto& t : higher_[s]) {
                for (int x : t) {
                    k += std::to_string(x);
                    k += ',';
                }
                k += ';';
            }
        }
        k += '|';
    }
    return k;
}

PartialMap PartialMap::identity(int n) {
    PartialMap m;
    for (int i = 0; i < n; ++i) m.set(i, i);
    return m;
}

PartialMap PartialMap::from_vector(const std::vector<int>& images) {
    PartialMap m;
    for (int i = 0; i < static_cast<int>(images.size()); ++i)
        if (images[i] >= 0) m.set(i, images[i]);
    return m;
}

int PartialMap::at(int a) const {
    auto it = fwd_.find(a);
    if (it == fwd_.end()) throw InputError("element " + std::to_string(a) + " not in map domain");
    return it->second;
}

std::optional<int> PartialMap::get(int a) const {
    auto it = fwd_.find(a);
    if (it == fwd_.end()) return std::nullopt;
    return it->second;
}

std::vector<int> PartialMap::domain() const {
    std::vector<int> d;
    for (auto [a, b] : fwd_) d.push_back(a);
    return d;
}

std::vector<int> PartialMap::range() const {
    std::vector<int> r;
    for (auto [a, b] : fwd_) r.push_back(b);
    std::sort(r.begin(), r.end());
    return r;
}

bool PartialMap::in_range(int b) const {
    for (auto [x, y] : fwd_)
        if (y == b) return true;
    return false;
}

bool PartialMap::is_injective() const {
    auto r = range();
    return std::adjacent_find(r.begin(), r.end()) == r.end();
}

PartialMap PartialMap::inverse() const {
    PartialMap m;
    for (auto [a, b] : fwd_) m.set(b, a);
    return m;
}

PartialMap PartialMap::compose(const PartialMap& inner) const {
    PartialMap m;
    for (auto [a, b] : inner.fwd_)
        if (auto c = get(b)) m.set(a, *c);
    return m;
}

PartialMap PartialMap::restrict_to(const std::vector<int>& dom) const {
    PartialMap m;
    for (int a : dom)
        if (auto b = get(a)) m.set(a, *b);
    return m;
}

std::optional<PartialMap> PartialMap::merge(const PartialMap& o) const {
    PartialMap m = *this;
    for (auto [a, b] : o.fwd_) {
        auto it = m.fwd_.find(a);
        if (it != m.fwd_.end() && it->second != b) return std::nullopt;
        m.fwd_[a] = b;
    }
    return m;
}

bool PartialMap::extends(const PartialMap& smaller) const {
    for (auto [a, b] : smaller.fwd_) {
        auto v = get(a);
        if (!v || *v != b) return false;
    }
    return true;
}

namespace {

// Visits all tuples of length r over pool ∪ {a} that contain a.
template <class F>
bool for_tuples_containing(int r, int a, const std::vector<int>& pool, F&& visit) {
    std::vector<int> items = pool;
    items.push_back(a);
    Tuple t(r);
    std::vector<int> idx(r, 0);
    const int m = static_cast<int>(items.size());
    while (true) {
        bool has = false;
        for (int i = 0; i < r; ++i) {
            t[i] = items[idx[i]];
            has = has || t[i] == a;
        }
        if (has && !visit(t)) return false;
        int p = r - 1;
        while (p >= 0 && ++idx[p] == m) idx[p--] = 0;
        if (p < 0) break;
    }
    return true;
}

}  // namespace

bool extends_consistently(const FinStructure& src, const FinStructure& tgt, const PartialMap& f,
                          int a, int b, Violation* out) {
    if (f.in_range(b) && f.get(a) != b) {
        if (out) *out = Violation{-1, {a}, false};
        return false;
    }
    const Signature& sig = src.signature();
    for (int s = 0; s < sig.size(); ++s) {
        const int ar = sig[s].arity;
        if (ar == 1) {
            if (src.holds1(s, a) != tgt.holds1(s, b)) {
                if (out) *out = Violation{s, {a}, src.holds1(s, a)};
                return false;
            }
        } else if (ar == 2) {
            if (src.holds2(s, a, a) != tgt.holds2(s, b, b)) {
                if (out) *out = Violation{s, {a, a}, src.holds2(s, a, a)};
                return false;
            }
            for (auto [x, y] : f.pairs()) {
                if (x == a) continue;
                if (src.holds2(s, a, x) != tgt.holds2(s, b, y)) {
                    if (out) *out = Violation{s, {a, x}, src.holds2(s, a, x)};
                    return false;
                }
                if (src.holds2(s, x, a) != tgt.holds2(s, y, b)) {
                    if (out) *out = Violation{s, {x, a}, src.holds2(s, x, a)};
                    return false;
                }
            }
        } else {
            std::vector<int> pool;
            for (auto [x, y] : f.pairs())
                if (x != a) pool.push_back(x);
            bool ok = for_tuples_containing(ar, a, pool, [&](const Tuple& t) {
                Tuple img(t.size());
                for (std::size_t i = 0; i < t.size(); ++i) img[i] = t[i] == a ? b : f.at(t[i]);
                if (src.holds(s, t) != tgt.holds(s, img)) {
                    if (out) *out = Violation{s, t, src.holds(s, t)};
                    return false;
                }
                return true;
            });
            if (!ok) return false;
        }
    }
    return true;
}

std::optional<Violation> find_violation(const FinStructure& src, const FinStructure& tgt,
                                        const PartialMap& f) {
    if (!(src.signature() == tgt.signature())) throw InputError("signature mismatch");
    PartialMap acc;
    for (auto [a, b] : f.pairs()) {
        if (a < 0 || a >= src.size() || b < 0 || b >= tgt.size())
            throw InputError("map entry out of range");
        Violation v;
        if (!extends_consistently(src, tgt, acc, a, b, &v)) return v;
        acc.set(a, b);
    }
    return std::nullopt;
}

bool is_embedding(const FinStructure& src, const FinStructure& tgt, const PartialMap& f) {
    return !find_violation(src, tgt, f).has_value();
}

FinStructure restrict_ordered(const FinStructure& s, const std::vector<int>& order) {
    const int m = static_cast<int>(order.size());
    for (int x : order)
        if (x < 0 || x >= s.size()) throw InputError("element " + std::to_string(x) + " out of range");
    FinStructure out(s.signature_ptr(), m);
    const Signature& sig = s.signature();
    for (int sym = 0; sym < sig.size(); ++sym) {
        const int ar = sig[sym].arity;
        if (ar == 1) {
            for (int i = 0; i < m; ++i)
                if (s.holds1(sym, order[i])) out.set(sym, {i});
        } else if (ar == 2) {
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j)
                    if (s.holds2(sym, order[i], order[j])) out.set(sym, {i, j});
        } else {
            std::vector<int> pos(s.size(), -1);
            for (int i = 0; i < m; ++i) pos[order[i]] = i;
            for (const auto& t : s.tuples(sym)) {
                Tuple nt;
                bool inside = true;
                for (int x : t) {
                    if (pos[x] < 0) {
                        inside = false;
                        break;
                    }
                    nt.push_back(pos[x]);
                }
                if (inside) out.set(sym, nt);
            }
        }
    }
    return out;
}

Relabeled induced_substructure(const FinStructure& s, const std::vector<int>& subset) {
    std::vector<int> sorted = subset;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    return Relabeled{restrict_ordered(s, sorted), sorted};
}

std::vector<PartialMap> find_embeddings(const FinStructure& a, const FinStructure& b,
                                        std::optional<std::size_t> limit) {
    if (!(a.signature() == b.signature())) throw InputError("signature mismatch");
    std::vector<PartialMap> out;
    PartialMap cur;
    std::vector<char> used(b.size(), 0);
    auto rec = [&](auto&& self, int x) -> bool {
        if (x == a.size()) {
            out.push_back(cur);
            return !limit || out.size() < *limit;
        }
        for (int y = 0; y < b.size(); ++y) {
            if (used[y] || !extends_consistently(a, b, cur, x, y)) continue;
            cur.set(x, y);
            used[y] = 1;
            bool go = self(self, x + 1);
            used[y] = 0;
            cur.erase(x);
            if (!go) return false;
        }
        return true;
    };
    if (!limit || *limit > 0) rec(rec, 0);
    return out;
}

bool isomorphic_bruteforce(const FinStructure& a, const FinStructure& b) {
    if (a.size() != b.size() || !(a.signature() == b.signature())) return false;
    return !find_embeddings(a, b, 1).empty();
}

FinStructure disjoint_union(const FinStructure& a, const FinStructure& b) {
    if (!(a.signature() == b.signature())) throw InputError("signature mismatch");
    FinStructure out(a.signature_ptr(), a.size() + b.size());
    for (int s = 0; s < a.signature().size(); ++s) {
        for (const auto& t : a.tuples(s)) out.set(s, t);
        for (auto t : b.tuples(s)) {
            for (int& x : t) x += a.size();
            out.set(s, t);
        }
    }
    return out;
}

RqfType type_of(const FinStructure& s, const std::vector<int>& anchor, int z) {
    RqfType p;
    p.anchor = anchor;
    for (int i = 0; i < static_cast<int>(anchor.size()); ++i) {
        if (anchor[i] == z) {
            p.nontrivial = false;
            p.equals_anchor = i;
            p.extension = restrict_ordered(s, anchor);
            return p;
        }
    }
    std::vector<int> order = anchor;
    order.push_back(z);
    p.extension = restrict_ordered(s, order);
    return p;
}

bool realizes(const FinStructure& s, const RqfType& p, int z) {
    return type_of(s, p.anchor, z) == p;
}

FinStructure replace_anchor_structure(const FinStructure& ext, const FinStructure& anchor_structure) {
    const int k = anchor_structure.size();
    if (ext.size() != k + 1) throw InputError("extension size does not match anchor");
    FinStructure out(ext.signature_ptr(), k + 1);
    const Signature& sig = ext.signature();
    for (int s = 0; s < sig.size(); ++s) {
        for (const auto& t : anchor_structure.tuples(s)) out.set(s, t);
        for (const auto& t : ext.tuples(s))
            if (std::find(t.begin(), t.end(), k) != t.end()) out.set(s, t);
    }
    return out;
}

}  // namespace fraisse
