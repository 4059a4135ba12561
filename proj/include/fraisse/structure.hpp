#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fraisse {

// Bad user input: malformed files, out-of-range elements, signature mismatch.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

using Tuple = std::vector<int>;

struct Symbol {
    std::string name;
    int arity = 1;
    bool operator==(const Symbol&) const = default;
};

class Signature {
public:
    Signature() = default;
    explicit Signature(std::vector<Symbol> symbols);

    const std::vector<Symbol>& symbols() const { return symbols_; }
    int size() const { return static_cast<int>(symbols_.size()); }
    const Symbol& operator[](int i) const { return symbols_.at(i); }
    std::optional<int> index_of(const std::string& name) const;
    int max_arity() const;

    bool operator==(const Signature& o) const { return symbols_ == o.symbols_; }

private:
    std::vector<Symbol> symbols_;
};

using SignaturePtr = std::shared_ptr<const Signature>;

SignaturePtr make_signature(std::vector<Symbol> symbols);

// Finite relational structure on elements 0..n-1. Unary and binary relations
// are dense byte tables; higher arities are tuple sets.
class FinStructure {
public:
    FinStructure() : FinStructure(make_signature({}), 0) {}
    FinStructure(SignaturePtr sig, int n);

    const Signature& signature() const { return *sig_; }
    const SignaturePtr& signature_ptr() const { return sig_; }
    int size() const { return n_; }

    bool holds(int sym, std::span<const int> t) const;
    bool holds(int sym, std::initializer_list<int> t) const {
        return holds(sym, std::span<const int>(t.begin(), t.size()));
    }
    bool holds1(int sym, int a) const { return unary_[sym][a] != 0; }
    bool holds2(int sym, int a, int b) const { return binary_[sym][a * n_ + b] != 0; }

    void set(int sym, std::span<const int> t, bool value = true);
    void set(int sym, std::initializer_list<int> t, bool value = true) {
        set(sym, std::span<const int>(t.begin(), t.size()), value);
    }

    // Sorted lexicographically.
    std::vector<Tuple> tuples(int sym) const;
    std::size_t tuple_count() const;

    // Appends a fresh element with no tuples; returns its id.
    int add_point();

    // Removes every tuple that involves all of {a, b} (a == b allowed: tuples on a only).
    void clear_pair(int a, int b);

    bool operator==(const FinStructure& o) const;

    // Compact encoding, equal iff structures are equal.
    std::string key() const;

private:
    void check_tuple(int sym, std::span<const int> t) const;

    SignaturePtr sig_;
    int n_ = 0;
    std::vector<std::vector<std::uint8_t>> unary_;
    std::vector<std::vector<std::uint8_t>> binary_;
    std::vector<std::set<Tuple>> higher_;
};

// Finite injective-or-not map between element ids.
class PartialMap {
public:
    PartialMap() = default;
    explicit PartialMap(std::map<int, int> pairs) : fwd_(std::move(pairs)) {}
    PartialMap(std::initializer_list<std::pair<const int, int>> pairs) : fwd_(pairs) {}
    static PartialMap identity(int n);
    static PartialMap from_vector(const std::vector<int>& images);

    void set(int a, int b) { fwd_[a] = b; }
    void erase(int a) { fwd_.erase(a); }
    bool contains(int a) const { return fwd_.count(a) != 0; }
    int at(int a) const;
    std::optional<int> get(int a) const;
    std::size_t size() const { return fwd_.size(); }
    bool empty() const { return fwd_.empty(); }
    const std::map<int, int>& pairs() const { return fwd_; }

    std::vector<int> domain() const;
    std::vector<int> range() const;
    bool in_range(int b) const;
    bool is_injective() const;
    PartialMap inverse() const;
    // (this ∘ inner)(x) = this(inner(x)), defined where both are.
    PartialMap compose(const PartialMap& inner) const;
    PartialMap restrict_to(const std::vector<int>& dom) const;
    // Union; nullopt if the two maps disagree somewhere.
    std::optional<PartialMap> merge(const PartialMap& o) const;
    bool extends(const PartialMap& smaller) const;

    bool operator==(const PartialMap&) const = default;

private:
    std::map<int, int> fwd_;
};

struct Violation {
    int symbol = -1;          // -1: injectivity failure
    Tuple tuple;              // in source ids
    bool holds_in_source = false;
};

// First tuple over dom(f) whose membership differs between src and its image in tgt.
std::optional<Violation> find_violation(const FinStructure& src, const FinStructure& tgt,
                                        const PartialMap& f);
bool is_embedding(const FinStructure& src, const FinStructure& tgt, const PartialMap& f);

// Checks tuples involving a when f is extended by a -> b (f assumed already consistent).
bool extends_consistently(const FinStructure& src, const FinStructure& tgt,
                          const PartialMap& f, int a, int b,
                          Violation* out = nullptr);

struct Relabeled {
    FinStructure structure;
    std::vector<int> elements;  // new id i corresponds to old id elements[i]
};

// Elements are renumbered in increasing order of their old ids.
Relabeled induced_substructure(const FinStructure& s, const std::vector<int>& subset);
// Element i of the result is order[i]; order must be duplicate-free.
FinStructure restrict_ordered(const FinStructure& s, const std::vector<int>& order);

std::vector<PartialMap> find_embeddings(const FinStructure& a, const FinStructure& b,
                                        std::optional<std::size_t> limit = std::nullopt);
bool isomorphic_bruteforce(const FinStructure& a, const FinStructure& b);

struct Canonical {
    FinStructure structure;
    std::vector<int> relabel;  // old id -> new id; an isomorphism s -> structure
};

// Canonical form under isomorphisms that preserve the optional colouring.
Canonical canonical_form(const FinStructure& s, const std::vector<int>& colours = {});
std::string canonical_key(const FinStructure& s, const std::vector<int>& colours = {});

// Disjoint union, positions of b shifted by a.size().
FinStructure disjoint_union(const FinStructure& a, const FinStructure& b);

struct RqfType {
    std::vector<int> anchor;  // base elements, positions 0..k-1 of extension
    FinStructure extension;   // on anchor ∪ {★}; ★ at position anchor.size() when nontrivial
    bool nontrivial = true;
    int equals_anchor = -1;   // for trivial types: position of the anchor element
    bool operator==(const RqfType&) const = default;
};

// Type of element z over the ordered anchor inside s.
RqfType type_of(const FinStructure& s, const std::vector<int>& anchor, int z);
bool realizes(const FinStructure& s, const RqfType& p, int z);

// Builds the anchor structure from `anchor_structure` and copies every tuple that
// involves the last position of `ext` (positions preserved).
FinStructure replace_anchor_structure(const FinStructure& ext, const FinStructure& anchor_structure);

}  // namespace fraisse
