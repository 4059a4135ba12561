#pragma once

#include <memory>
#include <string>
#include <vector>

#include "fraisse/oracle.hpp"

namespace fraisse {

using Perm = std::vector<int>;

struct WreathSpec {
    int I = 1;
    std::vector<Perm> generators;
    std::vector<int> block_sizes;
};

// Group generated by gens on {0..k-1}, sorted; identity included.
std::vector<Perm> group_closure(const std::vector<Perm>& gens, int k);

// Age of the structure on I × ℕ with S = same block and one relation per
// H-orbit on I (unary) and on I × I (binary).
class MhClass final : public ClassOracle {
public:
    MhClass(int k, std::vector<Perm> generators);

    std::string name() const override;
    SignaturePtr signature() const override { return sig_; }
    bool member(const FinStructure& s) const override;
    bool accepts_point(const FinStructure& s, const std::vector<int>& active, int p) const override;
    ClassMetadata metadata() const override { return {true, false}; }
    std::vector<SelfOption> self_options() const override;
    std::vector<LinkOption> link_options() const override;

    int index_count() const { return k_; }
    const std::vector<Perm>& group() const { return group_; }
    int unary_orbit(int i) const { return orbit1_[i]; }
    int binary_orbit(int i, int j) const { return orbit2_[i][j]; }
    int unary_symbol(int orbit) const { return orbit; }
    int binary_symbol(int orbit) const { return n_orbit1_ + orbit; }
    int same_block_symbol() const { return n_orbit1_ + n_orbit2_; }

private:
    bool check(const FinStructure& s, const std::vector<int>& elems, int fresh) const;

    int k_;
    std::vector<Perm> gens_;
    std::vector<Perm> group_;
    std::vector<int> orbit1_;
    std::vector<std::vector<int>> orbit2_;
    int n_orbit1_ = 0, n_orbit2_ = 0;
    SignaturePtr sig_;
};

struct MhBuild {
    FinStructure structure;
    std::shared_ptr<const MhClass> oracle;
    std::vector<std::vector<int>> blocks;
};

MhBuild build_MH(const WreathSpec& spec);

// Parses "mh:<k>:<g1>|<g2>..." with each generator a comma list.
std::shared_ptr<const MhClass> parse_mh_key(const std::string& key);
OraclePtr make_mh_oracle(const std::string& key);

}  // namespace fraisse
