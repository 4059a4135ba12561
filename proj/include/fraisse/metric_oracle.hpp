#pragma once

#include <optional>
#include <vector>

#include "fraisse/oracle.hpp"
#include "fraisse/rational.hpp"

namespace fraisse {

// Finite metric spaces with distances in {p/q : q ≤ den, 0 < p/q ≤ diam},
// one symbol d_<value> per distance; exactly one holds on each pair of distinct points.
class MetricClass final : public ClassOracle {
public:
    MetricClass(int den, Rational diam);

    std::string name() const override;
    SignaturePtr signature() const override { return sig_; }
    bool member(const FinStructure& s) const override;
    bool accepts_point(const FinStructure& s, const std::vector<int>& active, int p) const override;
    ClassMetadata metadata() const override { return {true, true}; }
    std::vector<SelfOption> self_options() const override { return {SelfOption{}}; }
    std::vector<LinkOption> link_options() const override;

    int denominator_bound() const { return den_; }
    Rational diameter_bound() const { return diam_; }
    const std::vector<Rational>& values() const { return values_; }
    std::optional<int> symbol_for(const Rational& v) const;
    // Symbol index of the unique distance on a pair; -1 if none, -2 if several.
    int distance_symbol(const FinStructure& s, int a, int b) const;
    std::optional<Rational> distance(const FinStructure& s, int a, int b) const;
    FinStructure from_matrix(const std::vector<std::vector<Rational>>& d) const;

private:
    bool triangle_ok(int x, int y, int z) const;

    int den_;
    Rational diam_;
    std::vector<Rational> values_;
    std::vector<std::int64_t> scaled_;  // values_ times the lcm of denominators
    SignaturePtr sig_;
};

OraclePtr make_metric_oracle(const std::string& key);

}  // namespace fraisse
