#include <algorithm>
#include <numeric>
#include <sstream>

#include "fraisse/metric_oracle.hpp"
#include "fraisse/mh.hpp"
#include "fraisse/oracle.hpp"

namespace fraisse {

namespace {

class EmptyLanguage final : public ClassOracle {
public:
    std::string name() const override { return "k1"; }
    SignaturePtr signature() const override { return sig_; }
    bool member(const FinStructure&) const override { return true; }
    bool accepts_point(const FinStructure&, const std::vector<int>&, int) const override { return true; }
    ClassMetadata metadata() const override { return {true, false}; }
    std::vector<SelfOption> self_options() const override { return {SelfOption{}}; }
    std::vector<LinkOption> link_options() const override { return {LinkOption{}}; }

private:
    SignaturePtr sig_ = make_signature({});
};

// Symmetric irreflexive R; with cliques = true, R-components are complete.
class GraphClass final : public ClassOracle {
public:
    explicit GraphClass(bool cliques) : cliques_(cliques) {}
    std::string name() const override { return cliques_ ? "k2" : "graphs"; }
    SignaturePtr signature() const override { return sig_; }
    ClassMetadata metadata() const override { return {true, !cliques_}; }
    std::vector<SelfOption> self_options() const override { return {SelfOption{}}; }
    std::vector<LinkOption> link_options() const override {
        return {LinkOption{}, LinkOption{{{0, 0}, {0, 1}}}};
    }

    bool member(const FinStructure& s) const override {
        std::vector<int> act;
        for (int p = 0; p < s.size(); ++p) {
            act.push_back(p);
            if (!accepts_point(s, act, p)) return false;
        }
        return true;
    }

    bool accepts_point(const FinStructure& s, const std::vector<int>& active, int p) const override {
        if (s.holds2(0, p, p)) return false;
        for (int q : active) {
            if (q == p) continue;
            if (s.holds2(0, p, q) != s.holds2(0, q, p)) return false;
        }
        if (!cliques_) return true;
        for (int q : active) {
            if (q == p) continue;
            for (int r : active) {
                if (r == p || r == q) continue;
                // p-q-r and q-p-r paths must close
                if (s.holds2(0, p, q) && s.holds2(0, q, r) && !s.holds2(0, p, r)) return false;
                if (s.holds2(0, q, p) && s.holds2(0, p, r) && !s.holds2(0, q, r)) return false;
            }
        }
        return true;
    }

private:
    bool cliques_;
    SignaturePtr sig_ = make_signature({{"R", 2}});
};

class LinearOrders final : public ClassOracle {
public:
    std::string name() const override { return "linear-orders"; }
    SignaturePtr signature() const override { return sig_; }
    ClassMetadata metadata() const override { return {true, true}; }
    std::vector<SelfOption> self_options() const override { return {SelfOption{}}; }
    // option 0: q < p, option 1: p < q
    std::vector<LinkOption> link_options() const override {
        return {LinkOption{{{0, 1}}}, LinkOption{{{0, 0}}}};
    }

    bool member(const FinStructure& s) const override {
        std::vector<int> act;
        for (int p = 0; p < s.size(); ++p) {
            act.push_back(p);
            if (!accepts_point(s, act, p)) return false;
        }
        return true;
    }

    bool accepts_point(const FinStructure& s, const std::vector<int>& active, int p) const override {
        if (s.holds2(0, p, p)) return false;
        for (int q : active) {
            if (q == p) continue;
            if (s.holds2(0, p, q) == s.holds2(0, q, p)) return false;
        }
        for (int q : active) {
            if (q == p) continue;
            for (int r : active) {
                if (r == p || r == q) continue;
                if (s.holds2(0, p, q) && s.holds2(0, q, r) && !s.holds2(0, p, r)) return false;
                if (s.holds2(0, q, p) && s.holds2(0, p, r) && !s.holds2(0, q, r)) return false;
                if (s.holds2(0, q, r) && s.holds2(0, r, p) && !s.holds2(0, q, p)) return false;
            }
        }
        return true;
    }

private:
    SignaturePtr sig_ = make_signature({{"<", 2}});
};

// At most one point carries u.
class UnaryMarked final : public ClassOracle {
public:
    std::string name() const override { return "unary-marked"; }
    SignaturePtr signature() const override { return sig_; }
    ClassMetadata metadata() const override { return {false, std::nullopt}; }
    std::vector<SelfOption> self_options() const override { return {SelfOption{}, SelfOption{{0}}}; }
    std::vector<LinkOption> link_options() const override { return {LinkOption{}}; }
    bool member(const FinStructure& s) const override {
        int c = 0;
        for (int p = 0; p < s.size(); ++p) c += s.holds1(0, p);
        return c <= 1;
    }
    bool accepts_point(const FinStructure& s, const std::vector<int>& active, int) const override {
        int c = 0;
        for (int p : active) c += s.holds1(0, p);
        return c <= 1;
    }

private:
    SignaturePtr sig_ = make_signature({{"u", 1}});
};

// S an equivalence; R symmetric, irreflexive, disjoint from S and S-invariant.
class RsExample final : public ClassOracle {
public:
    std::string name() const override { return "rs-example"; }
    SignaturePtr signature() const override { return sig_; }
    ClassMetadata metadata() const override { return {true, false}; }
    std::vector<SelfOption> self_options() const override { return {SelfOption{{1}}}; }
    std::vector<LinkOption> link_options() const override {
        return {LinkOption{}, LinkOption{{{1, 0}, {1, 1}}}, LinkOption{{{0, 0}, {0, 1}}}};
    }

    bool member(const FinStructure& s) const override {
        std::vector<int> act;
        for (int p = 0; p < s.size(); ++p) {
            act.push_back(p);
            if (!accepts_point(s, act, p)) return false;
        }
        return true;
    }

    bool accepts_point(const FinStructure& s, const std::vector<int>& active, int p) const override {
        constexpr int R = 0, S = 1;
        if (!s.holds2(S, p, p) || s.holds2(R, p, p)) return false;
        for (int q : active) {
            if (q == p) continue;
            if (s.holds2(S, p, q) != s.holds2(S, q, p)) return false;
            if (s.holds2(R, p, q) != s.holds2(R, q, p)) return false;
            if (s.holds2(R, p, q) && s.holds2(S, p, q)) return false;
        }
        for (int q : active) {
            if (q == p) continue;
            for (int r : active) {
                if (r == p || r == q) continue;
                if (s.holds2(S, p, q) && s.holds2(S, q, r) && !s.holds2(S, p, r)) return false;
                if (s.holds2(S, q, p) && s.holds2(S, p, r) && !s.holds2(S, q, r)) return false;
                // R depends only on blocks
                if (s.holds2(S, p, q) && s.holds2(R, q, r) != s.holds2(R, p, r)) return false;
                if (s.holds2(S, q, r) && s.holds2(R, p, q) != s.holds2(R, p, r)) return false;
            }
        }
        return true;
    }

private:
    SignaturePtr sig_ = make_signature({{"R", 2}, {"S", 2}});
};

}  // namespace

OraclePtr make_oracle(const std::string& key) {
    if (key == "k1") return std::make_shared<EmptyLanguage>();
    if (key == "k2") return std::make_shared<GraphClass>(true);
    if (key == "graphs") return std::make_shared<GraphClass>(false);
    if (key == "linear-orders") return std::make_shared<LinearOrders>();
    if (key == "unary-marked") return std::make_shared<UnaryMarked>();
    if (key == "rs-example") return std::make_shared<RsExample>();
    if (key.rfind("rational-metric", 0) == 0) return make_metric_oracle(key);
    if (key.rfind("mh:", 0) == 0) return make_mh_oracle(key);
    throw InputError("unknown oracle '" + key + "'");
}

std::vector<std::string> builtin_oracle_names() {
    return {"k1", "k2", "graphs", "linear-orders", "rational-metric", "unary-marked", "rs-example"};
}

}  // namespace fraisse
