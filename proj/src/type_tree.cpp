#include <algorithm>

#include "fraisse/splitting.hpp"
#include "fraisse/wreath.hpp"

namespace fraisse {

namespace {

std::vector<int> concat(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

FinStructure type_over(const FinStructure& s, const std::vector<int>& F, const std::vector<int>& copy) {
    return restrict_ordered(s, concat(F, copy));
}

bool meets(const std::vector<int>& a, const std::vector<int>& b) {
    for (int x : a)
        if (std::find(b.begin(), b.end(), x) != b.end()) return true;
    return false;
}

}  // namespace

TypeTree type_splitting_tree(const LimitApprox& approx, const FinStructure& C0, int depth) {
    if (depth < 0) throw InputError("depth must be >= 0");
    const ClassOracle& oracle = *approx.oracle;
    if (find_split_witness(oracle, C0, 4).verdict != SplitVerdict::Splits)
        throw InputError(oracle.name() + " is not seen to split around C0 at bound 4");
    const FinStructure& S = approx.top();
    std::vector<std::vector<int>> copies;
    for (const auto& e : find_embeddings(C0, S)) {
        std::vector<int> c;
        for (int x = 0; x < C0.size(); ++x) c.push_back(e.at(x));
        copies.push_back(std::move(c));
    }
    if (copies.empty()) throw InputError("C0 does not embed in the top stage");
    // copies in the newest level first, so the low points stay free to separate them
    const int older = approx.T() > 0 ? approx.stages[approx.T() - 1].size() : 0;
    std::stable_partition(copies.begin(), copies.end(), [&](const std::vector<int>& c) {
        return std::all_of(c.begin(), c.end(), [&](int x) { return x >= older; });
    });

    TypeTree tree;
    tree.depth = depth;
    tree.nodes.push_back(TypeTreeNode{copies.front(), {}, {}, -1});
    std::vector<int> level{0};
    std::vector<int> used = copies.front();  // every node copy so far
    auto in = [](const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); };
    for (int l = 0; l < depth; ++l) {
        // nodes of one level share the base; distinguishers chosen on this level are tried first
        const std::vector<int> base = tree.F;
        std::vector<int> fresh;
        std::vector<int> next;
        for (int v : level) {
            const std::vector<int> p = tree.nodes[v].copy;
            const FinStructure tp = type_over(S, base, p);
            std::vector<int> order = fresh;
            for (int f = 0; f < S.size(); ++f)
                if (!in(fresh, f) && !in(base, f) && !in(used, f)) order.push_back(f);
            bool done = false;
            for (const auto& q : copies) {
                if (done) break;
                if (meets(q, used) || meets(q, base) || meets(q, fresh) || type_over(S, base, q) != tp) continue;
                for (int f : order) {
                    if (in(q, f)) continue;
                    if (type_over(S, concat(base, {f}), p) == type_over(S, concat(base, {f}), q)) continue;
                    tree.nodes[v].base = base;
                    tree.nodes[v].distinguisher = {f};
                    if (!in(fresh, f)) fresh.push_back(f);
                    used.insert(used.end(), q.begin(), q.end());
                    tree.nodes.push_back(TypeTreeNode{p, {}, {}, v});
                    next.push_back(static_cast<int>(tree.nodes.size()) - 1);
                    tree.nodes.push_back(TypeTreeNode{q, {}, {}, v});
                    next.push_back(static_cast<int>(tree.nodes.size()) - 1);
                    done = true;
                    break;
                }
            }
            if (!done) {
                tree.note = "stage exhausted at depth " + std::to_string(l) + ": no second copy separable over |F| = " +
                            std::to_string(base.size());
                break;
            }
        }
        if (!tree.note.empty()) {
            // drop the partial level
            for (int v : level) {
                tree.nodes[v].base.clear();
                tree.nodes[v].distinguisher.clear();
            }
            tree.nodes.resize(level.back() + 1);
            break;
        }
        tree.F.insert(tree.F.end(), fresh.begin(), fresh.end());
        level = std::move(next);
        tree.reached = l + 1;
    }
    tree.leaves = level;
    std::sort(tree.F.begin(), tree.F.end());
    return tree;
}

bool verify_type_tree(const LimitApprox& approx, const TypeTree& tree, std::string* reason) {
    auto fail = [&](const std::string& why) {
        if (reason) *reason = why;
        return false;
    };
    const FinStructure& S = approx.top();
    if (tree.leaves.size() != (std::size_t{1} << tree.reached)) return fail("leaf count is not 2^depth");
    for (int v : tree.leaves)
        if (meets(tree.nodes.at(v).copy, tree.F)) return fail("a leaf copy meets F");
    for (std::size_t i = 0; i < tree.leaves.size(); ++i)
        for (std::size_t j = i + 1; j < tree.leaves.size(); ++j)
            if (type_over(S, tree.F, tree.nodes[tree.leaves[i]].copy) ==
                type_over(S, tree.F, tree.nodes[tree.leaves[j]].copy))
                return fail("leaves " + std::to_string(i) + " and " + std::to_string(j) + " share a type over F");
    for (std::size_t v = 1; v < tree.nodes.size(); ++v) {
        const auto& par = tree.nodes[tree.nodes[v].parent];
        if (type_over(S, par.base, tree.nodes[v].copy) != type_over(S, par.base, par.copy))
            return fail("node " + std::to_string(v) + " leaves its parent's type");
        auto sep = concat(par.base, par.distinguisher);
        if (v % 2 == 0 && type_over(S, sep, tree.nodes[v].copy) == type_over(S, sep, tree.nodes[v - 1].copy))
            return fail("distinguisher of node " + std::to_string(tree.nodes[v].parent) + " does not separate");
    }
    return true;
}

}  // namespace fraisse
