#include "tgen/regression_tree.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "tgen/errors.hpp"

namespace tgen {

double RegressionTree::predict(std::span<const double> x) const {
    int i = 0;
    while (!nodes[static_cast<std::size_t>(i)].is_leaf()) {
        const Node& n = nodes[static_cast<std::size_t>(i)];
        i = x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
    }
    return nodes[static_cast<std::size_t>(i)].mean;
}

int RegressionTree::leaf_count() const {
    int c = 0;
    for (const Node& n : nodes)
        if (n.is_leaf()) ++c;
    return c;
}

namespace {

struct BestSplit {
    int feature = -1;
    double threshold = 0.0;
    double sse = std::numeric_limits<double>::infinity();  // summed child SSE
};

double sum_of(const std::vector<double>& targets, const std::vector<int>& idx) {
    double s = 0.0;
    for (int i : idx) s += targets[static_cast<std::size_t>(i)];
    return s;
}

double sse_of(const std::vector<double>& targets, const std::vector<int>& idx,
              double mean) {
    double s = 0.0;
    for (int i : idx) {
        const double d = targets[static_cast<std::size_t>(i)] - mean;
        s += d * d;
    }
    return s;
}

BestSplit scan_splits(const std::vector<std::vector<double>>& features,
                      const std::vector<double>& targets,
                      const std::vector<int>& idx, int min_leaf) {
    const std::size_t m = idx.size();
    const std::size_t dims = features.front().size();
    BestSplit best;

    std::vector<int> sorted(idx);
    for (std::size_t f = 0; f < dims; ++f) {
        std::sort(sorted.begin(), sorted.end(), [&](int a, int b) {
            return features[static_cast<std::size_t>(a)][f] <
                   features[static_cast<std::size_t>(b)][f];
        });
        // prefix scan: evaluate every cut between distinct feature values
        double left_sum = 0.0, left_sq = 0.0;
        double total_sum = 0.0, total_sq = 0.0;
        for (int i : sorted) {
            const double t = targets[static_cast<std::size_t>(i)];
            total_sum += t;
            total_sq += t * t;
        }
        for (std::size_t p = 0; p + 1 < m; ++p) {
            const double t = targets[static_cast<std::size_t>(sorted[p])];
            left_sum += t;
            left_sq += t * t;
            const double fv = features[static_cast<std::size_t>(sorted[p])][f];
            const double fn = features[static_cast<std::size_t>(sorted[p + 1])][f];
            if (fv == fn) continue;
            const std::size_t nl = p + 1, nr = m - nl;
            if (nl < static_cast<std::size_t>(min_leaf) ||
                nr < static_cast<std::size_t>(min_leaf))
                continue;
            const double right_sum = total_sum - left_sum;
            const double right_sq = total_sq - left_sq;
            const double sse = (left_sq - left_sum * left_sum / static_cast<double>(nl)) +
                               (right_sq - right_sum * right_sum / static_cast<double>(nr));
            if (sse < best.sse) {
                best.sse = sse;
                best.feature = static_cast<int>(f);
                best.threshold = 0.5 * (fv + fn);
            }
        }
    }
    return best;
}

int build(const std::vector<std::vector<double>>& features,
          const std::vector<double>& targets, std::vector<int> idx, int min_leaf,
          RegressionTree& tree) {
    const int me = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    const double mean = sum_of(targets, idx) / static_cast<double>(idx.size());
    tree.nodes[static_cast<std::size_t>(me)].mean = mean;
    tree.nodes[static_cast<std::size_t>(me)].count = static_cast<int>(idx.size());

    const double node_sse = sse_of(targets, idx, mean);
    if (idx.size() < 2 * static_cast<std::size_t>(min_leaf) || node_sse <= 0.0)
        return me;

    const BestSplit best = scan_splits(features, targets, idx, min_leaf);
    if (best.feature < 0 || best.sse >= node_sse) return me;

    std::vector<int> left, right;
    for (int i : idx)
        (features[static_cast<std::size_t>(i)][static_cast<std::size_t>(best.feature)] <=
                 best.threshold
             ? left
             : right)
            .push_back(i);

    tree.nodes[static_cast<std::size_t>(me)].feature = best.feature;
    tree.nodes[static_cast<std::size_t>(me)].threshold = best.threshold;
    const int l = build(features, targets, std::move(left), min_leaf, tree);
    tree.nodes[static_cast<std::size_t>(me)].left = l;
    const int r = build(features, targets, std::move(right), min_leaf, tree);
    tree.nodes[static_cast<std::size_t>(me)].right = r;
    return me;
}

}  // namespace

RegressionTree fit_regression_tree(const std::vector<std::vector<double>>& features,
                                   const std::vector<double>& targets, int min_leaf) {
    if (features.empty() || features.size() != targets.size())
        throw ContractError("regression tree needs matching nonempty features/targets");
    if (min_leaf < 1) throw ConfigError("min_leaf must be positive");
    if (features.size() < static_cast<std::size_t>(min_leaf))
        throw ContractError("fewer samples than min_leaf");
    RegressionTree tree;
    std::vector<int> idx(features.size());
    std::iota(idx.begin(), idx.end(), 0);
    build(features, targets, std::move(idx), min_leaf, tree);
    return tree;
}

}  // namespace tgen
