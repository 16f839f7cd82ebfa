#pragma once

#include <span>
#include <vector>

namespace tgen {

/// CART-style regression tree: axis-aligned binary splits chosen to maximize
/// the reduction in squared error. Left children satisfy feature <= t.
struct RegressionTree {
    struct Node {
        int feature = -1;  // -1 marks a leaf
        double threshold = 0.0;
        double mean = 0.0;
        int count = 0;
        int left = -1;
        int right = -1;

        bool is_leaf() const { return feature < 0; }
    };

    std::vector<Node> nodes;  // nodes[0] is the root

    const Node& root() const { return nodes.front(); }
    double predict(std::span<const double> x) const;
    int leaf_count() const;
};

/// Fits by exhaustive threshold scan per feature. A node splits only when
/// some (feature, threshold) strictly reduces the squared error and leaves
/// both children with at least min_leaf samples; otherwise it stays a leaf.
RegressionTree fit_regression_tree(const std::vector<std::vector<double>>& features,
                                   const std::vector<double>& targets, int min_leaf);

}  // namespace tgen
