#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "casebase.hpp"

namespace aacbr {

struct TreeParams {
    int max_depth = 3;       // depth counted in nodes; root has depth 1
    int max_leaf_nodes = 4;
};

/// Node of a binary CART tree. Split nodes route value <= threshold left.
struct TreeNode {
    int feature = -1;  // -1 for leaves
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    std::array<std::int64_t, 2> class_counts{0, 0};
    Label label = 0;   // leaf majority; ties resolve to the default label

    bool is_leaf() const { return feature < 0; }
};

struct Tree {
    std::vector<TreeNode> nodes;  // node 0 is the root
    int n_features = 0;
    Label default_label = 0;
};

struct SplitChoice {
    int feature = 0;
    double threshold = 0.0;
    double impurity_decrease = 0.0;  // parent gini minus weighted-average child gini
};

struct TreeCounts {
    int total_nodes = 0;
    int leaves = 0;
    int depth = 0;
};

/// Binary Gini impurity 1 - sum p_c^2. Throws if both counts are zero.
double gini(std::int64_t count0, std::int64_t count1);

/// Best (feature, threshold) over midpoint candidates between consecutive
/// distinct values, maximising Gini decrease. Ties break towards the lowest
/// feature index, then the lowest threshold. nullopt if no split separates
/// the labels.
std::optional<SplitChoice> best_split(const std::vector<std::vector<double>>& rows,
                                      const std::vector<Label>& labels,
                                      const std::vector<int>& row_ids);

/// Best-first CART growth under Gini impurity with depth and leaf caps.
/// Frontier is ordered by count-scaled impurity decrease, ties by node
/// creation order. Deterministic. Throws on empty input.
Tree grow(const std::vector<std::vector<double>>& rows, const std::vector<Label>& labels,
          const TreeParams& params, Label default_label);

/// Label of the leaf reached by threshold descent. Throws on arity mismatch.
Label tree_predict(const Tree& tree, const std::vector<double>& row);

TreeCounts tree_node_count(const Tree& tree);

/// Root-to-leaf node index sequence for one row (splits then the leaf).
std::vector<int> decision_path(const Tree& tree, const std::vector<double>& row);

std::string tree_to_dot(const Tree& tree, const std::vector<std::string>& feature_names,
                        const std::array<std::string, 2>& label_names);

}  // namespace aacbr
