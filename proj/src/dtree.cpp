#include "dtree.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace aacbr {

double gini(std::int64_t count0, std::int64_t count1) {
    if (count0 < 0 || count1 < 0) throw std::invalid_argument("negative class count");
    const std::int64_t n = count0 + count1;
    if (n == 0) throw std::invalid_argument("gini of an empty node");
    const double p0 = static_cast<double>(count0) / static_cast<double>(n);
    const double p1 = static_cast<double>(count1) / static_cast<double>(n);
    return 1.0 - p0 * p0 - p1 * p1;
}

std::optional<SplitChoice> best_split(const std::vector<std::vector<double>>& rows,
                                      const std::vector<Label>& labels,
                                      const std::vector<int>& row_ids) {
    const std::int64_t n = static_cast<std::int64_t>(row_ids.size());
    if (n < 2) return std::nullopt;

    std::array<std::int64_t, 2> total{0, 0};
    for (int r : row_ids) ++total[labels[static_cast<size_t>(r)]];
    if (total[0] == 0 || total[1] == 0) return std::nullopt;  // pure node
    const double parent_gini = gini(total[0], total[1]);

    const int n_features = static_cast<int>(rows[static_cast<size_t>(row_ids[0])].size());
    std::optional<SplitChoice> best;
    std::vector<std::pair<double, Label>> col(static_cast<size_t>(n));

    for (int f = 0; f < n_features; ++f) {
        for (size_t i = 0; i < col.size(); ++i) {
            const int r = row_ids[i];
            col[i] = {rows[static_cast<size_t>(r)][static_cast<size_t>(f)], labels[static_cast<size_t>(r)]};
        }
        std::sort(col.begin(), col.end());

        std::array<std::int64_t, 2> left{0, 0};
        for (size_t i = 0; i + 1 < col.size(); ++i) {
            ++left[col[i].second];
            if (col[i].first == col[i + 1].first) continue;  // not a boundary
            const double threshold = col[i].first + (col[i + 1].first - col[i].first) / 2.0;
            const std::int64_t nl = static_cast<std::int64_t>(i) + 1, nr = n - nl;
            const std::array<std::int64_t, 2> right{total[0] - left[0], total[1] - left[1]};
            const double child =
                (static_cast<double>(nl) * gini(left[0], left[1]) +
                 static_cast<double>(nr) * gini(right[0], right[1])) / static_cast<double>(n);
            const double decrease = parent_gini - child;
            if (decrease <= 0.0) continue;
            if (!best || decrease > best->impurity_decrease)
                best = SplitChoice{f, threshold, decrease};
            // ascending (feature, threshold) scan: on ties the earlier candidate wins
        }
    }
    return best;
}

namespace {

struct Pending {
    int node = -1;
    std::vector<int> row_ids;
    int depth = 1;
    std::optional<SplitChoice> split;
    double priority = 0.0;  // count-scaled impurity decrease
};

}  // namespace

Tree grow(const std::vector<std::vector<double>>& rows, const std::vector<Label>& labels,
          const TreeParams& params, Label default_label) {
    if (rows.empty()) throw std::invalid_argument("grow: empty dataset");
    if (rows.size() != labels.size()) throw std::invalid_argument("grow: rows/labels length mismatch");
    if (params.max_depth < 1 || params.max_leaf_nodes < 1)
        throw std::invalid_argument("grow: non-positive tree params");

    Tree tree;
    tree.n_features = static_cast<int>(rows[0].size());
    tree.default_label = default_label;

    auto make_leaf = [&](const std::vector<int>& row_ids) {
        TreeNode node;
        for (int r : row_ids) ++node.class_counts[labels[static_cast<size_t>(r)]];
        if (node.class_counts[0] != node.class_counts[1])
            node.label = node.class_counts[0] > node.class_counts[1] ? Label{0} : Label{1};
        else
            node.label = default_label;
        tree.nodes.push_back(node);
        return static_cast<int>(tree.nodes.size()) - 1;
    };

    std::vector<int> all(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) all[i] = static_cast<int>(i);

    std::vector<Pending> frontier;
    auto enqueue = [&](int node, std::vector<int> row_ids, int depth) {
        Pending p;
        p.node = node;
        p.depth = depth;
        if (depth < params.max_depth) p.split = best_split(rows, labels, row_ids);
        if (p.split)
            p.priority = p.split->impurity_decrease * static_cast<double>(row_ids.size());
        p.row_ids = std::move(row_ids);
        frontier.push_back(std::move(p));
    };

    enqueue(make_leaf(all), std::move(all), 1);
    int leaves = 1;

    while (leaves < params.max_leaf_nodes) {
        // oldest node wins priority ties (frontier keeps creation order)
        int pick = -1;
        for (size_t i = 0; i < frontier.size(); ++i) {
            if (!frontier[i].split) continue;
            if (pick < 0 || frontier[i].priority > frontier[static_cast<size_t>(pick)].priority)
                pick = static_cast<int>(i);
        }
        if (pick < 0) break;  // nothing improvable

        Pending p = std::move(frontier[static_cast<size_t>(pick)]);
        frontier.erase(frontier.begin() + pick);

        std::vector<int> left_ids, right_ids;
        for (int r : p.row_ids) {
            if (rows[static_cast<size_t>(r)][static_cast<size_t>(p.split->feature)] <= p.split->threshold)
                left_ids.push_back(r);
            else
                right_ids.push_back(r);
        }
        const int left = make_leaf(left_ids);
        const int right = make_leaf(right_ids);
        TreeNode& node = tree.nodes[static_cast<size_t>(p.node)];
        node.feature = p.split->feature;
        node.threshold = p.split->threshold;
        node.left = left;
        node.right = right;
        ++leaves;
        enqueue(left, std::move(left_ids), p.depth + 1);
        enqueue(right, std::move(right_ids), p.depth + 1);
    }
    return tree;
}

static int descend(const Tree& tree, const std::vector<double>& row, std::vector<int>* path) {
    if (static_cast<int>(row.size()) != tree.n_features)
        throw std::invalid_argument("row arity does not match the tree");
    int node = 0;
    while (true) {
        if (path) path->push_back(node);
        const TreeNode& n = tree.nodes[static_cast<size_t>(node)];
        if (n.is_leaf()) return node;
        node = row[static_cast<size_t>(n.feature)] <= n.threshold ? n.left : n.right;
    }
}

Label tree_predict(const Tree& tree, const std::vector<double>& row) {
    return tree.nodes[static_cast<size_t>(descend(tree, row, nullptr))].label;
}

std::vector<int> decision_path(const Tree& tree, const std::vector<double>& row) {
    std::vector<int> path;
    descend(tree, row, &path);
    return path;
}

static TreeCounts count_rec(const Tree& tree, int node) {
    const TreeNode& n = tree.nodes[static_cast<size_t>(node)];
    if (n.is_leaf()) return {1, 1, 1};
    const TreeCounts l = count_rec(tree, n.left), r = count_rec(tree, n.right);
    return {1 + l.total_nodes + r.total_nodes, l.leaves + r.leaves, 1 + std::max(l.depth, r.depth)};
}

TreeCounts tree_node_count(const Tree& tree) {
    if (tree.nodes.empty()) return {0, 0, 0};
    return count_rec(tree, 0);
}

std::string tree_to_dot(const Tree& tree, const std::vector<std::string>& feature_names,
                        const std::array<std::string, 2>& label_names) {
    std::ostringstream os;
    os << "digraph dtree {\n";
    for (size_t i = 0; i < tree.nodes.size(); ++i) {
        const TreeNode& n = tree.nodes[i];
        os << "  n" << i << " [label=\"";
        if (n.is_leaf())
            os << label_names[n.label] << " (" << n.class_counts[0] << "," << n.class_counts[1] << ")";
        else
            os << feature_names[static_cast<size_t>(n.feature)] << " <= " << format_double(n.threshold);
        os << "\"];\n";
    }
    for (size_t i = 0; i < tree.nodes.size(); ++i) {
        const TreeNode& n = tree.nodes[i];
        if (n.is_leaf()) continue;
        os << "  n" << i << " -> n" << n.left << " [label=\"yes\"];\n";
        os << "  n" << i << " -> n" << n.right << " [label=\"no\"];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace aacbr
