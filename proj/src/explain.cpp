#include "explain.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace aacbr {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

// Minimal dispute-tree node counts by lightest-derivation search over the
// AND/OR cost system:
//   costW(a) = 1 + sum over attackers b of costL(b)      (a in the extension)
//   costL(b) = 1 + min over extension attackers c of costW(c)
// Nodes are finalised in increasing cost order; both cost functions are
// monotone and dominate their inputs, so the first finalisation is optimal.
struct AdtCosts {
    std::vector<std::int64_t> cost_w, cost_l;

    void compute(const af::Framework& fw, const af::Grounded& g) {
        const size_t n = static_cast<size_t>(fw.n);
        cost_w.assign(n, kInf);
        cost_l.assign(n, kInf);
        std::vector<std::int64_t> sum_w(n, 1);
        std::vector<int> pending(n, 0);
        std::vector<char> done_w(n, 0), done_l(n, 0);

        using Entry = std::tuple<std::int64_t, int, int>;  // cost, kind (0=W,1=L), arg
        std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;

        for (int a = 0; a < fw.n; ++a) {
            if (!g.contains(a)) continue;
            pending[static_cast<size_t>(a)] =
                static_cast<int>(fw.attackers[static_cast<size_t>(a)].size());
            if (pending[static_cast<size_t>(a)] == 0) queue.emplace(1, 0, a);
        }

        while (!queue.empty()) {
            const auto [cost, kind, arg] = queue.top();
            queue.pop();
            const size_t ai = static_cast<size_t>(arg);
            if (kind == 0) {
                if (done_w[ai]) continue;
                done_w[ai] = 1;
                cost_w[ai] = cost;
                for (int b : fw.targets[ai]) {
                    const size_t bi = static_cast<size_t>(b);
                    if (g.contains(b) || done_l[bi]) continue;
                    if (cost + 1 < cost_l[bi]) {
                        cost_l[bi] = cost + 1;
                        queue.emplace(cost + 1, 1, b);
                    }
                }
            } else {
                if (done_l[ai]) continue;
                done_l[ai] = 1;
                cost_l[ai] = cost;
                for (int u : fw.targets[ai]) {
                    const size_t ui = static_cast<size_t>(u);
                    if (!g.contains(u) || done_w[ui]) continue;
                    sum_w[ui] += cost;
                    if (--pending[ui] == 0) queue.emplace(sum_w[ui], 0, u);
                }
            }
        }
    }
};

AdtNode build_w(const af::Framework& fw, const af::Grounded& g, const AdtCosts& costs, int arg);

AdtNode build_l(const af::Framework& fw, const af::Grounded& g, const AdtCosts& costs, int arg) {
    // Single child: the cheapest winning defeater; ties break on argument id.
    int best = -1;
    for (int c : fw.attackers[static_cast<size_t>(arg)]) {
        if (!g.contains(c) || costs.cost_w[static_cast<size_t>(c)] >= kInf) continue;
        if (best < 0 || costs.cost_w[static_cast<size_t>(c)] < costs.cost_w[static_cast<size_t>(best)])
            best = c;
    }
    if (best < 0) throw std::logic_error("losing node without a winning defeater");
    AdtNode node{false, arg, {}};
    node.children.push_back(build_w(fw, g, costs, best));
    return node;
}

AdtNode build_w(const af::Framework& fw, const af::Grounded& g, const AdtCosts& costs, int arg) {
    AdtNode node{true, arg, {}};
    for (int b : fw.attackers[static_cast<size_t>(arg)])
        node.children.push_back(build_l(fw, g, costs, b));
    return node;
}

}  // namespace

std::optional<AdtNode> minimal_adt(const af::Framework& fw, const af::Grounded& g,
                                   af::ArgId default_arg) {
    if (static_cast<int>(g.in.size()) != fw.n)
        throw std::invalid_argument("minimal_adt: grounded result does not match the framework");
    if (default_arg < 0 || default_arg >= fw.n)
        throw std::invalid_argument("minimal_adt: unknown default argument");

    AdtCosts costs;
    costs.compute(fw, g);

    if (g.contains(default_arg)) return build_w(fw, g, costs, default_arg);

    // Non-default prediction: the root loses to one winning attacker. When the
    // default argument is undecided (no extension member defeats it), no valid
    // dispute tree exists.
    bool defeated = false;
    for (int c : fw.attackers[static_cast<size_t>(default_arg)])
        if (g.contains(c)) { defeated = true; break; }
    if (!defeated) return std::nullopt;
    return build_l(fw, g, costs, default_arg);
}

namespace {

void metrics_rec(const AdtNode& node, int depth, AdtMetrics& m, std::set<int>& seen) {
    m.nodes += 1;
    m.depth = std::max(m.depth, depth);
    seen.insert(node.arg);
    for (const AdtNode& c : node.children) metrics_rec(c, depth + 1, m, seen);
}

}  // namespace

AdtMetrics adt_metrics(const AdtNode& root) {
    AdtMetrics m;
    std::set<int> seen;
    metrics_rec(root, 1, m, seen);
    m.unique_arguments = static_cast<int>(seen.size());
    return m;
}

namespace {

std::string node_label(const AdtNode& node, const std::vector<std::string>& labels) {
    const std::string arg_label = node.arg < static_cast<int>(labels.size())
                                      ? labels[static_cast<size_t>(node.arg)]
                                      : std::to_string(node.arg);
    return std::string(node.winner ? "W" : "L") + ", " + arg_label;
}

void dot_rec(const AdtNode& node, int& counter, int parent, std::ostringstream& os,
             const std::vector<std::string>& labels) {
    const int id = counter++;
    std::string label = node_label(node, labels);
    std::string escaped;
    for (char ch : label) {
        if (ch == '"' || ch == '\\') escaped.push_back('\\');
        escaped.push_back(ch);
    }
    os << "  n" << id << " [label=\"" << escaped << "\"];\n";
    if (parent >= 0) os << "  n" << id << " -> n" << parent << ";\n";
    for (const AdtNode& c : node.children) dot_rec(c, counter, id, os, labels);
}

void text_rec(const AdtNode& node, int indent, std::ostringstream& os,
              const std::vector<std::string>& labels) {
    for (int i = 0; i < indent; ++i) os << "  ";
    os << "[" << node_label(node, labels) << "]\n";
    for (const AdtNode& c : node.children) text_rec(c, indent + 1, os, labels);
}

}  // namespace

std::string adt_to_dot(const AdtNode& root, const std::vector<std::string>& labels) {
    std::ostringstream os;
    os << "digraph adt {\n";
    int counter = 0;
    dot_rec(root, counter, -1, os, labels);
    os << "}\n";
    return os.str();
}

std::string adt_to_text(const AdtNode& root, const std::vector<std::string>& labels) {
    std::ostringstream os;
    text_rec(root, 0, os, labels);
    return os.str();
}

std::string decision_path_to_text(const Tree& tree, const std::vector<double>& row,
                                  const std::vector<std::string>& feature_names,
                                  const std::array<std::string, 2>& label_names) {
    std::ostringstream os;
    for (int node : decision_path(tree, row)) {
        const TreeNode& n = tree.nodes[static_cast<size_t>(node)];
        if (n.is_leaf()) {
            os << "leaf: " << label_names[n.label] << " (" << n.class_counts[0] << ","
               << n.class_counts[1] << ")\n";
        } else {
            const bool taken = row[static_cast<size_t>(n.feature)] <= n.threshold;
            os << feature_names[static_cast<size_t>(n.feature)] << " <= "
               << format_double(n.threshold) << " : " << (taken ? "yes" : "no") << "\n";
        }
    }
    return os.str();
}

}  // namespace aacbr
