#pragma once

#include <optional>
#include <string>
#include <vector>

#include "af.hpp"
#include "engine.hpp"

namespace aacbr {

/// Node of an arbitrated dispute tree. A winning node's children are all
/// attackers of its argument (each losing); a losing node has exactly one
/// child, a winning attacker.
struct AdtNode {
    bool winner = true;
    af::ArgId arg = -1;
    std::vector<AdtNode> children;
};

struct AdtMetrics {
    int depth = 0;   // counted in nodes; a single node has depth 1
    int nodes = 0;
    int unique_arguments = 0;
};

/// Minimal (fewest nodes) arbitrated dispute tree for the default argument on
/// AF(D, N). Root is winning iff the default argument is in the grounded
/// extension. Returns nullopt when the grounded semantics leaves the default
/// argument undecided (possible under the `keep` strategy), in which case no
/// valid dispute tree exists. Throws if `grounded` does not belong to the
/// framework.
std::optional<AdtNode> minimal_adt(const af::Framework& framework, const af::Grounded& grounded,
                                   af::ArgId default_arg);

AdtMetrics adt_metrics(const AdtNode& root);

std::string adt_to_dot(const AdtNode& root, const std::vector<std::string>& labels);
std::string adt_to_text(const AdtNode& root, const std::vector<std::string>& labels);

/// Decision-path rendering for the tree side of the comparison.
std::string decision_path_to_text(const Tree& tree, const std::vector<double>& row,
                                  const std::vector<std::string>& feature_names,
                                  const std::array<std::string, 2>& label_names);

}  // namespace aacbr
