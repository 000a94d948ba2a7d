#pragma once

#include "casebase.hpp"
#include "dtree.hpp"

namespace aacbr {

/// One predicate per distinct (feature, threshold) split node anywhere in the
/// tree, in (feature, threshold) order. Duplicate splits collapse.
Vocabulary extract_vocabulary(const Tree& tree, const std::vector<std::string>& feature_names);

/// Global binarisation: the set of all vocabulary predicates the row
/// satisfies, not just those on its decision path.
PredicateSet binarise(const std::vector<double>& row, const Vocabulary& vocab);

/// Binarises every row into a case (provenance = row index) over the
/// tree-extracted vocabulary. The default characterisation is the empty set.
Casebase binarise_dataset(const std::vector<std::vector<double>>& rows,
                          const std::vector<Label>& labels, const Tree& tree,
                          const std::vector<std::string>& feature_names, Label default_label,
                          const std::array<std::string, 2>& label_names);

}  // namespace aacbr
