#include "featurize.hpp"

#include <algorithm>
#include <stdexcept>

namespace aacbr {

Vocabulary extract_vocabulary(const Tree& tree, const std::vector<std::string>& feature_names) {
    Vocabulary vocab;
    vocab.feature_names = feature_names;
    for (const TreeNode& n : tree.nodes)
        if (!n.is_leaf()) vocab.predicates.push_back(Predicate{n.feature, n.threshold});
    std::sort(vocab.predicates.begin(), vocab.predicates.end());
    vocab.predicates.erase(std::unique(vocab.predicates.begin(), vocab.predicates.end()),
                           vocab.predicates.end());
    return vocab;
}

PredicateSet binarise(const std::vector<double>& row, const Vocabulary& vocab) {
    PredicateSet chars(vocab.size());
    for (int i = 0; i < vocab.size(); ++i) {
        const Predicate& p = vocab.predicates[static_cast<size_t>(i)];
        if (p.feature >= static_cast<int>(row.size()))
            throw std::invalid_argument("binarise: row arity does not cover the vocabulary");
        if (row[static_cast<size_t>(p.feature)] <= p.threshold) chars.set(i);
    }
    return chars;
}

Casebase binarise_dataset(const std::vector<std::vector<double>>& rows,
                          const std::vector<Label>& labels, const Tree& tree,
                          const std::vector<std::string>& feature_names, Label default_label,
                          const std::array<std::string, 2>& label_names) {
    Casebase cb;
    cb.vocab = extract_vocabulary(tree, feature_names);
    cb.default_label = default_label;
    cb.label_names = label_names;
    for (size_t i = 0; i < rows.size(); ++i)
        cb.cases.push_back(
            Case{binarise(rows[i], cb.vocab), labels[i], {static_cast<int>(i)}});
    return cb;
}

}  // namespace aacbr
