#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "predicate_set.hpp"

namespace aacbr {

/// Binary class label; index into Casebase::label_names.
using Label = std::uint8_t;

/// One binary split predicate: feature value at-most threshold.
struct Predicate {
    int feature = 0;
    double threshold = 0.0;

    friend bool operator==(const Predicate&, const Predicate&) = default;
    friend bool operator<(const Predicate& a, const Predicate& b) {
        if (a.feature != b.feature) return a.feature < b.feature;
        return a.threshold < b.threshold;
    }
};

/// Ordered predicate vocabulary shared by all characterisations of one model.
struct Vocabulary {
    std::vector<Predicate> predicates;       // sorted by (feature, threshold), unique
    std::vector<std::string> feature_names;  // indexed by Predicate::feature

    int size() const { return static_cast<int>(predicates.size()); }
    std::string predicate_name(int i) const;

    friend bool operator==(const Vocabulary&, const Vocabulary&) = default;
};

struct Case {
    PredicateSet chars;
    Label outcome = 0;
    std::vector<int> provenance;  // source row ids; non-empty for mined cases
};

struct Casebase {
    Vocabulary vocab;
    std::vector<Case> cases;
    Label default_label = 0;
    std::array<std::string, 2> label_names{"0", "1"};
};

enum class Strategy { Keep, Removal, Majority };

const char* strategy_name(Strategy s);
Strategy strategy_from_name(const std::string& name);

/// Specificity: a at-least-as-specific-as b, i.e. a ⊇ b.
/// Throws on a universe-size mismatch.
bool more_specific_eq(const PredicateSet& a, const PredicateSet& b);

/// A past characterisation is irrelevant to a new one unless the new case
/// is at least as specific: irrelevant iff NOT (past ⊆ new).
bool irrelevant(const PredicateSet& new_chars, const PredicateSet& past_chars);

/// All unordered case-index pairs sharing a characterisation with differing
/// outcomes. Empty iff the casebase is coherent.
std::vector<std::pair<int, int>> coherence_violations(const Casebase& cb);

/// Resolves incoherence per the selected strategy. All strategies merge exact
/// (characterisation, outcome) duplicates into one case with concatenated
/// provenance; output order is deterministic.
Casebase apply_strategy(const Casebase& cb, Strategy strategy);

/// JSON document listing vocabulary and cases; byte-stable for equal input.
std::string casebase_to_json(const Casebase& cb);

/// Shortest round-trip decimal rendering (matches JSON number output).
std::string format_double(double v);

}  // namespace aacbr
