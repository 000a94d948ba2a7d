#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "af.hpp"
#include "casebase.hpp"
#include "dtree.hpp"
#include "featurize.hpp"

namespace aacbr {

enum class Variant { Regular, Cumulative };

const char* variant_name(Variant v);
Variant variant_from_name(const std::string& name);

/// AF mined from a casebase alone. Argument 0 is the default argument; the
/// remaining arguments map to casebase indices through `arg_case`.
/// Cases equal to (∅, default outcome) duplicate the default argument and are
/// not given an argument of their own.
struct MinedAf {
    af::Framework framework;
    std::vector<int> arg_case;  // per argument: casebase index, -1 for default

    int default_arg() const { return 0; }
};

/// Fitted model: tree-derived vocabulary, post-strategy casebase (for the
/// cumulative variant, the retained subset) and the AF mined from it.
struct Model {
    Variant variant = Variant::Regular;
    Strategy strategy = Strategy::Majority;
    TreeParams params;
    std::uint64_t seed = 0;
    Tree tree;
    std::vector<std::string> feature_names;
    Casebase casebase;  // post-strategy (cumulative: retained subset)
    MinedAf af_d;
};

struct Prediction {
    Label outcome = 0;
    af::Framework af_dn;    // AF(D, N); the new case is the last argument
    af::Grounded grounded;  // computed on af_dn
    int new_arg = -1;
    PredicateSet chars;     // binarised new case
};

/// Mines AF(D): attacks (a) differing outcomes, (b) attacker at least as
/// specific, (c) no same-outcome case strictly between.
MinedAf mine_af(const Casebase& cb);

/// Extends AF(D) with the new-case argument, which attacks exactly the
/// arguments whose characterisation the new case is not at least as specific
/// as. Returns the framework; the new argument has id af_d.framework.n.
af::Framework add_new_case(const MinedAf& af_d, const Casebase& cb, const PredicateSet& new_chars);

/// Grounded-semantics classification of one raw row.
Prediction predict(const Model& model, const std::vector<double>& row);

struct FitOptions {
    TreeParams params;
    Strategy strategy = Strategy::Majority;
    std::uint64_t seed = 0;
    int default_label = -1;  // -1: majority class of the training rows
};

Model fit_regular(const std::vector<std::vector<double>>& rows, const std::vector<Label>& labels,
                  const std::vector<std::string>& feature_names,
                  const std::array<std::string, 2>& label_names, const FitOptions& options);

/// Cumulative variant: cases are processed from general to specific and
/// retained only when the model built so far mispredicts them.
Model fit_cumulative(const std::vector<std::vector<double>>& rows, const std::vector<Label>& labels,
                     const std::vector<std::string>& feature_names,
                     const std::array<std::string, 2>& label_names, const FitOptions& options);

/// Restricts the framework to arguments with a directed attack path to the
/// default argument (plus the default itself). `kept` receives the surviving
/// old argument ids in ascending order.
af::Framework remove_spikes(const af::Framework& framework, int default_arg,
                            std::vector<int>* kept = nullptr);

/// Argument count of the spike-removed AF(D), default argument included.
int model_size(const Model& model);

/// Rendering of each AF(D) argument in "{predicates}: outcome" form.
std::vector<std::string> argument_labels(const Model& model);
std::string argument_label(const Casebase& cb, const PredicateSet& chars, const std::string& outcome);

std::string model_to_json(const Model& model);
Model model_from_json(const std::string& text);

}  // namespace aacbr
