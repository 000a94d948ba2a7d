#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dataset.hpp"
#include "engine.hpp"

namespace aacbr {

enum class ModelKind { Dtree, Regular, Cumulative };

const char* model_kind_name(ModelKind k);
ModelKind model_kind_from_name(const std::string& name);

/// The hyperparameter grid: depth 3..13 step 2, leaves 4..512 ratio 2.
struct Grid {
    std::vector<int> max_depths{3, 5, 7, 9, 11, 13};
    std::vector<int> max_leaf_nodes{4, 8, 16, 32, 64, 128, 256, 512};
};

/// Deterministic sub-seed derivation (splitmix64 over master + stream).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

/// Percentage accuracy. Throws on a length mismatch.
double accuracy(const std::vector<Label>& predictions, const std::vector<Label>& labels);

/// Stratified fold assignment: fold id per row, classes dealt round-robin
/// after a seeded shuffle. Throws if any fold would be single-class.
std::vector<int> stratified_folds(const std::vector<Label>& labels, int folds, std::uint64_t seed);

struct ExplanationStats {
    double depth = 0.0;
    double nodes = 0.0;
    double unique_arguments = 0.0;
    int explained = 0;
    int unavailable = 0;  // rows where grounded leaves the default undecided
};

struct FoldResult {
    int fold = 0;
    double test_accuracy = 0.0;
    TreeParams chosen;
    double inner_accuracy = 0.0;
    double size = 0.0;  // model_size for AA-CBR, total tree nodes for dtree
    ExplanationStats expl;
    double agreement = -1.0;  // regular/cumulative prediction agreement; -1 when n/a
};

struct CvReport {
    ModelKind model = ModelKind::Dtree;
    Strategy strategy = Strategy::Majority;
    int folds = 5;
    std::uint64_t seed = 0;
    std::vector<FoldResult> fold_results;
    double mean_accuracy = 0.0, std_accuracy = 0.0;
    double mean_size = 0.0, std_size = 0.0;
    ExplanationStats mean_expl;  // averaged over folds

    std::string to_json() const;
    std::string to_text() const;
};

/// Outer stratified k-fold CV with per-fold grid search on a single
/// stratified 80/20 inner split, refit on the full fold training set.
CvReport run_cv(const Dataset& ds, ModelKind kind, Strategy strategy, int folds,
                std::uint64_t seed);

struct SweepAggregate {
    double min = 0.0, max = 0.0, mean = 0.0, stddev = 0.0;
};

struct SweepReport {
    ModelKind model = ModelKind::Regular;
    std::uint64_t seed = 0;
    // Per strategy, accuracy per grid point in fixed grid order.
    std::vector<std::vector<double>> accuracies;  // indexed by Strategy order keep,removal,majority
    std::vector<SweepAggregate> per_strategy;
    SweepAggregate delta_removal_keep;
    SweepAggregate delta_majority_keep;

    std::string to_json() const;
    std::string to_text() const;
};

/// Every grid point per incoherence strategy on one fixed seeded 80/20
/// train/test split; aggregates over grid points and over per-point deltas.
SweepReport strategy_sweep(const Dataset& ds, ModelKind kind, std::uint64_t seed);

}  // namespace aacbr
