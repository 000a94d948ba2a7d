#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "explain.hpp"

namespace aacbr {

const char* model_kind_name(ModelKind k) {
    switch (k) {
        case ModelKind::Dtree: return "dtree";
        case ModelKind::Regular: return "regular";
        case ModelKind::Cumulative: return "cumulative";
    }
    return "?";
}

ModelKind model_kind_from_name(const std::string& name) {
    if (name == "dtree") return ModelKind::Dtree;
    if (name == "regular") return ModelKind::Regular;
    if (name == "cumulative") return ModelKind::Cumulative;
    throw std::invalid_argument("unknown model kind: " + name);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double accuracy(const std::vector<Label>& predictions, const std::vector<Label>& labels) {
    if (predictions.size() != labels.size())
        throw std::invalid_argument("accuracy: length mismatch");
    if (predictions.empty()) throw std::invalid_argument("accuracy: empty input");
    std::int64_t correct = 0;
    for (size_t i = 0; i < predictions.size(); ++i)
        if (predictions[i] == labels[i]) ++correct;
    return 100.0 * static_cast<double>(correct) / static_cast<double>(predictions.size());
}

std::vector<int> stratified_folds(const std::vector<Label>& labels, int folds, std::uint64_t seed) {
    if (folds < 2) throw std::invalid_argument("need at least 2 folds");
    std::array<std::vector<int>, 2> by_class;
    for (size_t i = 0; i < labels.size(); ++i)
        by_class[labels[i]].push_back(static_cast<int>(i));
    std::mt19937_64 rng(seed);
    std::vector<int> assignment(labels.size(), -1);
    for (auto& idx : by_class) {
        std::shuffle(idx.begin(), idx.end(), rng);
        for (size_t i = 0; i < idx.size(); ++i)
            assignment[static_cast<size_t>(idx[i])] = static_cast<int>(i) % folds;
    }
    // Reject degenerate folds (a test fold or train side with one class only).
    for (int f = 0; f < folds; ++f) {
        std::array<std::int64_t, 2> test{0, 0}, train{0, 0};
        for (size_t i = 0; i < labels.size(); ++i)
            ++(assignment[i] == f ? test : train)[labels[i]];
        if (test[0] == 0 || test[1] == 0 || train[0] == 0 || train[1] == 0)
            throw std::runtime_error("degenerate fold: a split contains a single class");
    }
    return assignment;
}

namespace {

struct Split {
    std::vector<int> train, test;
};

// Stratified holdout; `fraction` of each class goes to train.
Split stratified_holdout(const std::vector<Label>& labels, const std::vector<int>& pool,
                         double fraction, std::uint64_t seed) {
    std::array<std::vector<int>, 2> by_class;
    for (int i : pool) by_class[labels[static_cast<size_t>(i)]].push_back(i);
    std::mt19937_64 rng(seed);
    Split split;
    for (auto& idx : by_class) {
        std::shuffle(idx.begin(), idx.end(), rng);
        size_t n_train = static_cast<size_t>(std::floor(static_cast<double>(idx.size()) * fraction));
        if (n_train == idx.size() && n_train > 0) --n_train;
        if (n_train == 0 && idx.size() > 1) n_train = 1;
        for (size_t i = 0; i < idx.size(); ++i)
            (i < n_train ? split.train : split.test).push_back(idx[i]);
    }
    std::sort(split.train.begin(), split.train.end());
    std::sort(split.test.begin(), split.test.end());
    return split;
}

struct Subset {
    std::vector<std::vector<double>> rows;
    std::vector<Label> labels;
};

Subset take(const Dataset& ds, const std::vector<int>& idx) {
    Subset s;
    s.rows.reserve(idx.size());
    s.labels.reserve(idx.size());
    for (int i : idx) {
        s.rows.push_back(ds.rows[static_cast<size_t>(i)]);
        s.labels.push_back(ds.labels[static_cast<size_t>(i)]);
    }
    return s;
}

// One fitted predictor of any kind.
struct Fitted {
    std::optional<Model> model;  // AA-CBR kinds
    std::optional<Tree> tree;    // dtree kind

    Label predict_row(const std::vector<double>& row) const {
        if (tree) return tree_predict(*tree, row);
        return predict(*model, row).outcome;
    }
};

Fitted fit_kind(ModelKind kind, const Dataset& ds, const Subset& train, Strategy strategy,
                const TreeParams& params, std::uint64_t seed) {
    Fitted f;
    FitOptions options;
    options.params = params;
    options.strategy = strategy;
    options.seed = seed;
    switch (kind) {
        case ModelKind::Dtree: {
            std::array<std::int64_t, 2> counts{0, 0};
            for (Label l : train.labels) ++counts[l];
            f.tree = grow(train.rows, train.labels, params,
                          counts[0] >= counts[1] ? Label{0} : Label{1});
            break;
        }
        case ModelKind::Regular:
            f.model = fit_regular(train.rows, train.labels, ds.feature_names, ds.label_names, options);
            break;
        case ModelKind::Cumulative:
            f.model =
                fit_cumulative(train.rows, train.labels, ds.feature_names, ds.label_names, options);
            break;
    }
    return f;
}

double eval_accuracy(const Fitted& f, const Subset& test) {
    std::vector<Label> pred;
    pred.reserve(test.rows.size());
    for (const auto& row : test.rows) pred.push_back(f.predict_row(row));
    return accuracy(pred, test.labels);
}

struct GridChoice {
    TreeParams params;
    double inner_accuracy = 0.0;
};

GridChoice grid_search(ModelKind kind, const Dataset& ds, const std::vector<Label>& all_labels,
                       const std::vector<int>& pool, Strategy strategy, std::uint64_t seed) {
    const Split inner = stratified_holdout(all_labels, pool, 0.8, seed);
    const Subset train = take(ds, inner.train), val = take(ds, inner.test);
    const Grid grid;
    GridChoice choice;
    bool first = true;
    for (int depth : grid.max_depths) {
        for (int leaves : grid.max_leaf_nodes) {
            const TreeParams params{depth, leaves};
            const Fitted f = fit_kind(kind, ds, train, strategy, params, seed);
            const double acc = eval_accuracy(f, val);
            // ascending scan: ties keep the smaller depth, then fewer leaves
            if (first || acc > choice.inner_accuracy) {
                choice = GridChoice{params, acc};
                first = false;
            }
        }
    }
    return choice;
}

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double stddev_of(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = mean_of(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

SweepAggregate aggregate(const std::vector<double>& v) {
    SweepAggregate a;
    a.min = *std::min_element(v.begin(), v.end());
    a.max = *std::max_element(v.begin(), v.end());
    a.mean = mean_of(v);
    a.stddev = stddev_of(v);
    return a;
}

ExplanationStats explanation_stats(const Fitted& f, const Subset& test,
                                   const std::vector<std::string>& feature_names) {
    ExplanationStats stats;
    double depth = 0, nodes = 0, unique = 0;
    for (const auto& row : test.rows) {
        if (f.tree) {
            const int len = static_cast<int>(decision_path(*f.tree, row).size());
            depth += len;
            nodes += len;
            unique += len;
            ++stats.explained;
        } else {
            const Prediction p = predict(*f.model, row);
            const auto adt = minimal_adt(p.af_dn, p.grounded, f.model->af_d.default_arg());
            if (!adt) {
                ++stats.unavailable;
                continue;
            }
            const AdtMetrics m = adt_metrics(*adt);
            depth += m.depth;
            nodes += m.nodes;
            unique += m.unique_arguments;
            ++stats.explained;
        }
    }
    if (stats.explained > 0) {
        stats.depth = depth / stats.explained;
        stats.nodes = nodes / stats.explained;
        stats.unique_arguments = unique / stats.explained;
    }
    (void)feature_names;
    return stats;
}

}  // namespace

CvReport run_cv(const Dataset& ds, ModelKind kind, Strategy strategy, int folds,
                std::uint64_t seed) {
    CvReport report;
    report.model = kind;
    report.strategy = strategy;
    report.folds = folds;
    report.seed = seed;

    const std::vector<int> assignment = stratified_folds(ds.labels, folds, derive_seed(seed, 100));
    std::vector<double> accs, sizes, depths, nodes, uniques;

    for (int f = 0; f < folds; ++f) {
        std::vector<int> train_idx, test_idx;
        for (size_t i = 0; i < assignment.size(); ++i)
            (assignment[i] == f ? test_idx : train_idx).push_back(static_cast<int>(i));

        const GridChoice choice =
            grid_search(kind, ds, ds.labels, train_idx, strategy, derive_seed(seed, 200 + static_cast<std::uint64_t>(f)));

        const Subset train = take(ds, train_idx), test = take(ds, test_idx);
        const Fitted fitted = fit_kind(kind, ds, train, strategy, choice.params, seed);

        FoldResult fr;
        fr.fold = f;
        fr.chosen = choice.params;
        fr.inner_accuracy = choice.inner_accuracy;
        fr.test_accuracy = eval_accuracy(fitted, test);
        if (fitted.tree)
            fr.size = static_cast<double>(tree_node_count(*fitted.tree).total_nodes);
        else
            fr.size = static_cast<double>(model_size(*fitted.model));
        fr.expl = explanation_stats(fitted, test, ds.feature_names);

        // Diagnostic: fraction of test rows where the regular and cumulative
        // variants coincide under the same tree params.
        if (kind != ModelKind::Dtree) {
            const ModelKind other =
                kind == ModelKind::Regular ? ModelKind::Cumulative : ModelKind::Regular;
            const Fitted counterpart = fit_kind(other, ds, train, strategy, choice.params, seed);
            std::int64_t agree = 0;
            for (const auto& row : test.rows)
                if (fitted.predict_row(row) == counterpart.predict_row(row)) ++agree;
            fr.agreement = static_cast<double>(agree) / static_cast<double>(test.rows.size());
        }

        accs.push_back(fr.test_accuracy);
        sizes.push_back(fr.size);
        depths.push_back(fr.expl.depth);
        nodes.push_back(fr.expl.nodes);
        uniques.push_back(fr.expl.unique_arguments);
        report.fold_results.push_back(std::move(fr));
    }

    report.mean_accuracy = mean_of(accs);
    report.std_accuracy = stddev_of(accs);
    report.mean_size = mean_of(sizes);
    report.std_size = stddev_of(sizes);
    report.mean_expl.depth = mean_of(depths);
    report.mean_expl.nodes = mean_of(nodes);
    report.mean_expl.unique_arguments = mean_of(uniques);
    for (const FoldResult& fr : report.fold_results) {
        report.mean_expl.explained += fr.expl.explained;
        report.mean_expl.unavailable += fr.expl.unavailable;
    }
    return report;
}

SweepReport strategy_sweep(const Dataset& ds, ModelKind kind, std::uint64_t seed) {
    SweepReport report;
    report.model = kind;
    report.seed = seed;

    std::vector<int> pool(ds.rows.size());
    std::iota(pool.begin(), pool.end(), 0);
    const Split split = stratified_holdout(ds.labels, pool, 0.8, derive_seed(seed, 1));
    const Subset train = take(ds, split.train), test = take(ds, split.test);

    const Grid grid;
    for (Strategy strategy : {Strategy::Keep, Strategy::Removal, Strategy::Majority}) {
        std::vector<double> accs;
        for (int depth : grid.max_depths)
            for (int leaves : grid.max_leaf_nodes)
                accs.push_back(eval_accuracy(
                    fit_kind(kind, ds, train, strategy, TreeParams{depth, leaves}, seed), test));
        report.per_strategy.push_back(aggregate(accs));
        report.accuracies.push_back(std::move(accs));
    }

    std::vector<double> d_removal, d_majority;
    for (size_t i = 0; i < report.accuracies[0].size(); ++i) {
        d_removal.push_back(report.accuracies[1][i] - report.accuracies[0][i]);
        d_majority.push_back(report.accuracies[2][i] - report.accuracies[0][i]);
    }
    report.delta_removal_keep = aggregate(d_removal);
    report.delta_majority_keep = aggregate(d_majority);
    return report;
}

namespace {

std::string fixed(double v, int precision) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(precision);
    os << v;
    return os.str();
}

nlohmann::ordered_json expl_to_json(const ExplanationStats& e) {
    return {{"depth", e.depth},
            {"nodes", e.nodes},
            {"unique", e.unique_arguments},
            {"explained", e.explained},
            {"unavailable", e.unavailable}};
}

nlohmann::ordered_json agg_to_json(const SweepAggregate& a) {
    return {{"min", a.min}, {"max", a.max}, {"mean", a.mean}, {"stddev", a.stddev}};
}

}  // namespace

std::string CvReport::to_json() const {
    nlohmann::ordered_json doc;
    doc["report"] = "cv";
    doc["model"] = model_kind_name(model);
    doc["strategy"] = strategy_name(strategy);
    doc["folds"] = folds;
    doc["seed"] = seed;
    doc["inner_split"] = "stratified 80/20";
    doc["fold_results"] = nlohmann::ordered_json::array();
    for (const FoldResult& fr : fold_results) {
        nlohmann::ordered_json jf;
        jf["fold"] = fr.fold;
        jf["accuracy"] = fr.test_accuracy;
        jf["chosen"] = {{"max_depth", fr.chosen.max_depth},
                        {"max_leaf_nodes", fr.chosen.max_leaf_nodes}};
        jf["inner_accuracy"] = fr.inner_accuracy;
        jf["size"] = fr.size;
        jf["explanation"] = expl_to_json(fr.expl);
        if (fr.agreement >= 0.0) jf["variant_agreement"] = fr.agreement;
        doc["fold_results"].push_back(std::move(jf));
    }
    doc["accuracy"] = {{"mean", mean_accuracy}, {"stddev", std_accuracy}};
    doc["size"] = {{"mean", mean_size}, {"stddev", std_size}};
    doc["explanation"] = {{"depth", mean_expl.depth},
                          {"nodes", mean_expl.nodes},
                          {"unique", mean_expl.unique_arguments},
                          {"explained", mean_expl.explained},
                          {"unavailable", mean_expl.unavailable}};
    return doc.dump(2);
}

std::string CvReport::to_text() const {
    std::ostringstream os;
    os << "model: " << model_kind_name(model) << "  strategy: " << strategy_name(strategy)
       << "  folds: " << folds << "  seed: " << seed << "\n\n";
    os << "fold  accuracy  depth  leaves  size    expl.depth  expl.nodes  expl.unique\n";
    for (const FoldResult& fr : fold_results) {
        os << fr.fold << "     " << fixed(fr.test_accuracy, 2) << "     " << fr.chosen.max_depth
           << "      " << fr.chosen.max_leaf_nodes << "      " << fixed(fr.size, 1) << "    "
           << fixed(fr.expl.depth, 1) << "         " << fixed(fr.expl.nodes, 1) << "        "
           << fixed(fr.expl.unique_arguments, 1) << "\n";
    }
    os << "\naccuracy: " << fixed(mean_accuracy, 2) << " +- " << fixed(std_accuracy, 2) << "\n";
    os << "size:     " << fixed(mean_size, 1) << " +- " << fixed(std_size, 1) << "\n";
    os << "explanation (mean over folds): depth " << fixed(mean_expl.depth, 1) << ", nodes "
       << fixed(mean_expl.nodes, 1) << ", unique " << fixed(mean_expl.unique_arguments, 1) << "\n";
    return os.str();
}

std::string SweepReport::to_json() const {
    nlohmann::ordered_json doc;
    doc["report"] = "strategy_sweep";
    doc["model"] = model_kind_name(model);
    doc["seed"] = seed;
    const char* names[3] = {"keep", "removal", "majority"};
    for (int s = 0; s < 3; ++s) {
        doc["strategies"][names[s]] = agg_to_json(per_strategy[static_cast<size_t>(s)]);
        doc["accuracies"][names[s]] = accuracies[static_cast<size_t>(s)];
    }
    doc["delta"]["removal-keep"] = agg_to_json(delta_removal_keep);
    doc["delta"]["majority-keep"] = agg_to_json(delta_majority_keep);
    return doc.dump(2);
}

std::string SweepReport::to_text() const {
    std::ostringstream os;
    const char* names[3] = {"keep", "removal", "majority"};
    os << "model: " << model_kind_name(model) << "  seed: " << seed << "\n\n";
    os << "            keep      removal   majority\n";
    os << "min         ";
    for (int s = 0; s < 3; ++s) os << fixed(per_strategy[static_cast<size_t>(s)].min, 1) << "      ";
    os << "\nmax         ";
    for (int s = 0; s < 3; ++s) os << fixed(per_strategy[static_cast<size_t>(s)].max, 1) << "      ";
    os << "\navg+-std    ";
    for (int s = 0; s < 3; ++s)
        os << fixed(per_strategy[static_cast<size_t>(s)].mean, 1) << "+-"
           << fixed(per_strategy[static_cast<size_t>(s)].stddev, 1) << "  ";
    os << "\n\nper-point deltas:        removal-keep   majority-keep\n";
    os << "min                      " << fixed(delta_removal_keep.min, 1) << "           "
       << fixed(delta_majority_keep.min, 1) << "\n";
    os << "max                      " << fixed(delta_removal_keep.max, 1) << "           "
       << fixed(delta_majority_keep.max, 1) << "\n";
    os << "mean+-std                " << fixed(delta_removal_keep.mean, 1) << "+-"
       << fixed(delta_removal_keep.stddev, 1) << "       " << fixed(delta_majority_keep.mean, 1)
       << "+-" << fixed(delta_majority_keep.stddev, 1) << "\n";
    (void)names;
    return os.str();
}

}  // namespace aacbr
