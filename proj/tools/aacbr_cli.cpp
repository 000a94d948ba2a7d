// Command-line front end for the AA-CBR engine. Talks to the shared library
// exclusively through the C API in aacbr.h.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "aacbr.h"

namespace {

int fail(aacbr_status status) {
    std::cerr << "error: " << aacbr_last_error() << "\n";
    return status == AACBR_ERR_ARGUMENT ? 2 : 1;
}

bool write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open file for writing: " << path << "\n";
        return false;
    }
    f << text;
    return true;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("AACBR_SEED")) return std::strtoull(env, nullptr, 10);
    return 0;
}

struct DatasetArgs {
    std::string data;
    std::string kind = "csv";
    std::string label_col;
    std::string feature_set;

    void attach(CLI::App* cmd) {
        cmd->add_option("--data", data, "input CSV file")->required();
        cmd->add_option("--kind", kind, "dataset kind: csv|compas|welfare")
            ->check(CLI::IsMember({"csv", "compas", "welfare"}));
        cmd->add_option("--label-col", label_col, "label column name");
        cmd->add_option("--feature-set", feature_set, "COMPAS feature set A|B|C|D")
            ->check(CLI::IsMember({"A", "B", "C", "D"}));
    }

    aacbr_status load(aacbr_dataset** out, bool quiet) const {
        aacbr_status status = aacbr_dataset_load(data.c_str(), kind.c_str(),
                                                 label_col.empty() ? nullptr : label_col.c_str(), out);
        if (status != AACBR_OK) return status;
        if (!feature_set.empty()) {
            aacbr_dataset* reduced = nullptr;
            status = aacbr_dataset_feature_set(*out, feature_set.c_str(), &reduced);
            aacbr_dataset_free(*out);
            *out = reduced;
            if (status != AACBR_OK) return status;
        }
        if (!quiet) {
            char* warnings = nullptr;
            if (aacbr_dataset_warnings(*out, &warnings) == AACBR_OK) {
                if (*warnings) std::cerr << warnings;
                aacbr_string_free(warnings);
            }
        }
        return AACBR_OK;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"AA-CBR with decision-tree-learnt case relevance"};
    app.require_subcommand(1);
    bool quiet = false, verbose = false;
    app.add_flag("--quiet", quiet, "suppress warnings");
    app.add_flag("--verbose", verbose, "chatty progress output");

    // train
    auto* train = app.add_subcommand("train", "fit a model and write a model file");
    DatasetArgs train_data;
    train_data.attach(train);
    std::string variant = "regular", strategy = "majority", default_outcome = "auto";
    int max_depth = 3, max_leaves = 8;
    std::uint64_t seed = default_seed();
    std::string out_path = "model.json";
    train->add_option("--variant", variant)->check(CLI::IsMember({"regular", "cumulative"}));
    train->add_option("--strategy", strategy)->check(CLI::IsMember({"keep", "removal", "majority"}));
    train->add_option("--max-depth", max_depth, "tree depth cap")->check(CLI::PositiveNumber);
    train->add_option("--max-leaves", max_leaves, "tree leaf cap")->check(CLI::PositiveNumber);
    train->add_option("--default-outcome", default_outcome, "auto or a label value");
    train->add_option("--seed", seed);
    train->add_option("--out", out_path, "model file path");

    // predict
    auto* predict = app.add_subcommand("predict", "per-row outcomes for a CSV");
    DatasetArgs predict_data;
    std::string model_path, predict_out;
    predict->add_option("--model", model_path, "model file")->required();
    predict_data.attach(predict);
    predict->add_option("--out", predict_out, "output CSV (default stdout)");

    // explain
    auto* explain = app.add_subcommand("explain", "minimal dispute tree or decision path");
    DatasetArgs explain_data;
    std::string explain_model, explain_format = "text";
    std::size_t explain_row = 0;
    bool with_metrics = false;
    explain->add_option("--model", explain_model, "model file")->required();
    explain_data.attach(explain);
    explain->add_option("--row", explain_row, "row index to explain");
    explain->add_option("--format", explain_format)->check(CLI::IsMember({"dot", "text"}));
    explain->add_flag("--metrics", with_metrics, "print depth,nodes,unique");

    // experiment
    auto* experiment = app.add_subcommand("experiment", "cross-validation or strategy sweep");
    DatasetArgs exp_data;
    exp_data.attach(experiment);
    std::string mode = "cv", exp_model = "regular", exp_strategy = "majority";
    int folds = 5;
    std::uint64_t exp_seed = default_seed();
    std::string out_json, out_text;
    experiment->add_option("--mode", mode)->check(CLI::IsMember({"cv", "sweep"}));
    experiment->add_option("--model", exp_model)
        ->check(CLI::IsMember({"dtree", "regular", "cumulative"}));
    experiment->add_option("--strategy", exp_strategy)
        ->check(CLI::IsMember({"keep", "removal", "majority"}));
    experiment->add_option("--folds", folds)->check(CLI::PositiveNumber);
    experiment->add_option("--seed", exp_seed);
    experiment->add_option("--out-json", out_json, "report JSON path");
    experiment->add_option("--out-text", out_text, "report table path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;  // usage errors
    }

    if (train->parsed()) {
        aacbr_dataset* ds = nullptr;
        aacbr_status status = train_data.load(&ds, quiet);
        if (status != AACBR_OK) return fail(status);
        aacbr_train_options options{variant.c_str(),        strategy.c_str(), max_depth,
                                    max_leaves,             default_outcome.c_str(), seed};
        aacbr_model* model = nullptr;
        status = aacbr_train(ds, &options, &model);
        aacbr_dataset_free(ds);
        if (status != AACBR_OK) return fail(status);
        status = aacbr_model_save(model, out_path.c_str());
        if (verbose && status == AACBR_OK)
            std::cerr << "arguments after spike removal: " << aacbr_model_num_arguments(model)
                      << "\n";
        aacbr_model_free(model);
        if (status != AACBR_OK) return fail(status);
        return 0;
    }

    if (predict->parsed()) {
        aacbr_model* model = nullptr;
        aacbr_status status = aacbr_model_load(model_path.c_str(), &model);
        if (status != AACBR_OK) return fail(status);
        aacbr_dataset* ds = nullptr;
        status = predict_data.load(&ds, quiet);
        if (status != AACBR_OK) {
            aacbr_model_free(model);
            return fail(status);
        }
        char* csv = nullptr;
        status = aacbr_predict_csv(model, ds, &csv);
        aacbr_dataset_free(ds);
        aacbr_model_free(model);
        if (status != AACBR_OK) return fail(status);
        const bool ok = predict_out.empty() ? (std::cout << csv, true) : write_file(predict_out, csv);
        aacbr_string_free(csv);
        return ok ? 0 : 1;
    }

    if (explain->parsed()) {
        aacbr_model* model = nullptr;
        aacbr_status status = aacbr_model_load(explain_model.c_str(), &model);
        if (status != AACBR_OK) return fail(status);
        aacbr_dataset* ds = nullptr;
        status = explain_data.load(&ds, quiet);
        if (status != AACBR_OK) {
            aacbr_model_free(model);
            return fail(status);
        }
        char* text = nullptr;
        status = aacbr_explain(model, ds, explain_row, explain_format.c_str(),
                               with_metrics ? 1 : 0, &text);
        aacbr_dataset_free(ds);
        aacbr_model_free(model);
        if (status != AACBR_OK) return fail(status);
        std::cout << text;
        aacbr_string_free(text);
        return 0;
    }

    // experiment
    nlohmann::ordered_json config;
    config["data"] = exp_data.data;
    config["kind"] = exp_data.kind;
    if (!exp_data.label_col.empty()) config["label_col"] = exp_data.label_col;
    if (!exp_data.feature_set.empty()) config["feature_set"] = exp_data.feature_set;
    config["mode"] = mode;
    config["model"] = exp_model;
    config["strategy"] = exp_strategy;
    config["folds"] = folds;
    config["seed"] = exp_seed;

    char* report_json = nullptr;
    char* report_text = nullptr;
    const aacbr_status status =
        aacbr_experiment(config.dump().c_str(), &report_json, &report_text);
    if (status != AACBR_OK) return fail(status);
    bool ok = true;
    if (!out_json.empty()) ok = write_file(out_json, report_json) && ok;
    if (!out_text.empty()) ok = write_file(out_text, report_text) && ok;
    else std::cout << report_text;
    aacbr_string_free(report_json);
    aacbr_string_free(report_text);
    return ok ? 0 : 1;
}
