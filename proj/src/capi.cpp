#include "aacbr.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "dataset.hpp"
#include "engine.hpp"
#include "experiments.hpp"
#include "explain.hpp"

using namespace aacbr;

struct aacbr_dataset {
    Dataset ds;
};

struct aacbr_model {
    Model model;
};

namespace {

thread_local std::string g_last_error;

template <typename Fn>
aacbr_status guarded(Fn&& fn) {
    try {
        g_last_error.clear();
        return fn();
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return AACBR_ERR_ARGUMENT;
    } catch (const std::logic_error& e) {
        g_last_error = e.what();
        return AACBR_ERR_STATE;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return std::string(e.what()).find("cannot open") != std::string::npos ? AACBR_ERR_IO
                                                                              : AACBR_ERR_SCHEMA;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

// Projects a dataset row onto the model's feature columns, by name.
std::vector<double> project_row(const Model& model, const Dataset& ds, size_t row) {
    std::vector<double> out;
    out.reserve(model.feature_names.size());
    for (const std::string& name : model.feature_names) {
        const auto it = std::find(ds.feature_names.begin(), ds.feature_names.end(), name);
        if (it == ds.feature_names.end())
            throw std::runtime_error("dataset is missing model feature column: " + name);
        out.push_back(ds.rows[row][static_cast<size_t>(it - ds.feature_names.begin())]);
    }
    return out;
}

}  // namespace

extern "C" {

const char* aacbr_last_error(void) { return g_last_error.c_str(); }

void aacbr_string_free(char* s) { std::free(s); }

aacbr_status aacbr_dataset_load(const char* path, const char* kind, const char* label_col,
                                aacbr_dataset** out) {
    return guarded([&]() {
        if (!path || !out) throw std::invalid_argument("null argument");
        const std::string k = kind ? kind : "csv";
        const std::string label = label_col ? label_col : "";
        Dataset ds;
        if (k == "csv") ds = load_csv(path, label);
        else if (k == "compas") ds = ingest_compas(path);
        else if (k == "welfare") ds = ingest_welfare(path, label);
        else throw std::invalid_argument("unknown dataset kind: " + k);
        *out = new aacbr_dataset{std::move(ds)};
        return AACBR_OK;
    });
}

aacbr_status aacbr_dataset_feature_set(const aacbr_dataset* ds, const char* set_id,
                                       aacbr_dataset** out) {
    return guarded([&]() {
        if (!ds || !set_id || !*set_id || !out) throw std::invalid_argument("null argument");
        *out = new aacbr_dataset{select_feature_set(ds->ds, set_id[0])};
        return AACBR_OK;
    });
}

size_t aacbr_dataset_num_rows(const aacbr_dataset* ds) { return ds ? ds->ds.rows.size() : 0; }

size_t aacbr_dataset_num_features(const aacbr_dataset* ds) {
    return ds ? ds->ds.feature_names.size() : 0;
}

aacbr_status aacbr_dataset_warnings(const aacbr_dataset* ds, char** out) {
    return guarded([&]() {
        if (!ds || !out) throw std::invalid_argument("null argument");
        std::string text;
        for (const std::string& w : ds->ds.warnings) {
            text += w;
            text += '\n';
        }
        *out = dup_string(text);
        return AACBR_OK;
    });
}

void aacbr_dataset_free(aacbr_dataset* ds) { delete ds; }

aacbr_status aacbr_train(const aacbr_dataset* ds, const aacbr_train_options* options,
                         aacbr_model** out) {
    return guarded([&]() {
        if (!ds || !options || !out) throw std::invalid_argument("null argument");
        FitOptions fit;
        fit.params.max_depth = options->max_depth;
        fit.params.max_leaf_nodes = options->max_leaf_nodes;
        fit.strategy = strategy_from_name(options->strategy ? options->strategy : "majority");
        fit.seed = options->seed;
        const std::string def = options->default_outcome ? options->default_outcome : "auto";
        if (def != "auto") {
            if (def == ds->ds.label_names[0]) fit.default_label = 0;
            else if (def == ds->ds.label_names[1]) fit.default_label = 1;
            else throw std::invalid_argument("unknown outcome label: " + def);
        }
        const Variant variant = variant_from_name(options->variant ? options->variant : "regular");
        Model model = variant == Variant::Regular
                          ? fit_regular(ds->ds.rows, ds->ds.labels, ds->ds.feature_names,
                                        ds->ds.label_names, fit)
                          : fit_cumulative(ds->ds.rows, ds->ds.labels, ds->ds.feature_names,
                                           ds->ds.label_names, fit);
        *out = new aacbr_model{std::move(model)};
        return AACBR_OK;
    });
}

aacbr_status aacbr_model_save(const aacbr_model* model, const char* path) {
    return guarded([&]() {
        if (!model || !path) throw std::invalid_argument("null argument");
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error(std::string("cannot open file for writing: ") + path);
        f << model_to_json(model->model);
        return AACBR_OK;
    });
}

aacbr_status aacbr_model_load(const char* path, aacbr_model** out) {
    return guarded([&]() {
        if (!path || !out) throw std::invalid_argument("null argument");
        std::ifstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error(std::string("cannot open file: ") + path);
        std::ostringstream buf;
        buf << f.rdbuf();
        *out = new aacbr_model{model_from_json(buf.str())};
        return AACBR_OK;
    });
}

int aacbr_model_num_arguments(const aacbr_model* model) {
    return model ? model_size(model->model) : 0;
}

aacbr_status aacbr_model_af_dot(const aacbr_model* model, char** out) {
    return guarded([&]() {
        if (!model || !out) throw std::invalid_argument("null argument");
        *out = dup_string(
            af::to_dot(model->model.af_d.framework, argument_labels(model->model), "af_d"));
        return AACBR_OK;
    });
}

void aacbr_model_free(aacbr_model* model) { delete model; }

aacbr_status aacbr_predict_csv(const aacbr_model* model, const aacbr_dataset* ds, char** out) {
    return guarded([&]() {
        if (!model || !ds || !out) throw std::invalid_argument("null argument");
        std::ostringstream os;
        os << "row,outcome\n";
        for (size_t i = 0; i < ds->ds.rows.size(); ++i) {
            const Prediction p = predict(model->model, project_row(model->model, ds->ds, i));
            os << i << "," << model->model.casebase.label_names[p.outcome] << "\n";
        }
        *out = dup_string(os.str());
        return AACBR_OK;
    });
}

aacbr_status aacbr_explain(const aacbr_model* model, const aacbr_dataset* ds, size_t row,
                           const char* format, int with_metrics, char** out) {
    return guarded([&]() {
        if (!model || !ds || !out) throw std::invalid_argument("null argument");
        if (row >= ds->ds.rows.size()) throw std::invalid_argument("row index out of range");
        const std::string fmt = format ? format : "text";
        if (fmt != "dot" && fmt != "text") throw std::invalid_argument("format must be dot or text");

        const Model& m = model->model;
        const std::vector<double> projected = project_row(m, ds->ds, row);
        const Prediction p = predict(m, projected);
        const auto adt = minimal_adt(p.af_dn, p.grounded, m.af_d.default_arg());
        if (!adt)
            throw std::logic_error(
                "no dispute tree: the grounded semantics leaves the default argument undecided");

        std::vector<std::string> labels = argument_labels(m);
        labels.push_back(argument_label(m.casebase, p.chars, "?"));
        std::string text = fmt == "dot" ? adt_to_dot(*adt, labels) : adt_to_text(*adt, labels);
        if (with_metrics) {
            const AdtMetrics metrics = adt_metrics(*adt);
            text += "depth,nodes,unique\n" + std::to_string(metrics.depth) + "," +
                    std::to_string(metrics.nodes) + "," + std::to_string(metrics.unique_arguments) +
                    "\n";
        }
        *out = dup_string(text);
        return AACBR_OK;
    });
}

aacbr_status aacbr_experiment(const char* config_json, char** report_json, char** report_text) {
    return guarded([&]() {
        if (!config_json || !report_json || !report_text)
            throw std::invalid_argument("null argument");
        const nlohmann::json config = nlohmann::json::parse(config_json);

        const std::string kind = config.value("kind", "csv");
        const std::string label = config.value("label_col", "");
        const std::string path = config.at("data").get<std::string>();
        Dataset ds;
        if (kind == "csv") ds = load_csv(path, label);
        else if (kind == "compas") ds = ingest_compas(path);
        else if (kind == "welfare") ds = ingest_welfare(path, label);
        else throw std::invalid_argument("unknown dataset kind: " + kind);
        if (config.contains("feature_set"))
            ds = select_feature_set(ds, config.at("feature_set").get<std::string>().at(0));

        const ModelKind model = model_kind_from_name(config.value("model", "regular"));
        const std::uint64_t seed = config.value("seed", std::uint64_t{0});
        const std::string mode = config.value("mode", "cv");
        if (mode == "cv") {
            const CvReport report =
                run_cv(ds, model, strategy_from_name(config.value("strategy", "majority")),
                       config.value("folds", 5), seed);
            *report_json = dup_string(report.to_json());
            *report_text = dup_string(report.to_text());
        } else if (mode == "sweep") {
            const SweepReport report = strategy_sweep(ds, model, seed);
            *report_json = dup_string(report.to_json());
            *report_text = dup_string(report.to_text());
        } else {
            throw std::invalid_argument("mode must be cv or sweep");
        }
        return AACBR_OK;
    });
}

}  // extern "C"
