#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <string>

#include <aacbr.h>

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& content = "")
        : path("test_capi_" + name) {
        if (!content.empty()) {
            std::ofstream out(path, std::ios::binary);
            out << content;
        }
    }
    ~TempFile() { std::remove(path.c_str()); }
};

const char* kTrainCsv =
    "age,prior_count,recid\n"
    "20,2,yes\n"
    "30,1,no\n"
    "35,7,yes\n"
    "19,1,no\n"
    "19,10,yes\n"
    "40,8,yes\n"
    "22,0,no\n";

aacbr_train_options default_options() {
    aacbr_train_options opt{};
    opt.variant = "regular";
    opt.strategy = "majority";
    opt.max_depth = 3;
    opt.max_leaf_nodes = 4;
    opt.default_outcome = "auto";
    opt.seed = 1;
    return opt;
}

}  // namespace

TEST_CASE("dataset load, inspect, free") {
    TempFile f("data.csv", kTrainCsv);
    aacbr_dataset* ds = nullptr;
    REQUIRE(aacbr_dataset_load(f.path.c_str(), "csv", "recid", &ds) == AACBR_OK);
    REQUIRE(ds);
    CHECK(aacbr_dataset_num_rows(ds) == 7);
    CHECK(aacbr_dataset_num_features(ds) == 2);
    char* warnings = nullptr;
    REQUIRE(aacbr_dataset_warnings(ds, &warnings) == AACBR_OK);
    CHECK(std::string(warnings).empty());
    aacbr_string_free(warnings);
    aacbr_dataset_free(ds);
}

TEST_CASE("dataset error paths set statuses and messages") {
    aacbr_dataset* ds = nullptr;
    CHECK(aacbr_dataset_load("missing_file.csv", "csv", nullptr, &ds) == AACBR_ERR_IO);
    CHECK(std::string(aacbr_last_error()).find("missing_file.csv") != std::string::npos);

    TempFile f("bad.csv", "a,b\n1,only\n");
    CHECK(aacbr_dataset_load(f.path.c_str(), "csv", nullptr, &ds) == AACBR_ERR_SCHEMA);
    CHECK(aacbr_dataset_load(f.path.c_str(), "parquet", nullptr, &ds) == AACBR_ERR_ARGUMENT);
    CHECK(aacbr_dataset_load(nullptr, "csv", nullptr, &ds) == AACBR_ERR_ARGUMENT);

    // success clears the error message
    TempFile ok("ok.csv", kTrainCsv);
    REQUIRE(aacbr_dataset_load(ok.path.c_str(), "csv", nullptr, &ds) == AACBR_OK);
    CHECK(std::string(aacbr_last_error()).empty());
    aacbr_dataset_free(ds);
}

TEST_CASE("train, predict, explain, save and load") {
    TempFile f("train.csv", kTrainCsv);
    aacbr_dataset* ds = nullptr;
    REQUIRE(aacbr_dataset_load(f.path.c_str(), "csv", "recid", &ds) == AACBR_OK);

    aacbr_train_options opt = default_options();
    aacbr_model* model = nullptr;
    REQUIRE(aacbr_train(ds, &opt, &model) == AACBR_OK);
    REQUIRE(model);
    CHECK(aacbr_model_num_arguments(model) >= 1);

    char* dot = nullptr;
    REQUIRE(aacbr_model_af_dot(model, &dot) == AACBR_OK);
    CHECK(std::string(dot).find("digraph af_d") != std::string::npos);
    aacbr_string_free(dot);

    char* csv = nullptr;
    REQUIRE(aacbr_predict_csv(model, ds, &csv) == AACBR_OK);
    std::string predictions(csv);
    aacbr_string_free(csv);
    CHECK(predictions.rfind("row,outcome\n", 0) == 0);
    CHECK(std::count(predictions.begin(), predictions.end(), '\n') == 8);
    CHECK((predictions.find("yes") != std::string::npos ||
           predictions.find("no") != std::string::npos));

    char* text = nullptr;
    REQUIRE(aacbr_explain(model, ds, 0, "text", 1, &text) == AACBR_OK);
    std::string explanation(text);
    aacbr_string_free(text);
    CHECK(explanation.find("default") != std::string::npos);
    CHECK(explanation.find("depth,nodes,unique\n") != std::string::npos);

    char* dot_expl = nullptr;
    REQUIRE(aacbr_explain(model, ds, 0, "dot", 0, &dot_expl) == AACBR_OK);
    CHECK(std::string(dot_expl).find("digraph adt") != std::string::npos);
    aacbr_string_free(dot_expl);

    CHECK(aacbr_explain(model, ds, 99, "text", 0, &text) == AACBR_ERR_ARGUMENT);
    CHECK(aacbr_explain(model, ds, 0, "png", 0, &text) == AACBR_ERR_ARGUMENT);

    TempFile saved("model.json");
    REQUIRE(aacbr_model_save(model, saved.path.c_str()) == AACBR_OK);
    aacbr_model* loaded = nullptr;
    REQUIRE(aacbr_model_load(saved.path.c_str(), &loaded) == AACBR_OK);
    CHECK(aacbr_model_num_arguments(loaded) == aacbr_model_num_arguments(model));
    char* csv2 = nullptr;
    REQUIRE(aacbr_predict_csv(loaded, ds, &csv2) == AACBR_OK);
    CHECK(predictions == csv2);
    aacbr_string_free(csv2);

    aacbr_model_free(loaded);
    aacbr_model_free(model);
    aacbr_dataset_free(ds);

    aacbr_model* none = nullptr;
    CHECK(aacbr_model_load("missing_model.json", &none) == AACBR_ERR_IO);
}

TEST_CASE("train argument validation") {
    TempFile f("train2.csv", kTrainCsv);
    aacbr_dataset* ds = nullptr;
    REQUIRE(aacbr_dataset_load(f.path.c_str(), "csv", "recid", &ds) == AACBR_OK);

    aacbr_model* model = nullptr;
    aacbr_train_options opt = default_options();
    opt.strategy = "consensus";
    CHECK(aacbr_train(ds, &opt, &model) == AACBR_ERR_ARGUMENT);
    opt = default_options();
    opt.variant = "recursive";
    CHECK(aacbr_train(ds, &opt, &model) == AACBR_ERR_ARGUMENT);
    opt = default_options();
    opt.default_outcome = "maybe";
    CHECK(aacbr_train(ds, &opt, &model) == AACBR_ERR_ARGUMENT);
    opt = default_options();
    opt.max_depth = 0;
    CHECK(aacbr_train(ds, &opt, &model) == AACBR_ERR_ARGUMENT);
    CHECK(aacbr_train(nullptr, &opt, &model) == AACBR_ERR_ARGUMENT);

    // explicit default outcome by label value works
    opt = default_options();
    opt.default_outcome = "no";
    opt.variant = "cumulative";
    REQUIRE(aacbr_train(ds, &opt, &model) == AACBR_OK);
    aacbr_model_free(model);
    aacbr_dataset_free(ds);
}

TEST_CASE("feature sets through the C API") {
    TempFile f("fs.csv",
               "sex,age,age_cat,race,priors_count,label\n"
               "Male,30,25 - 45,Other,1,y\n"
               "Female,20,Less than 25,African-American,0,n\n");
    aacbr_dataset* ds = nullptr;
    REQUIRE(aacbr_dataset_load(f.path.c_str(), "csv", "label", &ds) == AACBR_OK);
    aacbr_dataset* reduced = nullptr;
    REQUIRE(aacbr_dataset_feature_set(ds, "D", &reduced) == AACBR_OK);
    CHECK(aacbr_dataset_num_features(reduced) == 2);
    CHECK(aacbr_dataset_num_rows(reduced) == 2);
    aacbr_dataset* bad = nullptr;
    CHECK(aacbr_dataset_feature_set(ds, "Z", &bad) == AACBR_ERR_SCHEMA);
    aacbr_dataset_free(reduced);
    aacbr_dataset_free(ds);
}

TEST_CASE("experiment entry point produces matching deterministic reports") {
    // larger file so that 3-fold CV is well-posed
    std::string csv = "x,y,label\n";
    for (int i = 0; i < 60; ++i) {
        const int x = i % 4;
        csv += std::to_string(x) + "," + std::to_string(i % 3) + "," +
               (x >= 2 ? "p" : "n") + "\n";
    }
    TempFile f("exp.csv", csv);
    const std::string config = std::string("{\"data\":\"") + f.path +
                               "\",\"kind\":\"csv\",\"mode\":\"cv\",\"model\":\"regular\","
                               "\"strategy\":\"majority\",\"folds\":3,\"seed\":5}";
    char *json1 = nullptr, *text1 = nullptr, *json2 = nullptr, *text2 = nullptr;
    REQUIRE(aacbr_experiment(config.c_str(), &json1, &text1) == AACBR_OK);
    REQUIRE(aacbr_experiment(config.c_str(), &json2, &text2) == AACBR_OK);
    CHECK(std::string(json1) == json2);
    CHECK(std::string(text1) == text2);
    CHECK(std::string(json1).find("\"report\": \"cv\"") != std::string::npos);
    aacbr_string_free(json1);
    aacbr_string_free(text1);
    aacbr_string_free(json2);
    aacbr_string_free(text2);

    char *j = nullptr, *t = nullptr;
    CHECK(aacbr_experiment("{\"mode\":\"cv\"}", &j, &t) != AACBR_OK);   // missing data
    CHECK(aacbr_experiment("not json", &j, &t) != AACBR_OK);
    const std::string bad_mode = std::string("{\"data\":\"") + f.path + "\",\"mode\":\"x\"}";
    CHECK(aacbr_experiment(bad_mode.c_str(), &j, &t) == AACBR_ERR_ARGUMENT);
}
