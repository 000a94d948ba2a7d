/* C API for the AA-CBR case-relevance learning engine.
 *
 * All functions return a status code; on failure a thread-local message is
 * available through aacbr_last_error(). Objects returned through out
 * parameters are owned by the caller and released with the matching _free
 * function. Strings returned through char** out parameters are released with
 * aacbr_string_free().
 */
#ifndef AACBR_H
#define AACBR_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define AACBR_API __declspec(dllexport)
#elif defined(__GNUC__)
#  define AACBR_API __attribute__((visibility("default")))
#else
#  define AACBR_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct aacbr_dataset aacbr_dataset;
typedef struct aacbr_model aacbr_model;

typedef enum {
    AACBR_OK = 0,
    AACBR_ERR_IO = 1,       /* file missing or unreadable */
    AACBR_ERR_SCHEMA = 2,   /* data fails validation */
    AACBR_ERR_ARGUMENT = 3, /* bad flag or parameter value */
    AACBR_ERR_STATE = 4     /* internal inconsistency */
} aacbr_status;

/* Thread-local message for the most recent failure; empty string otherwise. */
AACBR_API const char* aacbr_last_error(void);

AACBR_API void aacbr_string_free(char* s);

/* --- datasets ------------------------------------------------------------ */

/* kind: "csv" (generic, one-hot for non-numeric columns), "compas"
 * (ProPublica two-year file with the original filters), or "welfare".
 * label_col may be NULL: compas/welfare use their canonical label column,
 * csv uses the last column. */
AACBR_API aacbr_status aacbr_dataset_load(const char* path, const char* kind,
                                          const char* label_col, aacbr_dataset** out);

/* COMPAS feature sets "A".."D"; returns a reduced copy. */
AACBR_API aacbr_status aacbr_dataset_feature_set(const aacbr_dataset* ds, const char* set_id,
                                                 aacbr_dataset** out);

AACBR_API size_t aacbr_dataset_num_rows(const aacbr_dataset* ds);
AACBR_API size_t aacbr_dataset_num_features(const aacbr_dataset* ds);

/* Newline-separated ingestion warnings (possibly empty). */
AACBR_API aacbr_status aacbr_dataset_warnings(const aacbr_dataset* ds, char** out);

AACBR_API void aacbr_dataset_free(aacbr_dataset* ds);

/* --- training and models ------------------------------------------------- */

typedef struct {
    const char* variant;         /* "regular" | "cumulative" */
    const char* strategy;        /* "keep" | "removal" | "majority" */
    int max_depth;
    int max_leaf_nodes;
    const char* default_outcome; /* "auto" or a label value */
    uint64_t seed;
} aacbr_train_options;

AACBR_API aacbr_status aacbr_train(const aacbr_dataset* ds, const aacbr_train_options* options,
                                   aacbr_model** out);

AACBR_API aacbr_status aacbr_model_save(const aacbr_model* model, const char* path);
AACBR_API aacbr_status aacbr_model_load(const char* path, aacbr_model** out);

/* Argument count of the spike-removed mined framework (default included). */
AACBR_API int aacbr_model_num_arguments(const aacbr_model* model);

/* DOT rendering of the mined framework AF(D). */
AACBR_API aacbr_status aacbr_model_af_dot(const aacbr_model* model, char** out);

AACBR_API void aacbr_model_free(aacbr_model* model);

/* --- prediction and explanation ------------------------------------------ */

/* CSV document "row,outcome" for every dataset row. The dataset must carry
 * the model's feature columns; a label column is not required. */
AACBR_API aacbr_status aacbr_predict_csv(const aacbr_model* model, const aacbr_dataset* ds,
                                         char** out);

/* Minimal arbitrated dispute tree for one row. format: "dot" | "text".
 * with_metrics appends a "depth,nodes,unique" line. Fails with
 * AACBR_ERR_STATE when no valid dispute tree exists. */
AACBR_API aacbr_status aacbr_explain(const aacbr_model* model, const aacbr_dataset* ds,
                                     size_t row, const char* format, int with_metrics, char** out);

/* --- experiments --------------------------------------------------------- */

/* config is a JSON object:
 *   {"data": path, "kind": "csv"|"compas"|"welfare", "label_col": optional,
 *    "feature_set": optional "A".."D", "mode": "cv"|"sweep",
 *    "model": "dtree"|"regular"|"cumulative", "strategy": "...",
 *    "folds": int, "seed": int}
 * Produces the JSON report and an aligned plain-text table. */
AACBR_API aacbr_status aacbr_experiment(const char* config_json, char** report_json,
                                        char** report_text);

#ifdef __cplusplus
}
#endif

#endif /* AACBR_H */
