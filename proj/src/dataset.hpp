#pragma once

#include <array>
#include <string>
#include <vector>

#include "casebase.hpp"

namespace aacbr {

/// In-memory tabular dataset with a binary label. Categorical columns are
/// one-hot encoded at ingestion; `source_names` keeps the originating column
/// of each (possibly expanded) numeric feature.
struct Dataset {
    std::vector<std::string> feature_names;
    std::vector<std::string> source_names;
    std::vector<std::vector<double>> rows;
    std::vector<Label> labels;
    std::array<std::string, 2> label_names{"0", "1"};
    std::vector<std::string> warnings;
};

/// Parsed CSV: header row plus string cells. Handles quoted fields and CRLF.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const std::string& path);
CsvTable parse_csv(const std::string& text);

/// Generic ingestion: numeric columns pass through, non-numeric columns are
/// one-hot encoded over their sorted distinct values. The label column must
/// hold exactly two distinct values. Empty label_col means the last column.
Dataset load_csv(const std::string& path, const std::string& label_col = "");
Dataset dataset_from_table(const CsvTable& table, const std::string& label_col);

/// ProPublica two-year recidivism file with the original filtering strategy:
/// screening-to-arrest window within +-30 days, recidivism flag recorded,
/// charge degree not "O", valid score text. Warns (not fatal) if the filtered
/// row count is not 6172.
Dataset ingest_compas(const std::string& path);

/// COMPAS feature sets: A = all, B drops age_cat, C also drops race,
/// D also drops sex. Dropping removes the one-hot expansions too.
Dataset select_feature_set(const Dataset& ds, char set_id);

/// Welfare benefit file (WelfareFailMany). Warns if the row count is not 2000
/// or the classes are unbalanced.
Dataset ingest_welfare(const std::string& path, const std::string& label_col = "");

}  // namespace aacbr
