#include "dataset.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace aacbr {

CsvTable parse_csv(const std::string& text) {
    CsvTable table;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool any_field = false;

    auto end_field = [&]() {
        record.push_back(field);
        field.clear();
        any_field = false;
    };
    auto end_record = [&]() {
        end_field();
        if (table.header.empty()) table.header = std::move(record);
        else table.rows.push_back(std::move(record));
        record.clear();
    };

    for (size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') { field.push_back('"'); ++i; }
                else in_quotes = false;
            } else {
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"': in_quotes = true; any_field = true; break;
            case ',': end_field(); break;
            case '\r': break;
            case '\n': end_record(); break;
            default: field.push_back(c); any_field = true; break;
        }
    }
    if (!field.empty() || any_field || !record.empty()) end_record();
    return table;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    CsvTable table = parse_csv(buf.str());
    if (table.header.empty()) throw std::runtime_error("empty or headerless CSV: " + path);
    return table;
}

namespace {

bool parse_number(const std::string& s, double* out) {
    if (s.empty()) return false;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) return false;
    *out = v;
    return true;
}

int column_index(const CsvTable& table, const std::string& name) {
    const auto it = std::find(table.header.begin(), table.header.end(), name);
    if (it == table.header.end())
        throw std::runtime_error("missing column: " + name);
    return static_cast<int>(it - table.header.begin());
}

// Days since the civil epoch; Howard Hinnant's algorithm.
long days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = static_cast<unsigned>((153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1);
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long>(doe);
}

// "YYYY-MM-DD[ HH:MM:SS]" to days; false on anything else.
bool parse_date_days(const std::string& s, double* out) {
    int y = 0, m = 0, d = 0, hh = 0, mm = 0, ss = 0;
    const int got = std::sscanf(s.c_str(), "%d-%d-%d %d:%d:%d", &y, &m, &d, &hh, &mm, &ss);
    if (got < 3) return false;
    *out = static_cast<double>(days_from_civil(y, m, d)) +
           (hh * 3600.0 + mm * 60.0 + ss) / 86400.0;
    return true;
}

struct ColumnPlan {
    std::string name;
    int index = -1;
    bool numeric = true;
    std::vector<std::string> categories;  // sorted distinct values when categorical
};

Dataset assemble(const CsvTable& table, const std::vector<ColumnPlan>& plans, int label_index) {
    Dataset ds;
    for (const ColumnPlan& p : plans) {
        if (p.numeric) {
            ds.feature_names.push_back(p.name);
            ds.source_names.push_back(p.name);
        } else {
            for (const std::string& cat : p.categories) {
                ds.feature_names.push_back(p.name + "=" + cat);
                ds.source_names.push_back(p.name);
            }
        }
    }

    std::set<std::string> label_values;
    for (const auto& row : table.rows) label_values.insert(row[static_cast<size_t>(label_index)]);
    if (label_values.size() != 2)
        throw std::runtime_error("label column must hold exactly two distinct values, found " +
                                 std::to_string(label_values.size()));
    ds.label_names[0] = *label_values.begin();
    ds.label_names[1] = *std::next(label_values.begin());

    for (const auto& row : table.rows) {
        std::vector<double> out;
        out.reserve(ds.feature_names.size());
        for (const ColumnPlan& p : plans) {
            const std::string& cell = row[static_cast<size_t>(p.index)];
            if (p.numeric) {
                double v = 0.0;
                parse_number(cell, &v);  // missing numerics fall back to 0
                out.push_back(v);
            } else {
                for (const std::string& cat : p.categories) out.push_back(cell == cat ? 1.0 : 0.0);
            }
        }
        ds.rows.push_back(std::move(out));
        ds.labels.push_back(row[static_cast<size_t>(label_index)] == ds.label_names[1] ? Label{1}
                                                                                       : Label{0});
    }
    return ds;
}

ColumnPlan plan_column(const CsvTable& table, const std::string& name) {
    ColumnPlan p;
    p.name = name;
    p.index = column_index(table, name);
    std::set<std::string> values;
    for (const auto& row : table.rows) {
        const std::string& cell = row[static_cast<size_t>(p.index)];
        double v;
        if (!cell.empty() && !parse_number(cell, &v)) p.numeric = false;
        values.insert(cell);
    }
    if (!p.numeric) p.categories.assign(values.begin(), values.end());
    return p;
}

}  // namespace

Dataset dataset_from_table(const CsvTable& table, const std::string& label_col) {
    if (table.rows.empty()) throw std::runtime_error("CSV has no data rows");
    const int label_index = label_col.empty() ? static_cast<int>(table.header.size()) - 1
                                              : column_index(table, label_col);
    std::vector<ColumnPlan> plans;
    for (size_t i = 0; i < table.header.size(); ++i) {
        if (static_cast<int>(i) == label_index) continue;
        plans.push_back(plan_column(table, table.header[i]));
    }
    return assemble(table, plans, label_index);
}

Dataset load_csv(const std::string& path, const std::string& label_col) {
    return dataset_from_table(read_csv(path), label_col);
}

Dataset ingest_compas(const std::string& path) {
    CsvTable table = read_csv(path);
    const int i_days = column_index(table, "days_b_screening_arrest");
    const int i_recid = column_index(table, "is_recid");
    const int i_degree = column_index(table, "c_charge_degree");
    const int i_score = column_index(table, "score_text");
    const int i_jail_in = column_index(table, "c_jail_in");
    const int i_jail_out = column_index(table, "c_jail_out");
    const int i_label = column_index(table, "two_year_recid");

    // Original ProPublica filtering strategy for missing data.
    std::vector<std::vector<std::string>> kept;
    for (auto& row : table.rows) {
        double days;
        if (!parse_number(row[static_cast<size_t>(i_days)], &days)) continue;
        if (days > 30.0 || days < -30.0) continue;
        if (row[static_cast<size_t>(i_recid)] == "-1") continue;
        if (row[static_cast<size_t>(i_degree)] == "O") continue;
        if (row[static_cast<size_t>(i_score)] == "N/A") continue;
        kept.push_back(std::move(row));
    }
    table.rows = std::move(kept);
    if (table.rows.empty()) throw std::runtime_error("COMPAS ingestion: no rows pass the filters");

    // Length of stay in days from the jail booking interval.
    table.header.push_back("length_of_stay");
    for (auto& row : table.rows) {
        double in_days = 0.0, out_days = 0.0;
        double stay = 0.0;
        if (parse_date_days(row[static_cast<size_t>(i_jail_in)], &in_days) &&
            parse_date_days(row[static_cast<size_t>(i_jail_out)], &out_days))
            stay = out_days - in_days;
        row.push_back(format_double(stay));
    }

    const std::vector<std::string> columns = {
        "sex",        "age",           "age_cat",        "race",
        "juv_fel_count", "juv_misd_count", "juv_other_count", "priors_count",
        "c_charge_degree", "length_of_stay"};
    std::vector<ColumnPlan> plans;
    for (const std::string& c : columns) plans.push_back(plan_column(table, c));

    Dataset ds = assemble(table, plans, i_label);
    if (ds.rows.size() != 6172)
        ds.warnings.push_back("COMPAS filter produced " + std::to_string(ds.rows.size()) +
                              " rows, expected 6172 (data drift?)");
    return ds;
}

Dataset select_feature_set(const Dataset& ds, char set_id) {
    std::vector<std::string> dropped;
    switch (set_id) {
        case 'A': break;
        case 'B': dropped = {"age_cat"}; break;
        case 'C': dropped = {"age_cat", "race"}; break;
        case 'D': dropped = {"age_cat", "race", "sex"}; break;
        default: throw std::runtime_error(std::string("unknown feature set: ") + set_id);
    }
    Dataset out;
    out.labels = ds.labels;
    out.label_names = ds.label_names;
    out.warnings = ds.warnings;
    std::vector<int> keep;
    for (size_t i = 0; i < ds.feature_names.size(); ++i) {
        if (std::find(dropped.begin(), dropped.end(), ds.source_names[i]) != dropped.end()) continue;
        keep.push_back(static_cast<int>(i));
        out.feature_names.push_back(ds.feature_names[i]);
        out.source_names.push_back(ds.source_names[i]);
    }
    for (const auto& row : ds.rows) {
        std::vector<double> r;
        r.reserve(keep.size());
        for (int i : keep) r.push_back(row[static_cast<size_t>(i)]);
        out.rows.push_back(std::move(r));
    }
    return out;
}

Dataset ingest_welfare(const std::string& path, const std::string& label_col) {
    CsvTable table = read_csv(path);
    std::string label = label_col;
    if (label.empty()) {
        // The published file labels eligibility; fall back to the last column.
        for (const std::string& candidate : {"eligible", "eligibility", "label"})
            if (std::find(table.header.begin(), table.header.end(), candidate) != table.header.end()) {
                label = candidate;
                break;
            }
    }
    Dataset ds = dataset_from_table(table, label);
    if (ds.rows.size() != 2000)
        ds.warnings.push_back("Welfare file has " + std::to_string(ds.rows.size()) +
                              " rows, expected 2000");
    std::array<std::int64_t, 2> counts{0, 0};
    for (Label l : ds.labels) ++counts[l];
    if (counts[0] != counts[1])
        ds.warnings.push_back("Welfare classes are unbalanced: " + std::to_string(counts[0]) + "/" +
                              std::to_string(counts[1]));
    return ds;
}

}  // namespace aacbr
