#include "evomlp/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>

#include "evomlp/error.hpp"

namespace evomlp {

std::string_view to_string(MissingPolicy p) {
    switch (p) {
    case MissingPolicy::DropRow:
        return "drop_row";
    case MissingPolicy::MeanImpute:
        return "mean";
    case MissingPolicy::MedianImpute:
        return "median";
    }
    return "unknown";
}

std::string_view to_string(TransformKind k) {
    switch (k) {
    case TransformKind::None:
        return "none";
    case TransformKind::MinMaxToUnit:
        return "minmax";
    case TransformKind::ZScore:
        return "zscore";
    }
    return "unknown";
}

MissingPolicy parse_missing_policy(std::string_view name) {
    for (auto p : {MissingPolicy::DropRow, MissingPolicy::MeanImpute, MissingPolicy::MedianImpute})
        if (name == to_string(p))
            return p;
    throw ValidationError("unknown missing-value policy '" + std::string(name) + "' (expected drop_row, mean or median)");
}

TransformKind parse_transform_kind(std::string_view name) {
    for (auto k : {TransformKind::None, TransformKind::MinMaxToUnit, TransformKind::ZScore})
        if (name == to_string(k))
            return k;
    throw ValidationError("unknown transform '" + std::string(name) + "' (expected none, minmax or zscore)");
}

std::size_t RawTable::missing_count() const {
    std::size_t n = 0;
    for (const auto& row : cells)
        n += static_cast<std::size_t>(std::count(row.begin(), row.end(), std::nullopt));
    return n;
}

std::vector<std::vector<std::string>> read_csv_records(std::istream& in) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool any = false;  // current record has content

    auto end_record = [&] {
        record.push_back(std::move(field));
        field.clear();
        // Blank lines are skipped.
        if (!(record.size() == 1 && record[0].empty() && !any))
            records.push_back(std::move(record));
        record.clear();
        any = false;
    };

    char c;
    while (in.get(c)) {
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get(c);
                    field += '"';
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        switch (c) {
        case '"':
            in_quotes = true;
            any = true;
            break;
        case ',':
            record.push_back(std::move(field));
            field.clear();
            any = true;
            break;
        case '\r':
            if (in.peek() == '\n')
                in.get(c);
            end_record();
            break;
        case '\n':
            end_record();
            break;
        default:
            field += c;
            any = true;
        }
    }
    if (in_quotes)
        throw ValidationError("unterminated quoted field at end of CSV input");
    if (any || !field.empty() || !record.empty())
        end_record();
    return records;
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

std::optional<double> parse_cell(std::string_view text, bool& ok) {
    ok = true;
    text = trim(text);
    if (text.empty())
        return std::nullopt;
    if (text.front() == '+')
        text.remove_prefix(1);
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || !std::isfinite(value))
        ok = false;
    return value;
}

std::string cell_error(std::size_t row, const std::string& column, std::string_view text) {
    return "row " + std::to_string(row) + ", column '" + column + "': non-numeric feature value '" +
           std::string(text) + "'";
}

}  // namespace

RawTable parse_csv(std::istream& in, const std::string& label_column) {
    auto records = read_csv_records(in);
    if (records.empty())
        throw ValidationError("CSV input has no header row");

    const auto& header = records.front();
    const auto label_it = std::find(header.begin(), header.end(), label_column);
    if (label_it == header.end())
        throw ValidationError("label column '" + label_column + "' not found in CSV header");
    const auto label_col = static_cast<std::size_t>(label_it - header.begin());

    RawTable table;
    table.label_column = label_column;
    for (std::size_t c = 0; c < header.size(); ++c)
        if (c != label_col)
            table.feature_names.push_back(header[c]);

    std::vector<std::string> problems;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.size() != header.size()) {
            throw ValidationError("ragged CSV: row " + std::to_string(r) + " has " + std::to_string(rec.size()) +
                                  " fields, expected " + std::to_string(header.size()));
        }
        std::vector<std::optional<double>> row;
        row.reserve(header.size() - 1);
        for (std::size_t c = 0; c < rec.size(); ++c) {
            if (c == label_col)
                continue;
            bool ok = true;
            auto cell = parse_cell(rec[c], ok);
            if (!ok)
                problems.push_back(cell_error(r, header[c], rec[c]));
            row.push_back(cell);
        }
        const auto label = trim(rec[label_col]);
        if (label.empty())
            problems.push_back("row " + std::to_string(r) + ": missing label");
        table.cells.push_back(std::move(row));
        table.labels.emplace_back(label);
    }
    if (!problems.empty())
        throw ValidationError(std::move(problems));
    return table;
}

RawTable load_csv(const std::filesystem::path& path, const std::string& label_column) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open data file '" + path.string() + "'");
    return parse_csv(in, label_column);
}

namespace {

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const auto n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

Dataset preprocess(const RawTable& table, const PreprocessPolicy& policy) {
    const std::size_t d = table.features();
    if (d == 0)
        throw ValidationError("dataset has no feature columns");

    std::vector<std::size_t> kept;
    for (std::size_t r = 0; r < table.rows(); ++r) {
        const auto& row = table.cells[r];
        const bool complete = std::none_of(row.begin(), row.end(), [](const auto& c) { return !c.has_value(); });
        if (complete || policy.missing != MissingPolicy::DropRow)
            kept.push_back(r);
    }

    // Column fill values from observed cells.
    std::vector<double> fill(d, 0.0);
    if (policy.missing != MissingPolicy::DropRow) {
        for (std::size_t c = 0; c < d; ++c) {
            std::vector<double> observed;
            for (std::size_t r : kept)
                if (table.cells[r][c])
                    observed.push_back(*table.cells[r][c]);
            if (observed.empty())
                throw ValidationError("column '" + table.feature_names[c] + "' has no observed values to impute from");
            if (policy.missing == MissingPolicy::MeanImpute) {
                double sum = 0.0;
                for (double v : observed)
                    sum += v;
                fill[c] = sum / static_cast<double>(observed.size());
            } else {
                fill[c] = median(std::move(observed));
            }
        }
    }

    if (kept.size() < 2)
        throw ValidationError("empty dataset: " + std::to_string(kept.size()) +
                              " usable row(s) after missing-value handling, at least 2 required");

    Dataset ds;
    ds.features.resize(static_cast<Eigen::Index>(kept.size()), static_cast<Eigen::Index>(d));
    std::map<std::string, std::size_t> class_index;
    for (std::size_t i = 0; i < kept.size(); ++i) {
        const auto r = kept[i];
        for (std::size_t c = 0; c < d; ++c)
            ds.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
                table.cells[r][c].value_or(fill[c]);
        const auto& name = table.labels[r];
        auto [it, inserted] = class_index.try_emplace(name, ds.class_names.size());
        if (inserted)
            ds.class_names.push_back(name);
        ds.labels.push_back(it->second);
    }
    if (ds.class_names.size() < 2)
        throw ValidationError("single-class dataset: label column '" + table.label_column +
                              "' has only one distinct value, at least 2 classes required");

    TransformParams& tp = ds.transform;
    tp.kind = policy.transform;
    if (policy.transform == TransformKind::MinMaxToUnit) {
        tp.first = ds.features.colwise().minCoeff().transpose();
        tp.second = ds.features.colwise().maxCoeff().transpose();
    } else if (policy.transform == TransformKind::ZScore) {
        const double n = static_cast<double>(ds.rows());
        tp.first = ds.features.colwise().mean().transpose();
        tp.second.resize(static_cast<Eigen::Index>(d));
        std::vector<std::string> problems;
        for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(d); ++c) {
            const double var = (ds.features.col(c).array() - tp.first(c)).square().sum() / n;
            tp.second(c) = std::sqrt(var);
            if (!(tp.second(c) > 0.0))
                problems.push_back("zero-variance column '" + table.feature_names[static_cast<std::size_t>(c)] +
                                   "' cannot be z-scored");
        }
        if (!problems.empty())
            throw ValidationError(std::move(problems));
    }
    for (Eigen::Index r = 0; r < ds.features.rows(); ++r)
        ds.features.row(r) = apply_transform(tp, ds.features.row(r).transpose()).transpose();
    return ds;
}

Eigen::VectorXd apply_transform(const TransformParams& params, const Eigen::VectorXd& features) {
    if (params.kind == TransformKind::None)
        return features;
    if (features.size() != params.first.size())
        throw DimensionError("feature vector length " + std::to_string(features.size()) +
                             " does not match transform width " + std::to_string(params.first.size()));
    Eigen::VectorXd out(features.size());
    for (Eigen::Index i = 0; i < features.size(); ++i) {
        if (params.kind == TransformKind::MinMaxToUnit) {
            const double range = params.second(i) - params.first(i);
            out(i) = range > 0.0 ? (features(i) - params.first(i)) / range : 0.0;
        } else {
            out(i) = (features(i) - params.first(i)) / params.second(i);
        }
    }
    return out;
}

Eigen::MatrixXd load_feature_matrix(const std::filesystem::path& path, const std::optional<std::string>& ignore_column) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open feature file '" + path.string() + "'");
    const auto records = read_csv_records(in);
    if (records.empty())
        throw ValidationError("CSV input has no header row");
    const auto& header = records.front();
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < header.size(); ++c)
        if (!ignore_column || header[c] != *ignore_column)
            cols.push_back(c);

    Eigen::MatrixXd x(static_cast<Eigen::Index>(records.size() - 1), static_cast<Eigen::Index>(cols.size()));
    std::vector<std::string> problems;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.size() != header.size())
            throw ValidationError("ragged CSV: row " + std::to_string(r) + " has " + std::to_string(rec.size()) +
                                  " fields, expected " + std::to_string(header.size()));
        for (std::size_t k = 0; k < cols.size(); ++k) {
            bool ok = true;
            const auto cell = parse_cell(rec[cols[k]], ok);
            if (!ok)
                problems.push_back(cell_error(r, header[cols[k]], rec[cols[k]]));
            else if (!cell)
                problems.push_back("row " + std::to_string(r) + ", column '" + header[cols[k]] + "': missing value");
            else
                x(static_cast<Eigen::Index>(r - 1), static_cast<Eigen::Index>(k)) = *cell;
        }
    }
    if (!problems.empty())
        throw ValidationError(std::move(problems));
    return x;
}

}  // namespace evomlp
