#ifndef EVOMLP_DATA_HPP
#define EVOMLP_DATA_HPP

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace evomlp {

enum class MissingPolicy { DropRow, MeanImpute, MedianImpute };
enum class TransformKind { None, MinMaxToUnit, ZScore };

std::string_view to_string(MissingPolicy p);
std::string_view to_string(TransformKind k);
MissingPolicy parse_missing_policy(std::string_view name);
TransformKind parse_transform_kind(std::string_view name);

struct PreprocessPolicy {
    MissingPolicy missing = MissingPolicy::DropRow;
    TransformKind transform = TransformKind::None;
};

/// Parsed CSV before any cleaning. Feature cells are numeric or missing; the
/// label column is kept as text.
struct RawTable {
    std::vector<std::string> feature_names;
    std::string label_column;
    std::vector<std::vector<std::optional<double>>> cells;  // rows x features
    std::vector<std::string> labels;

    std::size_t rows() const { return cells.size(); }
    std::size_t features() const { return feature_names.size(); }
    std::size_t missing_count() const;
};

/// Fitted per-feature affine input transform.
///   MinMaxToUnit: x' = (x - first) / (second - first), first = min, second = max
///   ZScore:       x' = (x - first) / second,           first = mean, second = stddev
/// A constant column under MinMaxToUnit maps to 0.
struct TransformParams {
    TransformKind kind = TransformKind::None;
    Eigen::VectorXd first;
    Eigen::VectorXd second;

    bool operator==(const TransformParams& other) const {
        return kind == other.kind && first == other.first && second == other.second;
    }
};

struct Dataset {
    Eigen::MatrixXd features;  // N x D, already transformed
    std::vector<std::size_t> labels;
    std::vector<std::string> class_names;
    TransformParams transform;

    std::size_t rows() const { return static_cast<std::size_t>(features.rows()); }
    std::size_t dim() const { return static_cast<std::size_t>(features.cols()); }
    std::size_t num_classes() const { return class_names.size(); }
};

/// RFC-4180 records: quoted fields, doubled quotes, CRLF or LF line ends.
std::vector<std::vector<std::string>> read_csv_records(std::istream& in);

RawTable parse_csv(std::istream& in, const std::string& label_column);
RawTable load_csv(const std::filesystem::path& path, const std::string& label_column);

Dataset preprocess(const RawTable& table, const PreprocessPolicy& policy);

Eigen::VectorXd apply_transform(const TransformParams& params, const Eigen::VectorXd& features);

/// Feature-only matrix for prediction. Every column is a feature except
/// `ignore_column` when given and present. Missing cells are an error.
Eigen::MatrixXd load_feature_matrix(const std::filesystem::path& path,
                                    const std::optional<std::string>& ignore_column = std::nullopt);

}  // namespace evomlp

#endif  // EVOMLP_DATA_HPP
