#ifndef EVOMLP_CODEGEN_HPP
#define EVOMLP_CODEGEN_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "evomlp/data.hpp"
#include "evomlp/mlp.hpp"

namespace evomlp {

struct TrainingMetadata {
    std::string algorithm;
    std::uint64_t seed = 0;
    double fitness = 0.0;
    std::size_t generations = 0;

    bool operator==(const TrainingMetadata&) const = default;
};

/// Everything needed to classify raw feature vectors outside the trainer.
struct TrainedModel {
    Topology topology;
    Genome genome;
    TransformParams transform;
    std::vector<std::string> class_names;
    TrainingMetadata metadata;

    /// Throws CorruptModelError on inconsistent sizes.
    void validate() const;

    bool operator==(const TrainedModel& other) const {
        return topology == other.topology && genome.size() == other.genome.size() && genome == other.genome &&
               transform == other.transform && class_names == other.class_names && metadata == other.metadata;
    }
};

/// Class name for one raw (untransformed) feature vector.
std::string classify(const TrainedModel& model, const Eigen::VectorXd& raw_features);

enum class Target { Python, Java, JavaScript };

std::string_view to_string(Target t);
/// "python", "java" or "javascript"; ValidationError lists the supported set.
Target parse_target(std::string_view name);
/// Conventional file name for the generated source ("classifier.py", "Classifier.java", "classifier.js").
std::string default_file_name(Target t);

/// Self-contained source exposing scores(features) and predict(features).
/// Weights are embedded as shortest round-trip decimal literals; the fitted
/// input transform runs before the forward pass. Pure function of the model.
std::string export_source(const TrainedModel& model, Target target);

inline constexpr int kModelSchemaVersion = 1;

std::string model_to_json(const TrainedModel& model);
/// Throws CorruptModelError on malformed text, schema mismatch or size mismatch.
TrainedModel model_from_json(std::string_view text);

void save_model(const TrainedModel& model, const std::filesystem::path& path);
TrainedModel load_model(const std::filesystem::path& path);

}  // namespace evomlp

#endif  // EVOMLP_CODEGEN_HPP
