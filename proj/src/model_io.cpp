#include <fstream>
#include <sstream>

#include "json.hpp"

#include "evomlp/codegen.hpp"
#include "evomlp/error.hpp"

namespace evomlp {

using json = nlohmann::ordered_json;

void TrainedModel::validate() const {
    try {
        topology.validate();
    } catch (const ValidationError& e) {
        throw CorruptModelError(std::string("invalid topology: ") + e.what());
    }
    if (static_cast<std::size_t>(genome.size()) != genome_length(topology))
        throw CorruptModelError("weight length mismatch: " + std::to_string(genome.size()) + " weights for a topology of " +
                                std::to_string(genome_length(topology)));
    if (class_names.size() != topology.output_dim)
        throw CorruptModelError("class table has " + std::to_string(class_names.size()) + " names for " +
                                std::to_string(topology.output_dim) + " outputs");
    if (transform.kind != TransformKind::None &&
        (static_cast<std::size_t>(transform.first.size()) != topology.input_dim ||
         transform.second.size() != transform.first.size()))
        throw CorruptModelError("transform parameter count does not match input_dim");
    if (!genome.allFinite())
        throw CorruptModelError("non-finite weight");
}

std::string classify(const TrainedModel& model, const Eigen::VectorXd& raw_features) {
    if (static_cast<std::size_t>(raw_features.size()) != model.topology.input_dim)
        throw DimensionError("got " + std::to_string(raw_features.size()) + " features, model expects " +
                             std::to_string(model.topology.input_dim));
    const auto x = apply_transform(model.transform, raw_features);
    return model.class_names[predict(model.topology, model.genome, x)];
}

namespace {

json to_array(const Eigen::VectorXd& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        a.push_back(v(i));
    return a;
}

Eigen::VectorXd from_array(const json& a) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        v(static_cast<Eigen::Index>(i)) = a.at(i).get<double>();
    return v;
}

}  // namespace

std::string model_to_json(const TrainedModel& model) {
    json doc;
    doc["schema_version"] = kModelSchemaVersion;
    doc["topology"] = {
        {"input_dim", model.topology.input_dim},
        {"hidden_layers", model.topology.hidden_layers},
        {"output_dim", model.topology.output_dim},
        {"activation", std::string(to_string(model.topology.activation))},
    };
    doc["weights"] = to_array(model.genome);

    json features = json::array();
    const auto& tp = model.transform;
    for (Eigen::Index i = 0; tp.kind != TransformKind::None && i < tp.first.size(); ++i) {
        if (tp.kind == TransformKind::MinMaxToUnit)
            features.push_back({{"min", tp.first(i)}, {"max", tp.second(i)}});
        else
            features.push_back({{"mean", tp.first(i)}, {"std", tp.second(i)}});
    }
    doc["transform"] = {{"kind", std::string(to_string(tp.kind))}, {"features", features}};
    doc["classes"] = model.class_names;
    doc["metadata"] = {
        {"algorithm", model.metadata.algorithm},
        {"seed", model.metadata.seed},
        {"fitness", model.metadata.fitness},
        {"generations", model.metadata.generations},
    };
    return doc.dump(2) + "\n";
}

TrainedModel model_from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw CorruptModelError(std::string("model file is truncated or malformed: ") + e.what());
    }

    TrainedModel model;
    try {
        const auto version = doc.at("schema_version").get<int>();
        if (version != kModelSchemaVersion)
            throw CorruptModelError("schema version mismatch: file has " + std::to_string(version) + ", expected " +
                                    std::to_string(kModelSchemaVersion));
        const auto& topo = doc.at("topology");
        model.topology.input_dim = topo.at("input_dim").get<std::size_t>();
        model.topology.hidden_layers = topo.at("hidden_layers").get<std::vector<std::size_t>>();
        model.topology.output_dim = topo.at("output_dim").get<std::size_t>();
        model.topology.activation = parse_activation(topo.at("activation").get<std::string>());
        model.genome = from_array(doc.at("weights"));

        const auto& tr = doc.at("transform");
        model.transform.kind = parse_transform_kind(tr.at("kind").get<std::string>());
        const auto& feats = tr.at("features");
        if (model.transform.kind != TransformKind::None) {
            const bool minmax = model.transform.kind == TransformKind::MinMaxToUnit;
            model.transform.first.resize(static_cast<Eigen::Index>(feats.size()));
            model.transform.second.resize(static_cast<Eigen::Index>(feats.size()));
            for (std::size_t i = 0; i < feats.size(); ++i) {
                const auto k = static_cast<Eigen::Index>(i);
                model.transform.first(k) = feats.at(i).at(minmax ? "min" : "mean").get<double>();
                model.transform.second(k) = feats.at(i).at(minmax ? "max" : "std").get<double>();
            }
        }
        model.class_names = doc.at("classes").get<std::vector<std::string>>();
        const auto& meta = doc.at("metadata");
        model.metadata.algorithm = meta.at("algorithm").get<std::string>();
        model.metadata.seed = meta.at("seed").get<std::uint64_t>();
        model.metadata.fitness = meta.at("fitness").get<double>();
        model.metadata.generations = meta.at("generations").get<std::size_t>();
    } catch (const json::exception& e) {
        throw CorruptModelError(std::string("model file is missing or mistypes a field: ") + e.what());
    } catch (const ValidationError& e) {
        throw CorruptModelError(std::string("model file has an invalid value: ") + e.what());
    }
    model.validate();
    return model;
}

void save_model(const TrainedModel& model, const std::filesystem::path& path) {
    model.validate();
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open model file '" + path.string() + "' for writing");
    out << model_to_json(model);
    if (!out)
        throw IoError("write to model file '" + path.string() + "' failed");
}

TrainedModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open model file '" + path.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return model_from_json(buffer.str());
}

}  // namespace evomlp
