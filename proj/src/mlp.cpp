#include "evomlp/mlp.hpp"

namespace evomlp {

std::string_view to_string(Activation a) {
    switch (a) {
    case Activation::Tanh:
        return "tanh";
    case Activation::Logistic:
        return "logistic";
    case Activation::Linear:
        return "linear";
    }
    return "unknown";
}

Activation parse_activation(std::string_view name) {
    if (name == "tanh")
        return Activation::Tanh;
    if (name == "logistic")
        return Activation::Logistic;
    if (name == "linear")
        return Activation::Linear;
    throw ValidationError("unknown activation '" + std::string(name) + "' (expected tanh, logistic or linear)");
}

void Topology::validate() const {
    std::vector<std::string> problems;
    if (input_dim < 1)
        problems.push_back("topology.input_dim must be >= 1");
    if (output_dim < 2)
        problems.push_back("topology.output_dim must be >= 2 (got " + std::to_string(output_dim) + ")");
    for (std::size_t i = 0; i < hidden_layers.size(); ++i)
        if (hidden_layers[i] < 1)
            problems.push_back("topology.hidden_layers[" + std::to_string(i) + "] must be >= 1");
    if (!problems.empty())
        throw ValidationError(std::move(problems));
}

}  // namespace evomlp
