#ifndef EVOMLP_MLP_HPP
#define EVOMLP_MLP_HPP

#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "evomlp/error.hpp"

namespace evomlp {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Flat weight vector of one candidate network. Layers in order; within a
/// layer, each node's incoming weights followed by its bias, nodes in order.
template <typename Scalar>
using GenomeT = Vector<Scalar>;

using Genome = GenomeT<double>;

enum class Activation { Tanh, Logistic, Linear };

std::string_view to_string(Activation a);
/// Accepts "tanh", "logistic", "linear". Throws ValidationError otherwise.
Activation parse_activation(std::string_view name);

template <typename Scalar>
inline Scalar activation_apply(Activation kind, Scalar x) {
    using std::exp;
    using std::tanh;
    switch (kind) {
    case Activation::Tanh:
        return tanh(x);
    case Activation::Logistic:
        return Scalar(1) / (Scalar(1) + exp(-x));
    case Activation::Linear:
        return x;
    }
    return x;
}

struct Topology {
    std::size_t input_dim = 1;
    std::vector<std::size_t> hidden_layers;
    std::size_t output_dim = 2;
    Activation activation = Activation::Tanh;

    /// Layer widths from input to output, inclusive.
    std::vector<std::size_t> layer_sizes() const {
        std::vector<std::size_t> sizes{input_dim};
        sizes.insert(sizes.end(), hidden_layers.begin(), hidden_layers.end());
        sizes.push_back(output_dim);
        return sizes;
    }

    std::size_t num_layers() const { return hidden_layers.size() + 1; }

    /// Throws ValidationError listing every violated constraint.
    void validate() const;

    bool operator==(const Topology&) const = default;
};

inline std::size_t genome_length(const Topology& topology) {
    const auto sizes = topology.layer_sizes();
    std::size_t n = 0;
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l)
        n += sizes[l + 1] * (sizes[l] + 1);
    return n;
}

/// Offset of layer `layer`'s block inside the genome.
inline std::size_t layer_offset(const Topology& topology, std::size_t layer) {
    const auto sizes = topology.layer_sizes();
    std::size_t offset = 0;
    for (std::size_t l = 0; l < layer; ++l)
        offset += sizes[l + 1] * (sizes[l] + 1);
    return offset;
}

/// Row-major view of one layer: n_out rows of (n_in weights, bias).
template <typename Scalar>
using LayerBlock = Eigen::Map<const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

template <typename Scalar>
LayerBlock<Scalar> layer_block(const Topology& topology, const GenomeT<Scalar>& genome, std::size_t layer) {
    const auto sizes = topology.layer_sizes();
    const auto n_in = static_cast<Eigen::Index>(sizes[layer]);
    const auto n_out = static_cast<Eigen::Index>(sizes[layer + 1]);
    return LayerBlock<Scalar>(genome.data() + layer_offset(topology, layer), n_out, n_in + 1);
}

/// Per-layer (n_out x (n_in + 1)) matrices, weights then bias column.
template <typename Scalar>
std::vector<Matrix<Scalar>> unflatten(const Topology& topology, const GenomeT<Scalar>& genome) {
    if (static_cast<std::size_t>(genome.size()) != genome_length(topology))
        throw DimensionError("genome length " + std::to_string(genome.size()) + " does not match topology (" +
                             std::to_string(genome_length(topology)) + ")");
    std::vector<Matrix<Scalar>> layers;
    for (std::size_t l = 0; l < topology.num_layers(); ++l)
        layers.emplace_back(layer_block(topology, genome, l));
    return layers;
}

template <typename Scalar>
GenomeT<Scalar> flatten(const std::vector<Matrix<Scalar>>& layers) {
    Eigen::Index n = 0;
    for (const auto& m : layers)
        n += m.size();
    GenomeT<Scalar> genome(n);
    Eigen::Index offset = 0;
    for (const auto& m : layers) {
        Eigen::Map<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(genome.data() + offset,
                                                                                           m.rows(), m.cols()) = m;
        offset += m.size();
    }
    return genome;
}

namespace detail {

inline void check_forward_dims(const Topology& topology, Eigen::Index genome_size, Eigen::Index feature_size) {
    if (static_cast<std::size_t>(genome_size) != genome_length(topology))
        throw DimensionError("genome length " + std::to_string(genome_size) + " does not match topology (" +
                             std::to_string(genome_length(topology)) + ")");
    if (static_cast<std::size_t>(feature_size) != topology.input_dim)
        throw DimensionError("feature vector length " + std::to_string(feature_size) + " does not match input_dim " +
                             std::to_string(topology.input_dim));
}

}  // namespace detail

/// Feed-forward pass; the activation is applied at every layer, output included.
template <typename Scalar, typename Derived>
Vector<Scalar> forward(const Topology& topology, const GenomeT<Scalar>& genome,
                       const Eigen::MatrixBase<Derived>& features) {
    detail::check_forward_dims(topology, genome.size(), features.size());
    Vector<Scalar> a = features.template cast<Scalar>();
    for (std::size_t l = 0; l < topology.num_layers(); ++l) {
        const auto block = layer_block(topology, genome, l);
        const Eigen::Index n_in = block.cols() - 1;
        Vector<Scalar> z = block.leftCols(n_in) * a + block.col(n_in);
        a = z.unaryExpr([kind = topology.activation](Scalar v) { return activation_apply(kind, v); });
    }
    return a;
}

/// Index of the largest output; ties go to the lowest index.
template <typename Derived>
std::size_t argmax(const Eigen::MatrixBase<Derived>& outputs) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < outputs.size(); ++i)
        if (outputs(i) > outputs(best))
            best = i;
    return static_cast<std::size_t>(best);
}

template <typename Scalar, typename Derived>
std::size_t predict(const Topology& topology, const GenomeT<Scalar>& genome, const Eigen::MatrixBase<Derived>& features) {
    return argmax(forward(topology, genome, features));
}

}  // namespace evomlp

#endif  // EVOMLP_MLP_HPP
