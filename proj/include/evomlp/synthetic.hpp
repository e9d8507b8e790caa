#ifndef EVOMLP_SYNTHETIC_HPP
#define EVOMLP_SYNTHETIC_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "evomlp/data.hpp"

namespace evomlp {

struct LabeledPoints {
    Eigen::MatrixXd x;
    std::vector<int> labels;
};

/// The four XOR rows in canonical order. With size > 4 the patterns are
/// cycled to `size` rows and each copy gets N(0, 0.05) jitter; labels are
/// unchanged by the jitter.
LabeledPoints make_xor(std::size_t size, std::uint64_t seed);

/// Two unit-variance Gaussian clusters in 2-D centred on (-2,-2) and (2,2);
/// the first ceil(size/2) rows are class 0, the rest class 1.
LabeledPoints make_blobs(std::size_t size, std::uint64_t seed);

/// CSV with header x1,...,xD,label.
void write_csv(std::ostream& out, const LabeledPoints& points);

/// Same points as an in-memory dataset (no preprocessing, classes "0", "1").
Dataset to_dataset(const LabeledPoints& points);

}  // namespace evomlp

#endif  // EVOMLP_SYNTHETIC_HPP
