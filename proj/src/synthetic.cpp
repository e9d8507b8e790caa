#include "evomlp/synthetic.hpp"

#include <ostream>
#include <sstream>

#include "evomlp/format.hpp"
#include "evomlp/random.hpp"

namespace evomlp {

LabeledPoints make_xor(std::size_t size, std::uint64_t seed) {
    static constexpr double patterns[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    static constexpr int truth[4] = {0, 1, 1, 0};
    const bool jitter = size > 4;
    const std::size_t n = jitter ? size : 4;

    LabeledPoints out;
    out.x.resize(static_cast<Eigen::Index>(n), 2);
    auto rng = rng_stream(seed, 0, 0, Purpose::Synthetic);
    for (std::size_t i = 0; i < n; ++i) {
        const auto k = i % 4;
        for (int c = 0; c < 2; ++c)
            out.x(static_cast<Eigen::Index>(i), c) = patterns[k][c] + (jitter ? 0.05 * rng.normal() : 0.0);
        out.labels.push_back(truth[k]);
    }
    return out;
}

LabeledPoints make_blobs(std::size_t size, std::uint64_t seed) {
    LabeledPoints out;
    out.x.resize(static_cast<Eigen::Index>(size), 2);
    const std::size_t first = (size + 1) / 2;
    auto rng = rng_stream(seed, 0, 0, Purpose::Synthetic);
    for (std::size_t i = 0; i < size; ++i) {
        const int label = i < first ? 0 : 1;
        const double centre = label == 0 ? -2.0 : 2.0;
        for (int c = 0; c < 2; ++c)
            out.x(static_cast<Eigen::Index>(i), c) = centre + rng.normal();
        out.labels.push_back(label);
    }
    return out;
}

void write_csv(std::ostream& out, const LabeledPoints& points) {
    for (Eigen::Index c = 0; c < points.x.cols(); ++c)
        out << 'x' << (c + 1) << ',';
    out << "label\n";
    for (Eigen::Index r = 0; r < points.x.rows(); ++r) {
        for (Eigen::Index c = 0; c < points.x.cols(); ++c)
            out << format_real(points.x(r, c)) << ',';
        out << points.labels[static_cast<std::size_t>(r)] << '\n';
    }
}

Dataset to_dataset(const LabeledPoints& points) {
    std::stringstream csv;
    write_csv(csv, points);
    return preprocess(parse_csv(csv, "label"), PreprocessPolicy{});
}

}  // namespace evomlp
