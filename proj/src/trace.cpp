#include "evomlp/trace.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "evomlp/error.hpp"
#include "evomlp/format.hpp"

namespace evomlp {

namespace {

void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
    Eigen::Index arg = 0;
    for (Eigen::Index i = 1; i < v.size(); ++i)
        if (std::abs(v(i)) > std::abs(v(arg)))
            arg = i;
    if (v(arg) < 0.0)
        v = -v;
}

// Unit vector orthogonal to `u`, built from the canonical axis that keeps the
// largest residual.
Eigen::VectorXd orthogonal_axis(const Eigen::VectorXd& u) {
    Eigen::VectorXd best;
    double best_norm = -1.0;
    for (Eigen::Index k = 0; k < u.size(); ++k) {
        Eigen::VectorXd e = Eigen::VectorXd::Unit(u.size(), k);
        e -= u.dot(e) * u;
        const double n = e.norm();
        if (n > best_norm + 1e-12) {
            best_norm = n;
            best = e / n;
        }
    }
    return best;
}

}  // namespace

PcaBasis fit_pca(const Eigen::MatrixXd& population) {
    const Eigen::Index np = population.rows();
    const Eigen::Index g = population.cols();
    if (np < 3 || g < 2)
        throw DimensionError("PCA needs at least 3 genomes of length >= 2 (got " + std::to_string(np) + " x " +
                             std::to_string(g) + ")");

    PcaBasis basis;
    basis.mean = population.colwise().mean().transpose();
    const Eigen::MatrixXd centered = population.rowwise() - basis.mean.transpose();
    const double denom = static_cast<double>(np - 1);
    basis.components.resize(g, 2);

    if (centered.cwiseAbs().maxCoeff() == 0.0) {
        basis.components.col(0) = Eigen::VectorXd::Unit(g, 0);
        basis.components.col(1) = Eigen::VectorXd::Unit(g, 1);
        basis.degenerate = true;
        return basis;
    }

    Eigen::Vector2d lambda;
    if (g <= np) {
        const Eigen::MatrixXd cov = centered.transpose() * centered / denom;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
        // Eigenvalues come back ascending.
        for (int k = 0; k < 2; ++k) {
            lambda(k) = solver.eigenvalues()(g - 1 - k);
            basis.components.col(k) = solver.eigenvectors().col(g - 1 - k);
        }
    } else {
        const Eigen::MatrixXd gram = centered * centered.transpose() / denom;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
        for (int k = 0; k < 2; ++k) {
            lambda(k) = solver.eigenvalues()(np - 1 - k);
            const Eigen::VectorXd v = centered.transpose() * solver.eigenvectors().col(np - 1 - k);
            const double n = v.norm();
            if (k == 1 && !(lambda(1) > 1e-12 * lambda(0) && n > 0.0))
                basis.components.col(1) = orthogonal_axis(basis.components.col(0));
            else
                basis.components.col(k) = v / n;
        }
    }
    for (int k = 0; k < 2; ++k) {
        basis.explained_variance(k) = std::max(0.0, lambda(k));
        fix_sign(basis.components.col(k));
    }
    return basis;
}

Eigen::Vector2d project(const PcaBasis& basis, const Eigen::VectorXd& genome) {
    if (genome.size() != basis.mean.size())
        throw DimensionError("genome length " + std::to_string(genome.size()) + " does not match PCA basis (" +
                             std::to_string(basis.mean.size()) + ")");
    return basis.components.transpose() * (genome - basis.mean);
}

std::string to_json_line(const TraceEvent& e) {
    std::string line = "{\"gen\":" + std::to_string(e.generation) + ",\"idx\":" + std::to_string(e.member_index) +
                       ",\"x\":" + format_real(e.x) + ",\"y\":" + format_real(e.y) +
                       ",\"fit\":" + format_real(e.fitness);
    if (e.replaced)
        line += std::string(",\"replaced\":") + (*e.replaced ? "true" : "false");
    if (e.personal_best_fitness)
        line += ",\"pbest\":" + format_real(*e.personal_best_fitness);
    line += '}';
    return line;
}

JsonlTraceSink::JsonlTraceSink(const std::filesystem::path& path) : path_(path), out_(path, std::ios::binary) {
    if (!out_)
        throw IoError("cannot open trace file '" + path.string() + "'");
}

void JsonlTraceSink::emit(const TraceEvent& event) {
    out_ << to_json_line(event) << '\n';
    if (!out_)
        throw IoError("write to trace file '" + path_.string() + "' failed");
}

void JsonlTraceSink::flush() {
    out_.flush();
    if (!out_)
        throw IoError("flush of trace file '" + path_.string() + "' failed");
}

}  // namespace evomlp
