#ifndef EVOMLP_TRACE_HPP
#define EVOMLP_TRACE_HPP

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace evomlp {

/// Two leading principal axes of a generation-0 population.
struct PcaBasis {
    Eigen::VectorXd mean;
    Eigen::Matrix<double, Eigen::Dynamic, 2> components;  // orthonormal columns
    Eigen::Vector2d explained_variance = Eigen::Vector2d::Zero();
    /// Zero-variance input; components fall back to the first two canonical axes.
    bool degenerate = false;
};

/// Rows of `population` are genomes. Needs at least 3 rows and 2 columns.
/// Uses the G x G covariance when G <= NP, otherwise the NP x NP Gram matrix.
/// Each component is signed so that its largest-magnitude entry is positive.
PcaBasis fit_pca(const Eigen::MatrixXd& population);

Eigen::Vector2d project(const PcaBasis& basis, const Eigen::VectorXd& genome);

struct TraceEvent {
    std::size_t generation = 0;
    std::size_t member_index = 0;
    double x = 0.0;
    double y = 0.0;
    double fitness = 0.0;
    std::optional<bool> replaced;                  // DE and GA
    std::optional<double> personal_best_fitness;   // PSO
};

/// One JSON object per line, fields in fixed order:
/// gen, idx, x, y, fit, then replaced or pbest.
std::string to_json_line(const TraceEvent& event);

class TraceSink {
public:
    virtual ~TraceSink() = default;
    virtual void emit(const TraceEvent& event) = 0;
    /// Called once per generation after all of its events.
    virtual void flush() {}
};

class JsonlTraceSink final : public TraceSink {
public:
    explicit JsonlTraceSink(const std::filesystem::path& path);
    void emit(const TraceEvent& event) override;
    void flush() override;

private:
    std::filesystem::path path_;
    std::ofstream out_;
};

class MemoryTraceSink final : public TraceSink {
public:
    void emit(const TraceEvent& event) override { events.push_back(event); }
    std::vector<TraceEvent> events;
};

}  // namespace evomlp

#endif  // EVOMLP_TRACE_HPP
