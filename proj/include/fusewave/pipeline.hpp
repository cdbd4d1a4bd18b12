#ifndef FUSEWAVE_PIPELINE_HPP
#define FUSEWAVE_PIPELINE_HPP

#include "fusewave/dtcwt.hpp"
#include "fusewave/fusion.hpp"
#include "fusewave/metrics.hpp"
#include "fusewave/mopso.hpp"

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace fusewave {

/// How one solution is taken from the final archive.
struct SelectCompromise {};
struct SelectMaxEntropy {};
struct SelectIndex {
    std::size_t index = 0;
};
using Selection = std::variant<SelectCompromise, SelectMaxEntropy, SelectIndex>;

/// Parses "compromise", "max_entropy", or a non-negative archive index.
Selection parse_selection(const std::string& text);

struct FusionJob {
    Image source_a;
    Image source_b;
    int levels = 3;
    mopso::SwarmConfig swarm;
    Selection selection = SelectCompromise{};
    /// Fixed weights; when set the optimizer is skipped.
    std::optional<FusionWeights> weights;
    /// Keep every archive member (weights + fitness) in the result.
    bool dump_archive = false;
};

struct ArchiveEntry {
    FusionWeights weights;
    Eigen::VectorXd fitness;
};

struct FusionResult {
    Image fused;
    FusionWeights weights;
    metrics::MetricsReport report;
    std::size_t archive_size = 0;
    std::size_t evaluations = 0;
    std::size_t nonfinite_evaluations = 0;
    std::vector<ArchiveEntry> archive_dump;
    std::vector<std::string> warnings;
};

/// Index of the member minimizing the sum of per-objective min-max
/// normalized fitness (objectives constant over the archive count 0);
/// lowest index on ties. Throws std::invalid_argument on an empty archive.
std::size_t select_compromise(const mopso::ParetoArchive& archive);

/// Index of the member with the highest entropy (lowest first objective).
std::size_t select_max_entropy(const mopso::ParetoArchive& archive);

/// Source pyramids decomposed once, shared read-only by every evaluation.
class FusionProblem {
public:
    FusionProblem(Image source_a, Image source_b, int levels);

    int levels() const { return levels_; }
    Eigen::Index dimension() const { return weight_dimension(levels_); }
    const Image& source_a() const { return source_a_; }
    const Image& source_b() const { return source_b_; }

    /// Fuse, reconstruct, and crop to the original extent.
    Image fuse(const FusionWeights& w) const;

    /// Six-objective fitness of the image fused with weights `x`.
    Eigen::VectorXd fitness(const Eigen::VectorXd& x) const;

private:
    Image source_a_;
    Image source_b_;
    int levels_;
    Pyramid pyramid_a_;
    Pyramid pyramid_b_;
};

/// Decompose, optimize weights, select, reconstruct, and report.
/// `observer` receives the optimizer's per-generation callbacks.
FusionResult run_fusion(const FusionJob& job, const mopso::GenerationObserver& observer = {});

}  // namespace fusewave

#endif  // FUSEWAVE_PIPELINE_HPP
