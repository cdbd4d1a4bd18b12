#include "fusewave/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace fusewave {

Selection parse_selection(const std::string& text) {
    if (text == "compromise") return SelectCompromise{};
    if (text == "max_entropy") return SelectMaxEntropy{};
    std::size_t index = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), index);
    if (ec != std::errc() || end != text.data() + text.size() || text.empty()) {
        throw std::invalid_argument("selection must be 'compromise', 'max_entropy', or an archive index");
    }
    return SelectIndex{index};
}

std::size_t select_compromise(const mopso::ParetoArchive& archive) {
    if (archive.empty()) throw std::invalid_argument("cannot select from an empty archive");
    const auto& members = archive.members();
    const Eigen::Index nf = members.front().fitness.size();
    Eigen::VectorXd lo = members.front().fitness, hi = lo;
    for (const auto& m : members) {
        lo = lo.cwiseMin(m.fitness);
        hi = hi.cwiseMax(m.fitness);
    }
    std::size_t best = 0;
    double best_score = 0.0;
    for (std::size_t i = 0; i < members.size(); ++i) {
        double score = 0.0;
        for (Eigen::Index k = 0; k < nf; ++k) {
            const double span = hi(k) - lo(k);
            if (span > 0.0) score += (members[i].fitness(k) - lo(k)) / span;
        }
        if (i == 0 || score < best_score) {
            best = i;
            best_score = score;
        }
    }
    return best;
}

std::size_t select_max_entropy(const mopso::ParetoArchive& archive) {
    if (archive.empty()) throw std::invalid_argument("cannot select from an empty archive");
    const auto& members = archive.members();
    std::size_t best = 0;
    for (std::size_t i = 1; i < members.size(); ++i) {
        if (members[i].fitness(0) < members[best].fitness(0)) best = i;
    }
    return best;
}

FusionProblem::FusionProblem(Image source_a, Image source_b, int levels)
    : source_a_(std::move(source_a)), source_b_(std::move(source_b)), levels_(levels) {
    if (!(source_a_.extent() == source_b_.extent())) {
        throw std::invalid_argument("source images differ in size: " + std::to_string(source_a_.height()) + "x" +
                                    std::to_string(source_a_.width()) + " vs " + std::to_string(source_b_.height()) +
                                    "x" + std::to_string(source_b_.width()));
    }
    pyramid_a_ = decompose(source_a_, levels_);
    pyramid_b_ = decompose(source_b_, levels_);
}

Image FusionProblem::fuse(const FusionWeights& w) const { return inverse(fuse_pyramids(pyramid_a_, pyramid_b_, w)); }

Eigen::VectorXd FusionProblem::fitness(const Eigen::VectorXd& x) const {
    return metrics::fitness_vector(fuse(weights_from_vector(x, levels_)), source_a_, source_b_);
}

namespace {

bool is_constant(const Image& img) { return img.pixels().maxCoeff() == img.pixels().minCoeff(); }

}  // namespace

FusionResult run_fusion(const FusionJob& job, const mopso::GenerationObserver& observer) {
    if (job.levels < 1 || job.levels > kMaxLevels) throw std::invalid_argument("levels out of range");
    const FusionProblem problem(job.source_a, job.source_b, job.levels);

    FusionResult result;
    if (is_constant(job.source_a)) result.warnings.emplace_back("source a is constant; entropy objective is flat");
    if (is_constant(job.source_b)) result.warnings.emplace_back("source b is constant; entropy objective is flat");

    if (job.weights) {
        if (job.weights->levels() != job.levels) throw std::invalid_argument("weight count does not match levels");
        result.weights = *job.weights;
    } else {
        mopso::SwarmConfig cfg = job.swarm;
        cfg.nf = metrics::kObjectives;
        const auto objective = [&problem](const mopso::Position& x) { return problem.fitness(x); };
        const mopso::SwarmResult swarm = mopso::run(objective, problem.dimension(), cfg, observer);
        if (swarm.archive.empty()) throw std::runtime_error("optimizer produced no finite solution");

        const std::size_t chosen = std::visit(
            [&](const auto& rule) -> std::size_t {
                using Rule = std::decay_t<decltype(rule)>;
                if constexpr (std::is_same_v<Rule, SelectCompromise>) {
                    return select_compromise(swarm.archive);
                } else if constexpr (std::is_same_v<Rule, SelectMaxEntropy>) {
                    return select_max_entropy(swarm.archive);
                } else {
                    if (rule.index >= swarm.archive.size()) {
                        throw std::invalid_argument("archive index " + std::to_string(rule.index) +
                                                    " out of range (archive size " +
                                                    std::to_string(swarm.archive.size()) + ")");
                    }
                    return rule.index;
                }
            },
            job.selection);

        result.weights = weights_from_vector(swarm.archive.members()[chosen].position, job.levels);
        result.archive_size = swarm.archive.size();
        result.evaluations = swarm.evaluations;
        result.nonfinite_evaluations = swarm.nonfinite_evaluations;
        if (job.dump_archive) {
            for (const auto& m : swarm.archive.members()) {
                result.archive_dump.push_back({weights_from_vector(m.position, job.levels), m.fitness});
            }
        }
    }

    result.fused = problem.fuse(result.weights);
    result.report = metrics::evaluate(result.fused, job.source_a, job.source_b);
    return result;
}

}  // namespace fusewave
