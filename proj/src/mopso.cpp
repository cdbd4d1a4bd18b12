#include "fusewave/mopso.hpp"

#include "fusewave/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace fusewave::mopso {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool exactly_equal(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return a.size() == b.size() && (a.array() == b.array()).all();
}

}  // namespace

void SwarmConfig::validate() const {
    if (np < 2) throw std::invalid_argument("np must be at least 2");
    if (nf < 1) throw std::invalid_argument("nf must be at least 1");
    if (gmax < 1) throw std::invalid_argument("gmax must be at least 1");
    if (mem < 1) throw std::invalid_argument("mem must be at least 1");
    if (!(pm >= 0.0 && pm <= 1.0)) throw std::invalid_argument("pm must lie in [0, 1]");
    if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("w must be positive");
    if (!std::isfinite(c1) || !std::isfinite(c2)) throw std::invalid_argument("c1 and c2 must be finite");
}

double SwarmConfig::inertia_at(int generation) const {
    if (inertia == InertiaSchedule::LinearDecay) return 0.9 - 0.5 * generation / static_cast<double>(gmax);
    return w;
}

bool dominates(const Fitness& a, const Fitness& b) {
    if (a.size() != b.size()) throw std::invalid_argument("fitness vectors differ in length");
    bool strictly = false;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a(i) > b(i)) return false;
        if (a(i) < b(i)) strictly = true;
    }
    return strictly;
}

std::vector<double> crowding_distances(const std::vector<Fitness>& front) {
    const std::size_t n = front.size();
    std::vector<double> distance(n, 0.0);
    if (n == 0) return distance;
    if (n <= 2) return std::vector<double>(n, kInf);

    std::vector<std::size_t> order(n);
    for (Eigen::Index k = 0; k < front.front().size(); ++k) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return front[a](k) < front[b](k); });
        distance[order.front()] = kInf;
        distance[order.back()] = kInf;
        const double span = front[order.back()](k) - front[order.front()](k);
        if (span == 0.0) continue;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            distance[order[i]] += (front[order[i + 1]](k) - front[order[i - 1]](k)) / span;
        }
    }
    return distance;
}

ParetoArchive::ParetoArchive(std::size_t capacity) : capacity_(capacity) {
    if (capacity_ == 0) throw std::invalid_argument("archive capacity must be positive");
}

std::vector<Fitness> ParetoArchive::fitnesses() const {
    std::vector<Fitness> out;
    out.reserve(members_.size());
    for (const auto& m : members_) out.push_back(m.fitness);
    return out;
}

void ParetoArchive::refresh_crowding() { crowding_ = crowding_distances(fitnesses()); }

bool ParetoArchive::update(const ArchiveMember& candidate) {
    if (!candidate.fitness.allFinite()) return false;
    for (const auto& m : members_) {
        if (dominates(m.fitness, candidate.fitness)) return false;
    }
    std::erase_if(members_, [&](const ArchiveMember& m) { return dominates(candidate.fitness, m.fitness); });
    members_.push_back(candidate);
    refresh_crowding();
    while (members_.size() > capacity_) {
        const auto least = std::min_element(crowding_.begin(), crowding_.end());
        members_.erase(members_.begin() + (least - crowding_.begin()));
        refresh_crowding();
    }
    return true;
}

bool operator==(const ParetoArchive& a, const ParetoArchive& b) {
    if (a.capacity_ != b.capacity_ || a.members_.size() != b.members_.size()) return false;
    for (std::size_t i = 0; i < a.members_.size(); ++i) {
        if (!exactly_equal(a.members_[i].position, b.members_[i].position) ||
            !exactly_equal(a.members_[i].fitness, b.members_[i].fitness)) {
            return false;
        }
    }
    return true;
}

const ArchiveMember& select_leader(const ParetoArchive& archive, double u) {
    if (archive.empty()) throw std::invalid_argument("cannot select a leader from an empty archive");
    const auto& crowd = archive.crowding();
    const double best = *std::max_element(crowd.begin(), crowd.end());
    std::vector<std::size_t> tied;
    for (std::size_t i = 0; i < crowd.size(); ++i) {
        if (crowd[i] == best) tied.push_back(i);
    }
    const auto pick = std::min(tied.size() - 1, static_cast<std::size_t>(u * static_cast<double>(tied.size())));
    return archive.members()[tied[pick]];
}

const ArchiveMember& select_leader(const ParetoArchive& archive, Rng& rng) {
    return select_leader(archive, rng.uniform());
}

Eigen::VectorXd velocity_update(const Particle& p, const Position& gbest, double w, double c1, double c2,
                                const Eigen::VectorXd& rand1, const Eigen::VectorXd& rand2) {
    return (w * p.velocity.array() + c1 * rand1.array() * (p.pbest_position - p.position).array() +
            c2 * rand2.array() * (gbest - p.position).array())
        .matrix();
}

Position position_update(const Particle& p) { return p.position + p.velocity; }

void enforce_bounds(Position& position, Eigen::VectorXd& velocity) {
    for (Eigen::Index j = 0; j < position.size(); ++j) {
        if (position(j) > 1.0) {
            position(j) = 1.0;
            velocity(j) = -velocity(j);
        } else if (position(j) < 0.0) {
            position(j) = 0.0;
            velocity(j) = -velocity(j);
        }
    }
}

MutationDraws draw_mutation(Rng& rng) {
    MutationDraws d;
    d.trigger = rng.uniform();
    d.dimension = rng.uniform();
    d.value = rng.uniform();
    return d;
}

Position mutate(const Position& position, int generation, const SwarmConfig& cfg, const MutationDraws& draws) {
    Position out = position;
    if (!(draws.trigger < cfg.pm) || position.size() == 0) return out;
    const double progress = std::clamp(static_cast<double>(generation) / cfg.gmax, 0.0, 1.0);
    const double range = std::pow(1.0 - progress, 1.5);
    const auto j = std::min<Eigen::Index>(position.size() - 1,
                                          static_cast<Eigen::Index>(draws.dimension * static_cast<double>(position.size())));
    const double lo = std::max(0.0, position(j) - range);
    const double hi = std::min(1.0, position(j) + range);
    out(j) = lo + draws.value * (hi - lo);
    return out;
}

bool update_pbest(Particle& p, double coin) {
    if (!p.fitness.allFinite()) return false;
    for (const auto& earlier : p.pbest_history) {
        if (dominates(earlier, p.fitness)) return false;
    }
    bool replace = false;
    if (dominates(p.fitness, p.pbest_fitness)) {
        replace = true;
    } else if (!dominates(p.pbest_fitness, p.fitness)) {
        replace = coin < 0.5;
    }
    if (!replace) return false;
    p.pbest_position = p.position;
    p.pbest_fitness = p.fitness;
    std::erase_if(p.pbest_history, [&](const Fitness& f) { return dominates(p.fitness, f); });
    p.pbest_history.push_back(p.fitness);
    return true;
}

namespace {

struct ParticleDraws {
    Eigen::VectorXd rand1;
    Eigen::VectorXd rand2;
    MutationDraws mutation;
    double pbest_coin = 0.0;
};

class Evaluator {
public:
    Evaluator(const Objective& objective, const SwarmConfig& cfg) : objective_(objective), cfg_(cfg) {}

    void evaluate(std::vector<Particle>& swarm) {
        parallel_for(swarm.size(), cfg_.threads, [&](std::size_t i) { swarm[i].fitness = objective_(swarm[i].position); });
        for (auto& p : swarm) {
            ++evaluations;
            if (p.fitness.size() != cfg_.nf) throw std::invalid_argument("objective returned the wrong number of values");
            if (!p.fitness.allFinite()) {
                ++nonfinite;
                p.fitness = Fitness::Constant(cfg_.nf, kInf);
            }
        }
    }

    std::size_t evaluations = 0;
    std::size_t nonfinite = 0;

private:
    const Objective& objective_;
    const SwarmConfig& cfg_;
};

double scalarized(const Fitness& f) { return f.sum(); }

// Index of the pbest with the smallest objective sum; lowest index on ties.
std::size_t best_scalarized(const std::vector<Particle>& swarm) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < swarm.size(); ++i) {
        if (scalarized(swarm[i].pbest_fitness) < scalarized(swarm[best].pbest_fitness)) best = i;
    }
    return best;
}

}  // namespace

SwarmResult run(const Objective& objective, Eigen::Index dimension, const SwarmConfig& cfg,
                const GenerationObserver& observer) {
    cfg.validate();
    if (dimension < 1) throw std::invalid_argument("search dimension must be positive");
    const bool apso = cfg.mode == Mode::Apso;

    Rng rng(cfg.seed);
    Evaluator evaluator(objective, cfg);
    std::vector<Particle> swarm(static_cast<std::size_t>(cfg.np));
    for (auto& p : swarm) {
        p.position = rng.uniform_vector(dimension);
        p.velocity = Eigen::VectorXd::Zero(dimension);
        p.pbest_position = p.position;
    }
    evaluator.evaluate(swarm);

    ParetoArchive archive(apso ? static_cast<std::size_t>(cfg.mem) : 1);
    for (auto& p : swarm) {
        p.pbest_fitness = p.fitness;
        if (p.fitness.allFinite()) p.pbest_history.push_back(p.fitness);
        if (apso) archive.update({p.position, p.fitness});
    }
    if (observer) observer(0, swarm, archive);

    std::vector<ParticleDraws> draws(swarm.size());
    for (int g = 0; g < cfg.gmax; ++g) {
        const double inertia = cfg.inertia_at(g);

        Position leader;
        if (apso) {
            const double u = rng.uniform();
            if (!archive.empty()) leader = select_leader(archive, u).position;
        } else {
            leader = swarm[best_scalarized(swarm)].pbest_position;
        }

        for (auto& d : draws) {
            d.rand1 = rng.uniform_vector(dimension);
            d.rand2 = rng.uniform_vector(dimension);
            d.mutation = draw_mutation(rng);
            d.pbest_coin = rng.uniform();
        }

        for (std::size_t i = 0; i < swarm.size(); ++i) {
            Particle& p = swarm[i];
            const Position& gbest = leader.size() ? leader : p.pbest_position;
            p.velocity = velocity_update(p, gbest, inertia, cfg.c1, cfg.c2, draws[i].rand1, draws[i].rand2);
            p.position = position_update(p);
            enforce_bounds(p.position, p.velocity);
            if (apso) p.position = mutate(p.position, g, cfg, draws[i].mutation);
        }

        evaluator.evaluate(swarm);

        for (std::size_t i = 0; i < swarm.size(); ++i) {
            Particle& p = swarm[i];
            if (apso) {
                archive.update({p.position, p.fitness});
                update_pbest(p, draws[i].pbest_coin);
            } else if (p.fitness.allFinite() && scalarized(p.fitness) < scalarized(p.pbest_fitness)) {
                p.pbest_position = p.position;
                p.pbest_fitness = p.fitness;
                p.pbest_history.assign(1, p.fitness);
            }
        }
        if (observer) observer(g + 1, swarm, archive);
    }

    if (!apso) {
        const Particle& best = swarm[best_scalarized(swarm)];
        if (best.pbest_fitness.allFinite()) archive.update({best.pbest_position, best.pbest_fitness});
    }
    return {std::move(archive), std::move(swarm), evaluator.evaluations, evaluator.nonfinite};
}

}  // namespace fusewave::mopso
