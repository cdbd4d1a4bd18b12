#ifndef FUSEWAVE_MOPSO_HPP
#define FUSEWAVE_MOPSO_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace fusewave::mopso {

using Position = Eigen::VectorXd;
using Fitness = Eigen::VectorXd;

/// Seeded generator with a fixed, platform-independent mapping to [0, 1).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// 53 high bits of one mt19937_64 output scaled to [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    Eigen::VectorXd uniform_vector(Eigen::Index n) {
        Eigen::VectorXd v(n);
        for (Eigen::Index i = 0; i < n; ++i) v(i) = uniform();
        return v;
    }

private:
    std::mt19937_64 engine_;
};

enum class Mode { Apso, PlainPso };
enum class InertiaSchedule { Fixed, LinearDecay };

struct SwarmConfig {
    int np = 100;
    int nf = 6;
    double w = 0.5;
    double c1 = 1.0;
    double c2 = 1.0;
    int gmax = 100;
    int mem = 100;
    double pm = 0.05;
    std::uint64_t seed = 1;
    Mode mode = Mode::Apso;
    InertiaSchedule inertia = InertiaSchedule::Fixed;
    /// Worker threads for objective evaluation; results do not depend on it.
    unsigned threads = 1;

    /// Throws std::invalid_argument when a field violates its range.
    void validate() const;

    /// Inertia at a generation: `w`, or 0.9 - 0.5 g / gmax under LinearDecay.
    double inertia_at(int generation) const;
};

/// True iff `a` is no worse than `b` everywhere and strictly better somewhere
/// (minimization). Throws std::invalid_argument on length mismatch.
bool dominates(const Fitness& a, const Fitness& b);

struct Particle {
    Position position;
    Eigen::VectorXd velocity;
    Position pbest_position;
    Fitness pbest_fitness;
    Fitness fitness;
    /// Non-dominated subset of every pbest fitness this particle has held.
    std::vector<Fitness> pbest_history;
};

/// NSGA-II crowding distance. Per objective, members are sorted (stable on
/// index); the two ends get +infinity and interior members add
/// (f[next] - f[prev]) / (f_max - f_min), skipped when f_max == f_min.
std::vector<double> crowding_distances(const std::vector<Fitness>& front);

struct ArchiveMember {
    Position position;
    Fitness fitness;
};

/// Bounded set of mutually non-dominated solutions with cached crowding
/// distances.
class ParetoArchive {
public:
    explicit ParetoArchive(std::size_t capacity = 100);

    std::size_t capacity() const { return capacity_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    const std::vector<ArchiveMember>& members() const { return members_; }
    const std::vector<double>& crowding() const { return crowding_; }
    std::vector<Fitness> fitnesses() const;

    /// Inserts unless an existing member dominates the candidate, then drops
    /// members the candidate dominates and trims to capacity by repeatedly
    /// removing the least crowded member (lowest index on ties). Returns
    /// whether the candidate was inserted.
    bool update(const ArchiveMember& candidate);

    friend bool operator==(const ParetoArchive& a, const ParetoArchive& b);

private:
    void refresh_crowding();

    std::size_t capacity_;
    std::vector<ArchiveMember> members_;
    std::vector<double> crowding_;
};

inline bool update_archive(ParetoArchive& archive, const ArchiveMember& candidate) {
    return archive.update(candidate);
}

/// Member with maximal crowding distance; ties broken by `u` in [0, 1):
/// the floor(u * ties)-th tied member in index order. Throws
/// std::invalid_argument on an empty archive.
const ArchiveMember& select_leader(const ParetoArchive& archive, double u);
const ArchiveMember& select_leader(const ParetoArchive& archive, Rng& rng);

/// w v + c1 r1 (pbest - x) + c2 r2 (gbest - x), r1 and r2 per dimension.
Eigen::VectorXd velocity_update(const Particle& p, const Position& gbest, double w, double c1, double c2,
                                const Eigen::VectorXd& rand1, const Eigen::VectorXd& rand2);

Position position_update(const Particle& p);

/// Clamps out-of-range coordinates to the violated bound of [0, 1] and flips
/// the sign of that velocity component.
void enforce_bounds(Position& position, Eigen::VectorXd& velocity);

struct MutationDraws {
    double trigger = 1.0;    // mutate iff trigger < pm
    double dimension = 0.0;  // floor(dimension * d)
    double value = 0.0;      // position within the mutation range
};

MutationDraws draw_mutation(Rng& rng);

/// With probability pm, resamples one coordinate uniformly within
/// [max(0, x - r), min(1, x + r)], r = (1 - generation / gmax)^1.5.
Position mutate(const Position& position, int generation, const SwarmConfig& cfg, const MutationDraws& draws);

/// Replaces pbest when the current fitness dominates it, keeps it when it
/// dominates the current one, and otherwise replaces when coin < 0.5. A
/// current fitness dominated by any earlier pbest is never taken. Non-finite
/// fitness is never taken. Returns whether pbest changed.
bool update_pbest(Particle& p, double coin);

/// Progress hook invoked after initialization (generation 0) and after each
/// generation g = 1..gmax.
using GenerationObserver =
    std::function<void(int generation, const std::vector<Particle>& swarm, const ParetoArchive& archive)>;

using Objective = std::function<Fitness(const Position&)>;

struct SwarmResult {
    ParetoArchive archive;
    std::vector<Particle> swarm;
    std::size_t evaluations = 0;
    std::size_t nonfinite_evaluations = 0;
};

/// Runs the swarm over [0, 1]^dimension. In PlainPso mode mutation and the
/// archive are disabled, the leader is the pbest with the smallest objective
/// sum, and the result archive holds that single member.
SwarmResult run(const Objective& objective, Eigen::Index dimension, const SwarmConfig& cfg,
                const GenerationObserver& observer = {});

}  // namespace fusewave::mopso

#endif  // FUSEWAVE_MOPSO_HPP
