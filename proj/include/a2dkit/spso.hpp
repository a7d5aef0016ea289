#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "a2dkit/threshold_opt.hpp"

namespace a2dkit {

/// Which personal bests a particle sees as its neighbourhood best.
struct Topology {
    enum class Kind { Global, Ring };
    Kind kind = Kind::Global;
    /// Ring half-width: neighbours are i-k .. i+k (mod n), self included.
    std::size_t k = 1;

    static Topology global() { return {}; }
    static Topology ring(std::size_t k) { return {Kind::Ring, k}; }

    /// "global" or "ring:K".
    static Topology parse(const std::string& text);
    std::string to_string() const;
};

struct PsoConfig {
    std::size_t particles = 40;
    std::size_t iterations = 10;
    std::size_t runs = 4;
    /// One entry applies to every dimension; otherwise one per dimension.
    std::vector<double> bounds_lo{0.1};
    std::vector<double> bounds_hi{0.4};
    double inertia = 1.0 / (2.0 * std::log(2.0));
    double acceleration = 0.5 + std::log(2.0);
    std::uint64_t seed = 42;
    Topology topology;
    /// Worker threads for fitness evaluation; results do not depend on it.
    std::size_t threads = 1;

    /// Throws ConfigError when any invariant fails for `dims` dimensions.
    void validate(std::size_t dims) const;
    double lo(std::size_t d) const { return bounds_lo.size() == 1 ? bounds_lo[0] : bounds_lo[d]; }
    double hi(std::size_t d) const { return bounds_hi.size() == 1 ? bounds_hi[0] : bounds_hi[d]; }
};

struct Particle {
    std::vector<double> position;
    std::vector<double> velocity;
    std::vector<double> best_position;
    double fitness = 0.0;
    double best_fitness = 0.0;
    /// Index of the particle whose personal best is this particle's
    /// neighbourhood best.
    std::size_t neighbourhood_best = 0;
};

struct TraceRow {
    std::size_t run = 0;
    /// 0 is the initial swarm; 1..iterations follow each update.
    std::size_t iteration = 0;
    double best_fitness = 0.0;

    friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

struct PsoResult {
    std::vector<double> position;
    double fitness = 0.0;
    std::size_t best_run = 0;
    std::vector<double> run_best;
    std::vector<TraceRow> trace;
};

/// Called after initialisation (iteration 0) and after every update.
using SwarmObserver =
    std::function<void(std::size_t run, std::size_t iteration, std::span<const Particle> swarm)>;

/// Gravity centre x + c (p + l - 2x) / 3.
std::vector<double> gravity_center(std::span<const double> x, std::span<const double> personal_best,
                                   std::span<const double> neighbour_best, double acceleration);

/// One velocity/position update of `p` towards `neighbour_best`, drawing from
/// `rng`. Does not evaluate fitness.
void move_particle(Particle& p, std::span<const double> neighbour_best, const PsoConfig& config,
                   std::mt19937_64& rng);

/// Standard PSO minimising `fitness` over the box given by `config`.
///
/// Each iteration draws x' uniformly from the ball around the gravity centre
/// with radius |G - x|, sets v <- w v + x' - x and x <- x + v, then clamps
/// each coordinate to its bound (zeroing that velocity component). Best of
/// `runs` independent swarms is returned. Every particle of every run owns a
/// random stream derived from (seed, run, particle), so the result is
/// bit-identical for any thread count.
PsoResult spso_optimize(const Fitness& fitness, std::size_t dims, const PsoConfig& config,
                        const SwarmObserver& observer = {});

/// Trace file: `# key=value` parameter lines, then `run,iteration,best_fitness`.
std::string trace_to_csv(const PsoResult& result, const PsoConfig& config);

}  // namespace a2dkit
