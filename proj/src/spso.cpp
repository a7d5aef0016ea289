#include "a2dkit/spso.hpp"

#include <algorithm>
#include <future>
#include <random>

#include "a2dkit/error.hpp"
#include "a2dkit/numeric.hpp"

namespace a2dkit {

Topology Topology::parse(const std::string& text)
{
    if (text == "global")
        return global();
    if (text.starts_with("ring:")) {
        const auto k = parse_uint(std::string_view(text).substr(5));
        if (!k || *k == 0)
            throw ConfigError("ring topology needs a positive K, got '" + text + "'");
        return ring(*k);
    }
    throw ConfigError("unknown topology '" + text + "' (expected global or ring:K)");
}

std::string Topology::to_string() const
{
    return kind == Kind::Global ? "global" : "ring:" + std::to_string(k);
}

void PsoConfig::validate(std::size_t dims) const
{
    if (dims == 0)
        throw ConfigError("PSO needs at least one dimension");
    if (particles < 2)
        throw ConfigError("PSO needs at least 2 particles");
    if (iterations < 1)
        throw ConfigError("PSO needs at least 1 iteration");
    if (runs < 1)
        throw ConfigError("PSO needs at least 1 run");
    const auto check_size = [&](const std::vector<double>& b, const char* name) {
        if (b.size() != 1 && b.size() != dims)
            throw ConfigError(std::string(name) + " must have 1 or " + std::to_string(dims) +
                              " entries");
    };
    check_size(bounds_lo, "bounds_lo");
    check_size(bounds_hi, "bounds_hi");
    for (std::size_t d = 0; d < dims; ++d) {
        if (!(lo(d) >= 0.0 && hi(d) <= 1.0))
            throw ConfigError("PSO bounds must lie inside [0,1]");
        if (!(lo(d) < hi(d)))
            throw ConfigError("PSO bounds need lo < hi in dimension " + std::to_string(d));
    }
    if (!(inertia > 0.0 && inertia < 1.0))
        throw ConfigError("PSO inertia must lie in (0,1)");
    if (!(acceleration > 0.0) || !std::isfinite(acceleration))
        throw ConfigError("PSO acceleration must be positive");
    if (topology.kind == Topology::Kind::Ring && topology.k == 0)
        throw ConfigError("ring topology needs k >= 1");
}

std::vector<double> gravity_center(std::span<const double> x, std::span<const double> personal_best,
                                   std::span<const double> neighbour_best, double acceleration)
{
    std::vector<double> g(x.size());
    for (std::size_t d = 0; d < x.size(); ++d)
        g[d] = x[d] + acceleration * (personal_best[d] + neighbour_best[d] - 2.0 * x[d]) / 3.0;
    return g;
}

namespace {

using Engine = std::mt19937_64;

Engine particle_stream(std::uint64_t seed, std::size_t run, std::size_t particle)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(run), static_cast<std::uint32_t>(particle),
                      0x5350534fu};
    return Engine(seq);
}

/// Uniform point in the solid ball. Always consumes dims normals and one
/// uniform so the stream position does not depend on the radius.
std::vector<double> sample_ball(Engine& rng, std::span<const double> center, double radius)
{
    const std::size_t dims = center.size();
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> dir(dims);
    double norm2 = 0.0;
    do {
        norm2 = 0.0;
        for (auto& v : dir) {
            v = normal(rng);
            norm2 += v * v;
        }
    } while (norm2 == 0.0);
    const double u = unit(rng);
    const double r = radius * std::pow(u, 1.0 / static_cast<double>(dims)) / std::sqrt(norm2);
    std::vector<double> out(dims);
    for (std::size_t d = 0; d < dims; ++d)
        out[d] = center[d] + r * dir[d];
    return out;
}

}  // namespace

void move_particle(Particle& p, std::span<const double> neighbour_best, const PsoConfig& config,
                   std::mt19937_64& rng)
{
    const std::size_t dims = p.position.size();
    const auto g = gravity_center(p.position, p.best_position, neighbour_best, config.acceleration);
    double r2 = 0.0;
    for (std::size_t d = 0; d < dims; ++d)
        r2 += (g[d] - p.position[d]) * (g[d] - p.position[d]);
    const auto target = sample_ball(rng, g, std::sqrt(r2));
    for (std::size_t d = 0; d < dims; ++d) {
        p.velocity[d] = config.inertia * p.velocity[d] + (target[d] - p.position[d]);
        p.position[d] += p.velocity[d];
        if (p.position[d] < config.lo(d)) {
            p.position[d] = config.lo(d);
            p.velocity[d] = 0.0;
        } else if (p.position[d] > config.hi(d)) {
            p.position[d] = config.hi(d);
            p.velocity[d] = 0.0;
        }
    }
}

namespace {

template <typename Body>
void parallel_for(std::size_t n, std::size_t threads, Body body)
{
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }
    const std::size_t workers = std::min(threads, n);
    std::vector<std::future<void>> jobs;
    jobs.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        jobs.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < n; i += workers)
                body(i);
        }));
    }
    for (auto& j : jobs)
        j.get();
}

double checked(const Fitness& fitness, std::span<const double> x)
{
    const double f = fitness(x);
    if (!std::isfinite(f))
        throw DomainError("PSO fitness returned a non-finite value");
    return f;
}

class Swarm {
public:
    Swarm(const Fitness& fitness, std::size_t dims, const PsoConfig& config, std::size_t run)
        : fitness_(fitness), dims_(dims), config_(config), particles_(config.particles)
    {
        streams_.reserve(config.particles);
        for (std::size_t i = 0; i < config.particles; ++i)
            streams_.push_back(particle_stream(config.seed, run, i));
    }

    void initialise()
    {
        parallel_for(particles_.size(), config_.threads, [&](std::size_t i) {
            auto& p = particles_[i];
            auto& rng = streams_[i];
            p.position.resize(dims_);
            p.velocity.resize(dims_);
            for (std::size_t d = 0; d < dims_; ++d) {
                const double lo = config_.lo(d), hi = config_.hi(d);
                const double half = (hi - lo) / 2.0;
                p.position[d] = std::uniform_real_distribution<double>(lo, hi)(rng);
                p.velocity[d] = std::uniform_real_distribution<double>(-half, half)(rng);
            }
            p.fitness = checked(fitness_, p.position);
            p.best_position = p.position;
            p.best_fitness = p.fitness;
        });
        assign_neighbourhoods();
    }

    void step()
    {
        // Neighbourhood bests are read from the previous iteration's personal
        // bests, which no particle modifies until it moves itself.
        std::vector<std::vector<double>> attractors(particles_.size());
        for (std::size_t i = 0; i < particles_.size(); ++i)
            attractors[i] = particles_[particles_[i].neighbourhood_best].best_position;

        parallel_for(particles_.size(), config_.threads, [&](std::size_t i) {
            auto& p = particles_[i];
            move_particle(p, attractors[i], config_, streams_[i]);
            p.fitness = checked(fitness_, p.position);
            if (p.fitness < p.best_fitness) {
                p.best_fitness = p.fitness;
                p.best_position = p.position;
            }
        });
        assign_neighbourhoods();
    }

    std::size_t best_index() const
    {
        std::size_t best = 0;
        for (std::size_t i = 1; i < particles_.size(); ++i)
            if (particles_[i].best_fitness < particles_[best].best_fitness)
                best = i;
        return best;
    }

    std::span<const Particle> particles() const { return particles_; }

private:
    void assign_neighbourhoods()
    {
        const std::size_t n = particles_.size();
        if (config_.topology.kind == Topology::Kind::Global) {
            const std::size_t best = best_index();
            for (auto& p : particles_)
                p.neighbourhood_best = best;
            return;
        }
        const std::size_t k = std::min(config_.topology.k, n / 2);
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t best = i;
            for (std::size_t off = 1; off <= k; ++off) {
                for (std::size_t j : {(i + off) % n, (i + n - off) % n}) {
                    const double fj = particles_[j].best_fitness;
                    const double fb = particles_[best].best_fitness;
                    if (fj < fb || (fj == fb && j < best))
                        best = j;
                }
            }
            particles_[i].neighbourhood_best = best;
        }
    }

    const Fitness& fitness_;
    std::size_t dims_;
    const PsoConfig& config_;
    std::vector<Particle> particles_;
    std::vector<Engine> streams_;
};

}  // namespace

PsoResult spso_optimize(const Fitness& fitness, std::size_t dims, const PsoConfig& config,
                        const SwarmObserver& observer)
{
    config.validate(dims);
    if (!fitness)
        throw ConfigError("PSO fitness function is empty");

    PsoResult result;
    result.trace.reserve(config.runs * (config.iterations + 1));
    for (std::size_t run = 0; run < config.runs; ++run) {
        Swarm swarm(fitness, dims, config, run);
        swarm.initialise();
        result.trace.push_back({run, 0, swarm.particles()[swarm.best_index()].best_fitness});
        if (observer)
            observer(run, 0, swarm.particles());
        for (std::size_t it = 1; it <= config.iterations; ++it) {
            swarm.step();
            result.trace.push_back({run, it, swarm.particles()[swarm.best_index()].best_fitness});
            if (observer)
                observer(run, it, swarm.particles());
        }
        const auto& best = swarm.particles()[swarm.best_index()];
        result.run_best.push_back(best.best_fitness);
        if (run == 0 || best.best_fitness < result.fitness) {
            result.fitness = best.best_fitness;
            result.position = best.best_position;
            result.best_run = run;
        }
    }
    return result;
}

std::string trace_to_csv(const PsoResult& result, const PsoConfig& config)
{
    std::string bounds;
    const std::size_t nb = std::max(config.bounds_lo.size(), config.bounds_hi.size());
    for (std::size_t d = 0; d < nb; ++d) {
        if (d)
            bounds += ";";
        bounds += format_double(config.lo(d)) + ":" + format_double(config.hi(d));
    }
    std::string out;
    out += "# particles=" + std::to_string(config.particles) + "\n";
    out += "# iterations=" + std::to_string(config.iterations) + "\n";
    out += "# runs=" + std::to_string(config.runs) + "\n";
    out += "# bounds=" + bounds + "\n";
    out += "# inertia=" + format_double(config.inertia) + "\n";
    out += "# acceleration=" + format_double(config.acceleration) + "\n";
    out += "# topology=" + config.topology.to_string() + "\n";
    out += "# seed=" + std::to_string(config.seed) + "\n";
    out += "run,iteration,best_fitness\n";
    for (const auto& row : result.trace)
        out += std::to_string(row.run) + "," + std::to_string(row.iteration) + "," +
               format_double(row.best_fitness) + "\n";
    return out;
}

}  // namespace a2dkit
