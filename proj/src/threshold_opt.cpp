#include "a2dkit/threshold_opt.hpp"

#include <cmath>
#include <memory>

#include "a2dkit/error.hpp"
#include "a2dkit/numeric.hpp"

namespace a2dkit {

std::vector<double> uniform_grid(std::size_t points)
{
    if (points == 0)
        throw ConfigError("grid needs at least one point");
    if (points == 1)
        return {0.0};
    std::vector<double> grid(points);
    const double n = static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i)
        grid[i] = static_cast<double>(i) / n;
    return grid;
}

std::vector<double> stepped_grid(double lo, double hi, double step)
{
    if (!(step > 0.0) || !(lo <= hi) || lo < 0.0 || hi > 1.0)
        throw ConfigError("stepped_grid: need 0 <= lo <= hi <= 1 and step > 0");
    // Values are k / inv_step so grid points like 0.21 come out as the
    // nearest double to the decimal, not an accumulated sum.
    const double inv = std::round(1.0 / step);
    const auto first = static_cast<long long>(std::ceil(lo * inv - 1e-9));
    const auto last = static_cast<long long>(std::floor(hi * inv + 1e-9));
    std::vector<double> grid;
    for (long long k = first; k <= last; ++k)
        grid.push_back(static_cast<double>(k) / inv);
    return grid;
}

void validate_grid(std::span<const double> grid)
{
    if (grid.empty())
        throw ConfigError("threshold grid is empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] >= 0.0 && grid[i] <= 1.0))
            throw ConfigError("threshold grid value outside [0,1]");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw ConfigError("threshold grid must be strictly increasing");
    }
}

SweepResult sweep_uniform(const ScoreMatrix& scores, const LabelMatrix& labels,
                          std::span<const double> grid, Averaging averaging)
{
    validate_grid(grid);
    require_same_layout(scores, labels, "sweep_uniform");
    SweepResult result;
    result.grid.assign(grid.begin(), grid.end());
    result.rows.reserve(grid.size());
    for (double g : grid) {
        const auto report =
            evaluate(scores, labels, ThresholdVector::uniform(scores.cols(), g), averaging);
        result.rows.push_back({g, report.precision, report.recall, report.f1});
    }
    return result;
}

std::string to_csv(const SweepResult& sweep)
{
    std::string out = "threshold,precision,recall,f1\n";
    for (const auto& r : sweep.rows)
        out += format_double(r.threshold) + "," + format_double(r.precision) + "," +
               format_double(r.recall) + "," + format_double(r.f1) + "\n";
    return out;
}

std::string_view to_string(FitnessKind kind)
{
    switch (kind) {
    case FitnessKind::NegPrecision:
        return "negP";
    case FitnessKind::NegPrf1:
        return "negPRF1";
    case FitnessKind::NegF1:
        return "negF1";
    }
    return "negPRF1";
}

FitnessKind parse_fitness_kind(std::string_view text)
{
    if (text == "negP")
        return FitnessKind::NegPrecision;
    if (text == "negPRF1")
        return FitnessKind::NegPrf1;
    if (text == "negF1")
        return FitnessKind::NegF1;
    throw ConfigError("unknown fitness '" + std::string(text) + "' (expected negP, negPRF1 or negF1)");
}

namespace {

template <typename Objective>
Fitness metric_fitness(const ScoreMatrix& scores, const LabelMatrix& labels, Averaging averaging,
                       Objective objective)
{
    require_same_layout(scores, labels, "fitness");
    auto data = std::make_shared<const std::pair<ScoreMatrix, LabelMatrix>>(scores, labels);
    return [data, averaging, objective](std::span<const double> x) {
        const ThresholdVector t(std::vector<double>(x.begin(), x.end()));
        const auto report = evaluate(data->first, data->second, t, averaging);
        // + 0.0 turns -0 into 0 so an all-wrong predictor prints as 0.
        return -objective(report) + 0.0;
    };
}

}  // namespace

Fitness fitness_neg_precision(const ScoreMatrix& scores, const LabelMatrix& labels,
                              Averaging averaging)
{
    return metric_fitness(scores, labels, averaging,
                          [](const MetricsReport& r) { return r.precision; });
}

Fitness fitness_neg_prf1(const ScoreMatrix& scores, const LabelMatrix& labels, Averaging averaging)
{
    return metric_fitness(scores, labels, averaging,
                          [](const MetricsReport& r) { return r.precision * r.recall * r.f1; });
}

Fitness fitness_neg_f1(const ScoreMatrix& scores, const LabelMatrix& labels, Averaging averaging)
{
    return metric_fitness(scores, labels, averaging, [](const MetricsReport& r) { return r.f1; });
}

Fitness make_fitness(FitnessKind kind, const ScoreMatrix& scores, const LabelMatrix& labels,
                     Averaging averaging)
{
    switch (kind) {
    case FitnessKind::NegPrecision:
        return fitness_neg_precision(scores, labels, averaging);
    case FitnessKind::NegPrf1:
        return fitness_neg_prf1(scores, labels, averaging);
    case FitnessKind::NegF1:
        return fitness_neg_f1(scores, labels, averaging);
    }
    throw ConfigError("unknown fitness kind");
}

GridBest grid_best(const Fitness& fitness, std::size_t dims, std::span<const double> grid)
{
    validate_grid(grid);
    if (dims == 0)
        throw ConfigError("grid_best: dims must be at least 1");

    GridBest best;
    std::vector<std::size_t> idx(dims, 0);
    std::vector<double> x(dims);
    const auto eval = [&](const std::vector<double>& v) {
        ++best.evaluations;
        const double f = fitness(v);
        if (!std::isfinite(f))
            throw DomainError("grid_best: fitness returned a non-finite value");
        return f;
    };

    // Shared threshold across every class.
    double best_f = 0.0;
    std::size_t best_g = 0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        std::fill(x.begin(), x.end(), grid[g]);
        const double f = eval(x);
        if (g == 0 || f < best_f) {
            best_f = f;
            best_g = g;
        }
    }
    std::fill(idx.begin(), idx.end(), best_g);

    // Cyclic coordinate descent. A move is taken on strict improvement, or
    // on equal fitness at a lower grid index, so (fitness, index sum)
    // strictly decreases and the loop terminates.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t d = 0; d < dims; ++d) {
            for (std::size_t k = 0; k < dims; ++k)
                x[k] = grid[idx[k]];
            std::size_t arg = idx[d];
            double arg_f = best_f;
            for (std::size_t g = 0; g < grid.size(); ++g) {
                if (g == idx[d])
                    continue;
                x[d] = grid[g];
                const double f = eval(x);
                if (f < arg_f || (f == arg_f && g < arg)) {
                    arg_f = f;
                    arg = g;
                }
            }
            if (arg != idx[d]) {
                idx[d] = arg;
                best_f = arg_f;
                changed = true;
            }
        }
    }

    best.thresholds.resize(dims);
    for (std::size_t k = 0; k < dims; ++k)
        best.thresholds[k] = grid[idx[k]];
    best.fitness = best_f;
    return best;
}

GridBest grid_best(const ScoreMatrix& scores, const LabelMatrix& labels,
                   std::span<const double> grid, FitnessKind kind, Averaging averaging)
{
    return grid_best(make_fitness(kind, scores, labels, averaging), scores.cols(), grid);
}

}  // namespace a2dkit
