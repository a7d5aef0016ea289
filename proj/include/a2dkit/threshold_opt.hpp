#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "a2dkit/matrix.hpp"
#include "a2dkit/metrics.hpp"

namespace a2dkit {

/// Objective over a threshold vector; lower is better.
using Fitness = std::function<double(std::span<const double>)>;

struct SweepRow {
    double threshold = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct SweepResult {
    std::vector<double> grid;
    std::vector<SweepRow> rows;
};

/// `points` evenly spaced values from 0 to 1 inclusive (points >= 2), or {0} for 1.
std::vector<double> uniform_grid(std::size_t points);

/// Same step from lo to hi inclusive, snapped to multiples of `step`.
std::vector<double> stepped_grid(double lo, double hi, double step);

/// Throws ConfigError unless the grid is non-empty, strictly increasing and
/// inside [0,1].
void validate_grid(std::span<const double> grid);

/// Evaluates every grid value as a uniform threshold across all classes.
SweepResult sweep_uniform(const ScoreMatrix& scores, const LabelMatrix& labels,
                          std::span<const double> grid, Averaging averaging = Averaging::Example);

std::string to_csv(const SweepResult& sweep);

enum class FitnessKind { NegPrecision, NegPrf1, NegF1 };

std::string_view to_string(FitnessKind kind);
FitnessKind parse_fitness_kind(std::string_view text);

/// Maps a threshold vector to -P under `averaging`.
Fitness fitness_neg_precision(const ScoreMatrix& scores, const LabelMatrix& labels,
                              Averaging averaging = Averaging::Example);
/// Maps a threshold vector to -(P * R * F1).
Fitness fitness_neg_prf1(const ScoreMatrix& scores, const LabelMatrix& labels,
                         Averaging averaging = Averaging::Example);
/// Maps a threshold vector to -F1.
Fitness fitness_neg_f1(const ScoreMatrix& scores, const LabelMatrix& labels,
                       Averaging averaging = Averaging::Example);
Fitness make_fitness(FitnessKind kind, const ScoreMatrix& scores, const LabelMatrix& labels,
                     Averaging averaging = Averaging::Example);

struct GridBest {
    std::vector<double> thresholds;
    double fitness = 0.0;
    std::size_t evaluations = 0;
};

/// Best shared grid value across all `dims`, refined by cyclic coordinate
/// descent on the same grid until a full cycle changes nothing. Ties go to
/// the lowest threshold.
GridBest grid_best(const Fitness& fitness, std::size_t dims, std::span<const double> grid);

GridBest grid_best(const ScoreMatrix& scores, const LabelMatrix& labels,
                   std::span<const double> grid, FitnessKind kind,
                   Averaging averaging = Averaging::Example);

}  // namespace a2dkit
