#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "a2dkit/matrix.hpp"
#include "a2dkit/metrics.hpp"

namespace a2dkit {

/// Members are weighted by development-set F1 (any common scale: fractions
/// or percentages give the same weights).
struct EnsembleConfig {
    std::vector<std::string> member_names;
    std::vector<double> dev_f1;
    double vote_threshold = 0.5;
    /// Empty means 0.5 for every class.
    ThresholdVector decision_thresholds;

    /// Throws ConfigError on an empty member list, non-positive F1, or a vote
    /// threshold outside [0,1].
    void validate() const;
};

/// w_k = f1_k / sum(f1).
std::vector<double> normalize_weights(std::span<const double> dev_f1);

/// Cellwise (v + m) / 2 with v = sum_k w_k [p_k >= vote_threshold] and
/// m = sum_k w_k p_k. Sums are correctly rounded, so the result does not
/// depend on member order.
ScoreMatrix fuse(std::span<const ScoreMatrix> members, std::span<const double> weights,
                 double vote_threshold = 0.5);

LabelMatrix ensemble_predict(std::span<const ScoreMatrix> members, const EnsembleConfig& config);

/// F1 of one member on a held-out split, usable as its dev_f1.
double dev_f1_from_eval(const ScoreMatrix& scores, const LabelMatrix& labels,
                        const ThresholdVector& thresholds, Averaging averaging);

/// JSON ensemble file: {"members":[{"name","scores_path","dev_f1"}], "vote_threshold"}.
/// A member may give "dev_scores_path" instead of "dev_f1" when the file has a
/// top-level "dev_labels_path"; its F1 is then evaluated at 0.5.
struct EnsembleFile {
    EnsembleConfig config;
    std::vector<std::filesystem::path> scores_paths;
    std::vector<std::filesystem::path> dev_scores_paths;
    std::optional<std::filesystem::path> dev_labels_path;
    Averaging dev_averaging = Averaging::Example;
};

/// Relative paths resolve against the JSON file's directory.
EnsembleFile load_ensemble_file(const std::filesystem::path& path);

}  // namespace a2dkit
