#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "a2dkit/matrix.hpp"

namespace a2dkit {

/// How per-sample / per-class outcomes are pooled into one P/R/F1 triple.
///
/// Example: per-sample set overlap, averaged over samples (the default).
/// Micro: pooled confusion counts. Macro: unweighted mean over classes.
enum class Averaging { Example, Micro, Macro };

std::string_view to_string(Averaging mode);
/// Throws ConfigError for anything but "example", "micro" or "macro".
Averaging parse_averaging(std::string_view text);

struct ClassCounts {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;

    friend bool operator==(const ClassCounts&, const ClassCounts&) = default;
};

struct ClassMetrics {
    std::string class_name;
    ClassCounts counts;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct MetricsReport {
    Averaging averaging = Averaging::Example;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t n_samples = 0;
    std::vector<ClassMetrics> per_class;
    ThresholdVector thresholds_used;
};

/// prediction = 1 iff score >= threshold.
LabelMatrix binarize(const ScoreMatrix& scores, const ThresholdVector& thresholds);

std::vector<ClassCounts> confusion_counts(const LabelMatrix& predicted, const LabelMatrix& truth);

/// Metrics of binary predictions against truth. The report's thresholds are
/// left empty.
MetricsReport evaluate_predictions(const LabelMatrix& predicted, const LabelMatrix& truth,
                                   Averaging averaging);

MetricsReport evaluate(const ScoreMatrix& scores, const LabelMatrix& truth,
                       const ThresholdVector& thresholds, Averaging averaging = Averaging::Example);

/// Summary line: "P=.. R=.. F1=.." in percent with one decimal.
std::string summary_line(const MetricsReport& report);

/// Report file: summary block then per-class block, full precision.
std::string to_csv(const MetricsReport& report);

constexpr double kBceEpsilon = 1e-7;

/// Mean binary cross-entropy over all cells with scores clamped to
/// [eps, 1-eps]. `pos_weight`, when non-empty, scales the positive term per
/// class and must be strictly positive.
double bce_loss(const ScoreMatrix& scores, const LabelMatrix& labels,
                std::span<const double> pos_weight = {});

struct PosWeights {
    std::vector<double> weights;
    /// Classes with no positive samples; their weight is 0.
    std::size_t zero_positive_classes = 0;
};

/// weight[c] = negatives / positives for class c.
PosWeights pos_weights(const LabelMatrix& labels);

std::vector<std::uint64_t> class_distribution(const LabelMatrix& labels);

}  // namespace a2dkit
