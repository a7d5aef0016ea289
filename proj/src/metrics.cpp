#include "a2dkit/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "a2dkit/error.hpp"
#include "a2dkit/numeric.hpp"

namespace a2dkit {

namespace {

struct Prf {
    double p = 0.0;
    double r = 0.0;
    double f1 = 0.0;
};

double harmonic(double p, double r)
{
    return (p + r) > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
}

// Counts-based P/R/F1 with the shared degenerate rules: nothing predicted and
// nothing true scores 1; otherwise an empty denominator scores 0.
Prf from_counts(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn)
{
    if (tp + fp + fn == 0)
        return {1.0, 1.0, 1.0};
    Prf m;
    m.p = (tp + fp) > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
    m.r = (tp + fn) > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
    m.f1 = harmonic(m.p, m.r);
    return m;
}

}  // namespace

std::string_view to_string(Averaging mode)
{
    switch (mode) {
    case Averaging::Example:
        return "example";
    case Averaging::Micro:
        return "micro";
    case Averaging::Macro:
        return "macro";
    }
    return "example";
}

Averaging parse_averaging(std::string_view text)
{
    if (text == "example")
        return Averaging::Example;
    if (text == "micro")
        return Averaging::Micro;
    if (text == "macro")
        return Averaging::Macro;
    throw ConfigError("unknown averaging mode '" + std::string(text) +
                      "' (expected example, micro or macro)");
}

LabelMatrix binarize(const ScoreMatrix& scores, const ThresholdVector& thresholds)
{
    if (thresholds.size() != scores.cols())
        throw ShapeError("binarize: " + std::to_string(thresholds.size()) + " thresholds for " +
                         std::to_string(scores.cols()) + " classes");
    const std::size_t c = scores.cols();
    std::vector<std::uint8_t> pred(scores.values().size());
    for (std::size_t i = 0; i < pred.size(); ++i)
        pred[i] = scores.values()[i] >= thresholds[i % c] ? 1 : 0;
    return LabelMatrix(scores.sample_ids(), scores.class_names(), std::move(pred),
                       scores.space_checksum());
}

std::vector<ClassCounts> confusion_counts(const LabelMatrix& predicted, const LabelMatrix& truth)
{
    require_same_layout(predicted, truth, "confusion_counts");
    std::vector<ClassCounts> counts(truth.cols());
    for (std::size_t r = 0; r < truth.rows(); ++r) {
        const auto p = predicted.row(r);
        const auto t = truth.row(r);
        for (std::size_t c = 0; c < truth.cols(); ++c) {
            if (p[c] && t[c])
                ++counts[c].tp;
            else if (p[c])
                ++counts[c].fp;
            else if (t[c])
                ++counts[c].fn;
        }
    }
    return counts;
}

MetricsReport evaluate_predictions(const LabelMatrix& predicted, const LabelMatrix& truth,
                                   Averaging averaging)
{
    const auto counts = confusion_counts(predicted, truth);

    MetricsReport report;
    report.averaging = averaging;
    report.n_samples = truth.rows();
    report.per_class.reserve(counts.size());
    for (std::size_t c = 0; c < counts.size(); ++c) {
        const auto m = from_counts(counts[c].tp, counts[c].fp, counts[c].fn);
        report.per_class.push_back({truth.class_names()[c], counts[c], m.p, m.r, m.f1});
    }

    switch (averaging) {
    case Averaging::Example: {
        if (truth.rows() == 0) {
            report.precision = report.recall = report.f1 = 1.0;
            break;
        }
        ExactSum sp, sr, sf;
        for (std::size_t r = 0; r < truth.rows(); ++r) {
            const auto p = predicted.row(r);
            const auto t = truth.row(r);
            std::uint64_t n_pred = 0, n_true = 0, n_both = 0;
            for (std::size_t c = 0; c < truth.cols(); ++c) {
                n_pred += p[c];
                n_true += t[c];
                n_both += p[c] & t[c];
            }
            if (n_pred == 0 && n_true == 0) {
                sp += 1.0;
                sr += 1.0;
                sf += 1.0;
            } else if (n_pred > 0 && n_true > 0) {
                const double prec = static_cast<double>(n_both) / static_cast<double>(n_pred);
                const double rec = static_cast<double>(n_both) / static_cast<double>(n_true);
                sp += prec;
                sr += rec;
                sf += harmonic(prec, rec);
            }
        }
        const double n = static_cast<double>(truth.rows());
        report.precision = sp.value() / n;
        report.recall = sr.value() / n;
        report.f1 = sf.value() / n;
        break;
    }
    case Averaging::Micro: {
        ClassCounts total;
        for (const auto& k : counts) {
            total.tp += k.tp;
            total.fp += k.fp;
            total.fn += k.fn;
        }
        const auto m = from_counts(total.tp, total.fp, total.fn);
        report.precision = m.p;
        report.recall = m.r;
        report.f1 = m.f1;
        break;
    }
    case Averaging::Macro: {
        ExactSum sp, sr, sf;
        std::size_t used = 0;
        for (const auto& pc : report.per_class) {
            const auto& k = pc.counts;
            if (k.tp + k.fp + k.fn == 0)
                continue;  // class absent and never predicted
            sp += pc.precision;
            sr += pc.recall;
            sf += pc.f1;
            ++used;
        }
        if (used == 0) {
            report.precision = report.recall = report.f1 = 1.0;
        } else {
            const double n = static_cast<double>(used);
            report.precision = sp.value() / n;
            report.recall = sr.value() / n;
            report.f1 = sf.value() / n;
        }
        break;
    }
    }
    return report;
}

MetricsReport evaluate(const ScoreMatrix& scores, const LabelMatrix& truth,
                       const ThresholdVector& thresholds, Averaging averaging)
{
    require_same_layout(scores, truth, "evaluate");
    auto report = evaluate_predictions(binarize(scores, thresholds), truth, averaging);
    report.thresholds_used = thresholds;
    return report;
}

std::string summary_line(const MetricsReport& report)
{
    return "P=" + format_percent(report.precision) + " R=" + format_percent(report.recall) +
           " F1=" + format_percent(report.f1);
}

std::string to_csv(const MetricsReport& report)
{
    std::string out = "averaging,precision,recall,f1,n_samples\n";
    out += std::string(to_string(report.averaging)) + "," + format_double(report.precision) + "," +
           format_double(report.recall) + "," + format_double(report.f1) + "," +
           std::to_string(report.n_samples) + "\n";
    out += "class_name,tp,fp,fn,precision,recall,f1\n";
    for (const auto& pc : report.per_class)
        out += pc.class_name + "," + std::to_string(pc.counts.tp) + "," +
               std::to_string(pc.counts.fp) + "," + std::to_string(pc.counts.fn) + "," +
               format_double(pc.precision) + "," + format_double(pc.recall) + "," +
               format_double(pc.f1) + "\n";
    return out;
}

double bce_loss(const ScoreMatrix& scores, const LabelMatrix& labels,
                std::span<const double> pos_weight)
{
    require_same_layout(scores, labels, "bce_loss");
    const std::size_t c = scores.cols();
    if (!pos_weight.empty()) {
        if (pos_weight.size() != c)
            throw ShapeError("bce_loss: " + std::to_string(pos_weight.size()) +
                             " pos weights for " + std::to_string(c) + " classes");
        const auto positives = class_distribution(labels);
        for (std::size_t k = 0; k < c; ++k) {
            // A zero weight is the pos_weights() sentinel for a class with no
            // positives, where the weighted term is identically zero.
            const bool sentinel = pos_weight[k] == 0.0 && positives[k] == 0;
            if (!(pos_weight[k] > 0.0) && !sentinel)
                throw DomainError("bce_loss: pos_weight for class '" + scores.class_names()[k] +
                                  "' must be positive");
        }
    }
    if (scores.values().empty())
        return 0.0;

    ExactSum total;
    for (std::size_t i = 0; i < scores.values().size(); ++i) {
        const double p = std::clamp(scores.values()[i], kBceEpsilon, 1.0 - kBceEpsilon);
        if (labels.values()[i]) {
            const double w = pos_weight.empty() ? 1.0 : pos_weight[i % c];
            total += -w * std::log(p);
        } else {
            total += -std::log1p(-p);
        }
    }
    return total.value() / static_cast<double>(scores.values().size());
}

PosWeights pos_weights(const LabelMatrix& labels)
{
    if (labels.rows() == 0)
        throw DomainError("pos_weights: label matrix has no samples");
    const auto positives = class_distribution(labels);
    PosWeights out;
    out.weights.reserve(positives.size());
    for (auto pos : positives) {
        if (pos == 0) {
            out.weights.push_back(0.0);
            ++out.zero_positive_classes;
        } else {
            const auto neg = labels.rows() - pos;
            out.weights.push_back(static_cast<double>(neg) / static_cast<double>(pos));
        }
    }
    return out;
}

std::vector<std::uint64_t> class_distribution(const LabelMatrix& labels)
{
    std::vector<std::uint64_t> counts(labels.cols(), 0);
    for (std::size_t r = 0; r < labels.rows(); ++r) {
        const auto row = labels.row(r);
        for (std::size_t c = 0; c < labels.cols(); ++c)
            counts[c] += row[c];
    }
    return counts;
}

}  // namespace a2dkit
