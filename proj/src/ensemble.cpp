#include "a2dkit/ensemble.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "a2dkit/csv.hpp"
#include "a2dkit/error.hpp"
#include "a2dkit/numeric.hpp"

namespace a2dkit {

void EnsembleConfig::validate() const
{
    if (member_names.empty())
        throw ConfigError("ensemble needs at least one member");
    if (dev_f1.size() != member_names.size())
        throw ConfigError("ensemble: " + std::to_string(dev_f1.size()) + " F1 values for " +
                          std::to_string(member_names.size()) + " members");
    for (std::size_t k = 0; k < dev_f1.size(); ++k)
        if (!(dev_f1[k] > 0.0) || !std::isfinite(dev_f1[k]))
            throw ConfigError("ensemble member '" + member_names[k] + "' has non-positive dev_f1");
    if (!(vote_threshold >= 0.0 && vote_threshold <= 1.0))
        throw ConfigError("vote_threshold must lie in [0,1]");
}

std::vector<double> normalize_weights(std::span<const double> dev_f1)
{
    if (dev_f1.empty())
        throw ConfigError("normalize_weights: empty F1 list");
    for (double f : dev_f1)
        if (!(f > 0.0) || !std::isfinite(f))
            throw DomainError("normalize_weights: F1 values must be positive and finite");
    const double total = exact_sum(dev_f1);
    std::vector<double> w;
    w.reserve(dev_f1.size());
    for (double f : dev_f1)
        w.push_back(f / total);
    return w;
}

ScoreMatrix fuse(std::span<const ScoreMatrix> members, std::span<const double> weights,
                 double vote_threshold)
{
    if (members.empty())
        throw ShapeError("fuse: no members");
    if (weights.size() != members.size())
        throw ShapeError("fuse: " + std::to_string(weights.size()) + " weights for " +
                         std::to_string(members.size()) + " members");
    for (double w : weights)
        if (!(w >= 0.0) || !std::isfinite(w))
            throw DomainError("fuse: weights must be non-negative");
    if (std::fabs(exact_sum(weights) - 1.0) > 1e-9)
        throw DomainError("fuse: weights must sum to 1");
    if (!(vote_threshold >= 0.0 && vote_threshold <= 1.0))
        throw DomainError("fuse: vote_threshold outside [0,1]");
    for (std::size_t k = 1; k < members.size(); ++k)
        require_same_layout(members[0], members[k], "fuse");

    const auto& first = members[0];
    std::vector<double> out(first.values().size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        ExactSum vote, mean;
        for (std::size_t k = 0; k < members.size(); ++k) {
            const double p = members[k].values()[i];
            if (p >= vote_threshold)
                vote += weights[k];
            mean += weights[k] * p;
        }
        // Rounding in the weight sum can push a cell a hair past 1.
        out[i] = std::min(1.0, (vote.value() + mean.value()) / 2.0);
    }
    return ScoreMatrix(first.sample_ids(), first.class_names(), std::move(out),
                       first.space_checksum());
}

LabelMatrix ensemble_predict(std::span<const ScoreMatrix> members, const EnsembleConfig& config)
{
    config.validate();
    if (members.size() != config.member_names.size())
        throw ShapeError("ensemble_predict: " + std::to_string(members.size()) +
                         " score matrices for " + std::to_string(config.member_names.size()) +
                         " members");
    const auto fused = fuse(members, normalize_weights(config.dev_f1), config.vote_threshold);
    const auto thresholds = config.decision_thresholds.size() == 0
                                ? ThresholdVector::uniform(fused.cols(), 0.5, fused.class_names())
                                : config.decision_thresholds;
    return binarize(fused, thresholds);
}

double dev_f1_from_eval(const ScoreMatrix& scores, const LabelMatrix& labels,
                        const ThresholdVector& thresholds, Averaging averaging)
{
    return evaluate(scores, labels, thresholds, averaging).f1;
}

EnsembleFile load_ensemble_file(const std::filesystem::path& path)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(csv::read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    const auto base = path.parent_path();
    const auto resolve = [&](const std::string& p) {
        const std::filesystem::path fp(p);
        return fp.is_absolute() ? fp : base / fp;
    };

    EnsembleFile file;
    try {
        if (!doc.is_object() || !doc.contains("members") || !doc["members"].is_array())
            throw ConfigError(path.string() + ": expected an object with a 'members' array");
        if (doc.contains("vote_threshold"))
            file.config.vote_threshold = doc["vote_threshold"].get<double>();
        if (doc.contains("dev_labels_path"))
            file.dev_labels_path = resolve(doc["dev_labels_path"].get<std::string>());
        if (doc.contains("dev_averaging"))
            file.dev_averaging = parse_averaging(doc["dev_averaging"].get<std::string>());
        for (const auto& m : doc["members"]) {
            file.config.member_names.push_back(m.at("name").get<std::string>());
            file.scores_paths.push_back(resolve(m.at("scores_path").get<std::string>()));
            if (m.contains("dev_f1")) {
                file.config.dev_f1.push_back(m["dev_f1"].get<double>());
                file.dev_scores_paths.emplace_back();
            } else if (m.contains("dev_scores_path") && file.dev_labels_path) {
                file.config.dev_f1.push_back(0.0);  // filled in by the caller after evaluation
                file.dev_scores_paths.push_back(resolve(m["dev_scores_path"].get<std::string>()));
            } else {
                throw ConfigError(path.string() + ": member '" + file.config.member_names.back() +
                                  "' needs dev_f1, or dev_scores_path with a top-level dev_labels_path");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    if (file.config.member_names.empty())
        throw ConfigError(path.string() + ": ensemble needs at least one member");
    return file;
}

}  // namespace a2dkit
