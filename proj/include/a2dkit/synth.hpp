#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "a2dkit/matrix.hpp"

namespace a2dkit {

struct SynthClass {
    std::string name;
    double positive_rate = 0.3;
    /// Negative scores are drawn from [0, neg_high].
    double neg_high = 0.2;
    /// Positive scores are drawn from [pos_low, 1].
    double pos_low = 0.8;
};

struct SynthSpec {
    std::uint64_t seed = 42;
    std::size_t n_samples = 200;
    std::vector<SynthClass> classes;

    /// Throws ConfigError unless n_samples >= 1, at least one class, names
    /// unique, positive_rate in [0,1] and 0 < neg_high < pos_low < 1.
    void validate() const;
};

/// Thresholds in (lo_exclusive, hi_inclusive] give the class F1 = 1.
struct ThresholdBand {
    std::string class_name;
    double lo_exclusive = 0.0;
    double hi_inclusive = 1.0;
    /// The class drew no positives or no negatives.
    bool degenerate = false;

    bool contains(double t) const { return t > lo_exclusive && t <= hi_inclusive; }
};

struct SynthData {
    ScoreMatrix scores;
    LabelMatrix labels;
    std::vector<ThresholdBand> bands;
};

/// Separable data with an exact optimal band per class. The first negative
/// of each class scores exactly neg_high and the first positive exactly
/// pos_low, so the band is tight on both sides.
SynthData generate(const SynthSpec& spec);

/// `class_count` classes with bands (0.10 + 0.04 j, 0.22 + 0.04 j], j = k mod 6.
SynthSpec staggered_spec(std::uint64_t seed, std::size_t n_samples, std::size_t class_count,
                         double positive_rate = 0.3, std::vector<std::string> names = {});

/// JSON: {"seed", "n_samples", "classes":[{"name","positive_rate","neg_high","pos_low"}]}.
SynthSpec load_synth_spec(const std::filesystem::path& path);

std::string bands_to_csv(const std::vector<ThresholdBand>& bands);
std::vector<ThresholdBand> parse_bands(std::string_view text, const std::string& source);

/// Writes scores.csv, labels.csv and bands.csv into `dir`.
void write_synth(const std::filesystem::path& dir, const SynthData& data);

}  // namespace a2dkit
