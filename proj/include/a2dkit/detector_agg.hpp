#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "a2dkit/label_space.hpp"
#include "a2dkit/matrix.hpp"
#include "a2dkit/matrix_io.hpp"

namespace a2dkit {

/// detector_class -> actor_class rows. A detector class may feed several
/// actor classes (e.g. person -> adult and person -> baby). Actor columns are
/// ordered by first appearance.
class ClassMap {
public:
    ClassMap() = default;
    explicit ClassMap(std::vector<std::pair<std::string, std::string>> rows);

    const std::vector<std::pair<std::string, std::string>>& rows() const { return rows_; }
    const std::vector<std::string>& actor_classes() const { return actors_; }
    /// Actor column indices fed by a detector class; empty when unmapped.
    std::vector<std::size_t> targets(std::string_view detector_class) const;

private:
    std::vector<std::pair<std::string, std::string>> rows_;
    std::vector<std::string> actors_;
};

ClassMap parse_class_map(std::string_view text, const std::string& source);
ClassMap load_class_map(const std::filesystem::path& path);

/// Per-video fraction of frames in which each actor class was detected.
struct RateMatrix {
    /// Rows are videos, columns the class map's actor classes.
    ScoreMatrix rates;
    std::vector<std::uint64_t> frame_counts;

    friend bool operator==(const RateMatrix&, const RateMatrix&) = default;
};

/// rate[v][a] = frames of v with at least one mapped detection of a at
/// confidence >= floor, divided by total_frames(v). Rows follow `counts`.
RateMatrix aggregate_rates(const DetectionLog& log, const VideoFrameCounts& counts,
                           const ClassMap& class_map, double confidence_floor = 0.5);

/// present iff rate >= threshold.
LabelMatrix presence(const RateMatrix& rates, const ThresholdVector& thresholds);

/// Video-level actor truth from frame labels keyed "video/frame". Columns are
/// the space's actors; rows follow first appearance of each video.
LabelMatrix collapse_video_truth(const LabelMatrix& frame_labels, const LabelSpace& space);

/// Keeps the named columns, in the given order.
LabelMatrix select_columns(const LabelMatrix& m, const std::vector<std::string>& names);

/// Splits "video/frame"; throws ParseError when malformed.
std::pair<std::string, std::uint64_t> split_frame_id(std::string_view sample_id);

/// Rates file: `video_id,total_frames,<actor...>`.
std::string to_csv(const RateMatrix& rates);
RateMatrix parse_rates(std::string_view text, const std::string& source);
RateMatrix load_rates(const std::filesystem::path& path);
/// True when the text starts with a rates-file header.
bool looks_like_rates(std::string_view text);

}  // namespace a2dkit
