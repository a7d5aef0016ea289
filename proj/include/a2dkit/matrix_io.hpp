#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "a2dkit/label_space.hpp"
#include "a2dkit/matrix.hpp"

namespace a2dkit {

/// One detector hit on one frame.
struct Detection {
    std::string video_id;
    std::uint64_t frame_index = 0;
    std::string class_name;
    double confidence = 0.0;

    friend bool operator==(const Detection&, const Detection&) = default;
};

struct DetectionLog {
    std::vector<Detection> records;
};

/// video_id -> total frame count, in file order.
class VideoFrameCounts {
public:
    VideoFrameCounts() = default;
    VideoFrameCounts(std::vector<std::string> video_ids, std::vector<std::uint64_t> totals);

    std::size_t size() const { return video_ids_.size(); }
    const std::vector<std::string>& video_ids() const { return video_ids_; }
    const std::vector<std::uint64_t>& totals() const { return totals_; }
    std::optional<std::size_t> find(std::string_view video_id) const;

private:
    std::vector<std::string> video_ids_;
    std::vector<std::uint64_t> totals_;
    std::unordered_map<std::string, std::size_t> index_;
};

// Score / label matrices. The bound overloads require the header to list the
// space's pair names exactly and in order; the column overloads require the
// given names; the bare overloads take columns from the header.
ScoreMatrix parse_scores(std::string_view text, const std::string& source,
                         const std::vector<std::string>* expected_columns = nullptr,
                         std::uint64_t space_checksum = 0);
ScoreMatrix load_scores(const std::filesystem::path& path, const LabelSpace& space);
ScoreMatrix load_scores(const std::filesystem::path& path, const std::vector<std::string>& columns);
ScoreMatrix load_scores(const std::filesystem::path& path);

LabelMatrix parse_labels(std::string_view text, const std::string& source,
                         const std::vector<std::string>* expected_columns = nullptr,
                         std::uint64_t space_checksum = 0);
LabelMatrix load_labels(const std::filesystem::path& path, const LabelSpace& space);
LabelMatrix load_labels(const std::filesystem::path& path, const std::vector<std::string>& columns);
LabelMatrix load_labels(const std::filesystem::path& path);

std::string to_csv(const ScoreMatrix& m);
std::string to_csv(const LabelMatrix& m);
void save_scores(const std::filesystem::path& path, const ScoreMatrix& m);
void save_labels(const std::filesystem::path& path, const LabelMatrix& m);

/// When `counts` is given, every record's video must be listed there and its
/// frame index must be below the video's total.
DetectionLog parse_detections(std::string_view text, const std::string& source,
                              const VideoFrameCounts* counts = nullptr);
DetectionLog load_detections(const std::filesystem::path& path,
                             const VideoFrameCounts* counts = nullptr);
VideoFrameCounts parse_frame_counts(std::string_view text, const std::string& source);
VideoFrameCounts load_frame_counts(const std::filesystem::path& path);

std::string to_csv(const DetectionLog& log);
std::string to_csv(const VideoFrameCounts& counts);

/// `class_name,threshold` rows, optionally followed by `# fitness=<value>`.
struct ThresholdFile {
    ThresholdVector thresholds;
    std::optional<double> fitness;
};

ThresholdFile parse_thresholds(std::string_view text, const std::string& source,
                               const std::vector<std::string>& expected_columns);
ThresholdFile load_thresholds(const std::filesystem::path& path,
                              const std::vector<std::string>& expected_columns);
std::string to_csv(const ThresholdVector& t, std::optional<double> fitness = std::nullopt);

}  // namespace a2dkit
