#include "a2dkit/detector_agg.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "a2dkit/csv.hpp"
#include "a2dkit/error.hpp"
#include "a2dkit/numeric.hpp"

namespace a2dkit {

ClassMap::ClassMap(std::vector<std::pair<std::string, std::string>> rows) : rows_(std::move(rows))
{
    std::unordered_set<std::string> seen_rows;
    for (const auto& [det, actor] : rows_) {
        if (det.empty() || actor.empty())
            throw DomainError("class map entries must be non-empty");
        if (!seen_rows.insert(det + "\n" + actor).second)
            throw DomainError("duplicate class map row '" + det + "," + actor + "'");
        if (std::find(actors_.begin(), actors_.end(), actor) == actors_.end())
            actors_.push_back(actor);
    }
    if (rows_.empty())
        throw DomainError("class map is empty");
}

std::vector<std::size_t> ClassMap::targets(std::string_view detector_class) const
{
    std::vector<std::size_t> out;
    for (const auto& [det, actor] : rows_)
        if (det == detector_class)
            out.push_back(static_cast<std::size_t>(
                std::find(actors_.begin(), actors_.end(), actor) - actors_.begin()));
    return out;
}

ClassMap parse_class_map(std::string_view text, const std::string& source)
{
    const auto table = csv::parse(text, source);
    csv::expect_header(table, {"detector_class", "actor_class"});
    std::vector<std::pair<std::string, std::string>> rows;
    for (const auto& row : table.rows)
        rows.emplace_back(row.fields[0], row.fields[1]);
    try {
        return ClassMap(std::move(rows));
    } catch (const DomainError& e) {
        throw DomainError(source + ": " + e.what());
    }
}

ClassMap load_class_map(const std::filesystem::path& path)
{
    return parse_class_map(csv::read_file(path), path.string());
}

RateMatrix aggregate_rates(const DetectionLog& log, const VideoFrameCounts& counts,
                           const ClassMap& class_map, double confidence_floor)
{
    if (!(confidence_floor >= 0.0 && confidence_floor <= 1.0))
        throw DomainError("confidence floor outside [0,1]");
    const std::size_t n_actor = class_map.actor_classes().size();

    std::unordered_map<std::string, std::vector<std::size_t>> target_cache;
    // (video, actor) -> frames with at least one counted detection
    std::vector<std::unordered_set<std::uint64_t>> frames(counts.size() * n_actor);
    for (const auto& d : log.records) {
        const auto v = counts.find(d.video_id);
        if (!v)
            throw LookupError("video '" + d.video_id + "' has no frame count");
        if (d.frame_index >= counts.totals()[*v])
            throw DomainError("frame_index " + std::to_string(d.frame_index) +
                              " out of range for video '" + d.video_id + "'");
        if (d.confidence < confidence_floor)
            continue;
        auto it = target_cache.find(d.class_name);
        if (it == target_cache.end())
            it = target_cache.emplace(d.class_name, class_map.targets(d.class_name)).first;
        for (std::size_t a : it->second)
            frames[*v * n_actor + a].insert(d.frame_index);
    }

    std::vector<double> rates(counts.size() * n_actor);
    for (std::size_t v = 0; v < counts.size(); ++v)
        for (std::size_t a = 0; a < n_actor; ++a)
            rates[v * n_actor + a] = static_cast<double>(frames[v * n_actor + a].size()) /
                                     static_cast<double>(counts.totals()[v]);
    return RateMatrix{ScoreMatrix(counts.video_ids(), class_map.actor_classes(), std::move(rates)),
                      counts.totals()};
}

LabelMatrix presence(const RateMatrix& rates, const ThresholdVector& thresholds)
{
    const auto& m = rates.rates;
    if (thresholds.size() != m.cols())
        throw ShapeError("presence: " + std::to_string(thresholds.size()) + " thresholds for " +
                         std::to_string(m.cols()) + " actor classes");
    std::vector<std::uint8_t> out(m.values().size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = m.values()[i] >= thresholds[i % m.cols()] ? 1 : 0;
    return LabelMatrix(m.sample_ids(), m.class_names(), std::move(out));
}

std::pair<std::string, std::uint64_t> split_frame_id(std::string_view sample_id)
{
    const auto slash = sample_id.rfind('/');
    if (slash == std::string_view::npos || slash == 0)
        throw ParseError("sample id '" + std::string(sample_id) + "' is not 'video/frame'");
    const auto frame = parse_uint(sample_id.substr(slash + 1));
    if (!frame)
        throw ParseError("sample id '" + std::string(sample_id) + "' has a non-integer frame");
    return {std::string(sample_id.substr(0, slash)), *frame};
}

LabelMatrix collapse_video_truth(const LabelMatrix& frame_labels, const LabelSpace& space)
{
    if (frame_labels.class_names() != space.pair_names())
        throw ShapeError("collapse_video_truth: label columns do not match the label space");
    const std::size_t n_actor = space.actors().size();
    std::vector<std::string> videos;
    std::unordered_map<std::string, std::size_t> video_index;
    std::vector<std::uint8_t> present;
    for (std::size_t r = 0; r < frame_labels.rows(); ++r) {
        auto [video, frame] = split_frame_id(frame_labels.sample_ids()[r]);
        auto [it, fresh] = video_index.emplace(video, videos.size());
        if (fresh) {
            videos.push_back(video);
            present.resize(present.size() + n_actor, 0);
        }
        const auto row = frame_labels.row(r);
        for (std::size_t c = 0; c < row.size(); ++c)
            if (row[c])
                present[it->second * n_actor + space.pairs()[c].actor] = 1;
    }
    return LabelMatrix(std::move(videos), space.actors(), std::move(present));
}

LabelMatrix select_columns(const LabelMatrix& m, const std::vector<std::string>& names)
{
    std::vector<std::size_t> cols;
    for (const auto& name : names) {
        const auto it = std::find(m.class_names().begin(), m.class_names().end(), name);
        if (it == m.class_names().end())
            throw LookupError("no column named '" + name + "'");
        cols.push_back(static_cast<std::size_t>(it - m.class_names().begin()));
    }
    std::vector<std::uint8_t> out;
    out.reserve(m.rows() * cols.size());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c : cols)
            out.push_back(m(r, c));
    return LabelMatrix(m.sample_ids(), names, std::move(out), 0);
}

std::string to_csv(const RateMatrix& rates)
{
    const auto& m = rates.rates;
    std::string out = "video_id,total_frames";
    for (const auto& name : m.class_names())
        out += "," + name;
    out += "\n";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out += m.sample_ids()[r] + "," + std::to_string(rates.frame_counts[r]);
        for (double v : m.row(r))
            out += "," + format_double(v);
        out += "\n";
    }
    return out;
}

bool looks_like_rates(std::string_view text)
{
    return text.starts_with("video_id,total_frames");
}

RateMatrix parse_rates(std::string_view text, const std::string& source)
{
    const auto table = csv::parse(text, source);
    if (table.header.size() < 2 || table.header[0] != "video_id" || table.header[1] != "total_frames")
        throw ParseError(source + ": rates header must start with 'video_id,total_frames'");
    std::vector<std::string> columns(table.header.begin() + 2, table.header.end());
    std::vector<std::string> ids;
    std::vector<std::uint64_t> totals;
    std::vector<double> values;
    for (const auto& row : table.rows) {
        const auto at = csv::where(table, row);
        const auto total = parse_uint(row.fields[1]);
        if (!total || *total < 1)
            throw ParseError(at + "total_frames must be a positive integer");
        for (std::size_t c = 2; c < row.fields.size(); ++c) {
            const auto v = parse_double(row.fields[c]);
            if (!v)
                throw ParseError(at + "column '" + columns[c - 2] + "': non-numeric cell '" +
                                 row.fields[c] + "'");
            if (!(*v >= 0.0 && *v <= 1.0))
                throw DomainError(at + "column '" + columns[c - 2] + "': rate outside [0,1]");
            values.push_back(*v);
        }
        ids.push_back(row.fields[0]);
        totals.push_back(*total);
    }
    return RateMatrix{ScoreMatrix(std::move(ids), std::move(columns), std::move(values)),
                      std::move(totals)};
}

RateMatrix load_rates(const std::filesystem::path& path)
{
    return parse_rates(csv::read_file(path), path.string());
}

}  // namespace a2dkit
