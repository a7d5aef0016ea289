#include "a2dkit/matrix_io.hpp"

#include "a2dkit/csv.hpp"
#include "a2dkit/error.hpp"
#include "a2dkit/numeric.hpp"

namespace a2dkit {

VideoFrameCounts::VideoFrameCounts(std::vector<std::string> video_ids,
                                   std::vector<std::uint64_t> totals)
    : video_ids_(std::move(video_ids)), totals_(std::move(totals))
{
    if (video_ids_.size() != totals_.size())
        throw ShapeError("frame counts: id and total lists differ in length");
    for (std::size_t i = 0; i < video_ids_.size(); ++i) {
        if (totals_[i] < 1)
            throw DomainError("video '" + video_ids_[i] + "' has no frames");
        if (!index_.emplace(video_ids_[i], i).second)
            throw DomainError("duplicate video_id '" + video_ids_[i] + "'");
    }
}

std::optional<std::size_t> VideoFrameCounts::find(std::string_view video_id) const
{
    const auto it = index_.find(std::string(video_id));
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

namespace {

template <typename Domain, typename CellParser>
SampleMatrix<Domain> matrix_from_table(const csv::Table& table,
                                       const std::vector<std::string>* expected_columns,
                                       std::uint64_t checksum, CellParser parse_cell)
{
    if (table.header.empty() || table.header.front() != "sample_id")
        throw ParseError(table.source + ": first header column must be 'sample_id'");
    std::vector<std::string> columns(table.header.begin() + 1, table.header.end());
    if (expected_columns) {
        std::vector<std::string> expected{"sample_id"};
        expected.insert(expected.end(), expected_columns->begin(), expected_columns->end());
        csv::expect_header(table, expected);
    }

    std::vector<std::string> ids;
    std::vector<typename Domain::value_type> values;
    ids.reserve(table.rows.size());
    values.reserve(table.rows.size() * columns.size());
    std::unordered_map<std::string, std::size_t> seen;
    for (const auto& row : table.rows) {
        const std::string& id = row.fields[0];
        if (id.empty())
            throw ParseError(csv::where(table, row) + "empty sample_id");
        if (auto [it, fresh] = seen.emplace(id, row.line); !fresh)
            throw DomainError(csv::where(table, row) + "duplicate sample_id '" + id +
                              "' (first on line " + std::to_string(it->second) + ")");
        for (std::size_t c = 0; c < columns.size(); ++c)
            values.push_back(parse_cell(row.fields[c + 1], [&] {
                return csv::where(table, row) + "sample '" + id + "', column '" + columns[c] + "': ";
            }));
        ids.push_back(id);
    }
    return SampleMatrix<Domain>(std::move(ids), std::move(columns), std::move(values), checksum);
}

template <typename Where>
double score_cell(const std::string& text, Where where)
{
    const auto v = parse_double(text);
    if (!v)
        throw ParseError(where() + "non-numeric cell '" + text + "'");
    if (!(*v >= 0.0 && *v <= 1.0))
        throw DomainError(where() + "value " + text + " outside [0,1]");
    return *v;
}

template <typename Where>
std::uint8_t label_cell(const std::string& text, Where where)
{
    const auto v = parse_double(text);
    if (!v)
        throw ParseError(where() + "non-numeric cell '" + text + "'");
    if (*v != 0.0 && *v != 1.0)
        throw DomainError(where() + "value " + text + " not in {0,1}");
    return *v == 1.0 ? 1 : 0;
}

template <typename Domain, typename CellFormatter>
std::string matrix_to_csv(const SampleMatrix<Domain>& m, CellFormatter fmt)
{
    std::string out = "sample_id";
    for (const auto& name : m.class_names())
        out += "," + name;
    out += "\n";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out += m.sample_ids()[r];
        for (auto v : m.row(r)) {
            out += ',';
            out += fmt(v);
        }
        out += "\n";
    }
    return out;
}

}  // namespace

ScoreMatrix parse_scores(std::string_view text, const std::string& source,
                         const std::vector<std::string>* expected_columns, std::uint64_t checksum)
{
    return matrix_from_table<detail::UnitInterval>(csv::parse(text, source), expected_columns,
                                                   checksum, [](const std::string& t, auto w) {
                                                       return score_cell(t, w);
                                                   });
}

ScoreMatrix load_scores(const std::filesystem::path& path, const LabelSpace& space)
{
    return parse_scores(csv::read_file(path), path.string(), &space.pair_names(), space.checksum());
}

ScoreMatrix load_scores(const std::filesystem::path& path, const std::vector<std::string>& columns)
{
    return parse_scores(csv::read_file(path), path.string(), &columns);
}

ScoreMatrix load_scores(const std::filesystem::path& path)
{
    return parse_scores(csv::read_file(path), path.string());
}

LabelMatrix parse_labels(std::string_view text, const std::string& source,
                         const std::vector<std::string>* expected_columns, std::uint64_t checksum)
{
    return matrix_from_table<detail::Binary>(csv::parse(text, source), expected_columns, checksum,
                                             [](const std::string& t, auto w) {
                                                 return label_cell(t, w);
                                             });
}

LabelMatrix load_labels(const std::filesystem::path& path, const LabelSpace& space)
{
    return parse_labels(csv::read_file(path), path.string(), &space.pair_names(), space.checksum());
}

LabelMatrix load_labels(const std::filesystem::path& path, const std::vector<std::string>& columns)
{
    return parse_labels(csv::read_file(path), path.string(), &columns);
}

LabelMatrix load_labels(const std::filesystem::path& path)
{
    return parse_labels(csv::read_file(path), path.string());
}

std::string to_csv(const ScoreMatrix& m)
{
    return matrix_to_csv(m, [](double v) { return format_double(v); });
}

std::string to_csv(const LabelMatrix& m)
{
    return matrix_to_csv(m, [](std::uint8_t v) { return std::string(v ? "1" : "0"); });
}

void save_scores(const std::filesystem::path& path, const ScoreMatrix& m)
{
    csv::write_file(path, to_csv(m));
}

void save_labels(const std::filesystem::path& path, const LabelMatrix& m)
{
    csv::write_file(path, to_csv(m));
}

DetectionLog parse_detections(std::string_view text, const std::string& source,
                              const VideoFrameCounts* counts)
{
    const auto table = csv::parse(text, source);
    csv::expect_header(table, {"video_id", "frame_index", "class_name", "confidence"});
    DetectionLog log;
    log.records.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        const auto at = csv::where(table, row);
        Detection d;
        d.video_id = row.fields[0];
        d.class_name = row.fields[2];
        if (d.video_id.empty() || d.class_name.empty())
            throw ParseError(at + "empty video_id or class_name");
        if (!row.fields[1].empty() && row.fields[1].front() == '-')
            throw DomainError(at + "negative frame index " + row.fields[1]);
        const auto frame = parse_uint(row.fields[1]);
        if (!frame)
            throw ParseError(at + "frame_index '" + row.fields[1] + "' is not a non-negative integer");
        d.frame_index = *frame;
        const auto conf = parse_double(row.fields[3]);
        if (!conf)
            throw ParseError(at + "non-numeric confidence '" + row.fields[3] + "'");
        if (!(*conf >= 0.0 && *conf <= 1.0))
            throw DomainError(at + "confidence " + row.fields[3] + " outside [0,1]");
        d.confidence = *conf;
        if (counts) {
            const auto v = counts->find(d.video_id);
            if (!v)
                throw LookupError(at + "video '" + d.video_id + "' has no frame count");
            const auto total = counts->totals()[*v];
            if (d.frame_index >= total)
                throw DomainError(at + "frame_index " + std::to_string(d.frame_index) +
                                  " out of range for video '" + d.video_id + "' with " +
                                  std::to_string(total) + " frames");
        }
        log.records.push_back(std::move(d));
    }
    return log;
}

DetectionLog load_detections(const std::filesystem::path& path, const VideoFrameCounts* counts)
{
    return parse_detections(csv::read_file(path), path.string(), counts);
}

VideoFrameCounts parse_frame_counts(std::string_view text, const std::string& source)
{
    const auto table = csv::parse(text, source);
    csv::expect_header(table, {"video_id", "total_frames"});
    std::vector<std::string> ids;
    std::vector<std::uint64_t> totals;
    std::unordered_map<std::string, std::size_t> seen;
    for (const auto& row : table.rows) {
        const auto at = csv::where(table, row);
        if (row.fields[0].empty())
            throw ParseError(at + "empty video_id");
        const auto total = parse_uint(row.fields[1]);
        if (!total)
            throw ParseError(at + "total_frames '" + row.fields[1] + "' is not a positive integer");
        if (*total < 1)
            throw DomainError(at + "total_frames must be at least 1");
        if (!seen.emplace(row.fields[0], row.line).second)
            throw DomainError(at + "duplicate video_id '" + row.fields[0] + "'");
        ids.push_back(row.fields[0]);
        totals.push_back(*total);
    }
    return VideoFrameCounts(std::move(ids), std::move(totals));
}

VideoFrameCounts load_frame_counts(const std::filesystem::path& path)
{
    return parse_frame_counts(csv::read_file(path), path.string());
}

std::string to_csv(const DetectionLog& log)
{
    std::string out = "video_id,frame_index,class_name,confidence\n";
    for (const auto& d : log.records)
        out += d.video_id + "," + std::to_string(d.frame_index) + "," + d.class_name + "," +
               format_double(d.confidence) + "\n";
    return out;
}

std::string to_csv(const VideoFrameCounts& counts)
{
    std::string out = "video_id,total_frames\n";
    for (std::size_t i = 0; i < counts.size(); ++i)
        out += counts.video_ids()[i] + "," + std::to_string(counts.totals()[i]) + "\n";
    return out;
}

ThresholdFile parse_thresholds(std::string_view text, const std::string& source,
                               const std::vector<std::string>& expected_columns)
{
    const auto table = csv::parse(text, source);
    csv::expect_header(table, {"class_name", "threshold"});
    if (table.rows.size() != expected_columns.size())
        throw ShapeError(source + ": expected " + std::to_string(expected_columns.size()) +
                         " thresholds, found " + std::to_string(table.rows.size()));
    std::vector<double> values;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        if (row.fields[0] != expected_columns[i])
            throw ShapeError(csv::where(table, row) + "expected class '" + expected_columns[i] +
                             "', found '" + row.fields[0] + "'");
        const auto v = parse_double(row.fields[1]);
        if (!v)
            throw ParseError(csv::where(table, row) + "non-numeric threshold '" + row.fields[1] + "'");
        if (!(*v >= 0.0 && *v <= 1.0))
            throw DomainError(csv::where(table, row) + "threshold " + row.fields[1] +
                              " outside [0,1]");
        values.push_back(*v);
    }

    ThresholdFile result{ThresholdVector(std::move(values), expected_columns), std::nullopt};
    constexpr std::string_view tag = "# fitness=";
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos)
            eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (line.starts_with(tag)) {
            const auto f = parse_double(line.substr(tag.size()));
            if (!f)
                throw ParseError(source + ": bad fitness comment '" + std::string(line) + "'");
            result.fitness = *f;
        }
    }
    return result;
}

ThresholdFile load_thresholds(const std::filesystem::path& path,
                              const std::vector<std::string>& expected_columns)
{
    return parse_thresholds(csv::read_file(path), path.string(), expected_columns);
}

std::string to_csv(const ThresholdVector& t, std::optional<double> fitness)
{
    std::string out = "class_name,threshold\n";
    for (std::size_t i = 0; i < t.size(); ++i) {
        const std::string name = t.class_names().empty() ? "class" + std::to_string(i)
                                                         : t.class_names()[i];
        out += name + "," + format_double(t[i]) + "\n";
    }
    if (fitness)
        out += "# fitness=" + format_double(*fitness) + "\n";
    return out;
}

}  // namespace a2dkit
