#include "a2dkit/synth.hpp"

#include <random>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "a2dkit/csv.hpp"
#include "a2dkit/error.hpp"
#include "a2dkit/matrix_io.hpp"
#include "a2dkit/numeric.hpp"

namespace a2dkit {

void SynthSpec::validate() const
{
    if (n_samples < 1)
        throw ConfigError("synth: n_samples must be at least 1");
    if (classes.empty())
        throw ConfigError("synth: need at least one class");
    std::unordered_set<std::string> names;
    for (const auto& c : classes) {
        if (c.name.empty() || !names.insert(c.name).second)
            throw ConfigError("synth: class names must be unique and non-empty");
        if (!(c.positive_rate >= 0.0 && c.positive_rate <= 1.0))
            throw ConfigError("synth: positive_rate of '" + c.name + "' outside [0,1]");
        if (!(c.neg_high > 0.0 && c.neg_high < c.pos_low && c.pos_low < 1.0))
            throw ConfigError("synth: class '" + c.name + "' needs 0 < neg_high < pos_low < 1");
    }
}

SynthData generate(const SynthSpec& spec)
{
    spec.validate();
    const std::size_t n = spec.n_samples;
    const std::size_t k = spec.classes.size();

    std::seed_seq seq{static_cast<std::uint32_t>(spec.seed),
                      static_cast<std::uint32_t>(spec.seed >> 32), 0x53594e54u};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<std::string> ids(n);
    std::vector<double> scores(n * k);
    std::vector<std::uint8_t> labels(n * k);
    std::vector<bool> have_pos(k, false), have_neg(k, false);
    for (std::size_t i = 0; i < n; ++i) {
        ids[i] = "s" + std::to_string(i);
        for (std::size_t c = 0; c < k; ++c) {
            const auto& cls = spec.classes[c];
            const bool positive = unit(rng) < cls.positive_rate;
            const double u = unit(rng);
            double s = 0.0;
            if (positive) {
                s = have_pos[c] ? cls.pos_low + (1.0 - cls.pos_low) * u : cls.pos_low;
                have_pos[c] = true;
            } else {
                s = have_neg[c] ? cls.neg_high * u : cls.neg_high;
                have_neg[c] = true;
            }
            scores[i * k + c] = s;
            labels[i * k + c] = positive ? 1 : 0;
        }
    }

    std::vector<std::string> names;
    std::vector<ThresholdBand> bands;
    for (std::size_t c = 0; c < k; ++c) {
        const auto& cls = spec.classes[c];
        names.push_back(cls.name);
        bands.push_back({cls.name, cls.neg_high, cls.pos_low, !have_pos[c] || !have_neg[c]});
    }
    return SynthData{ScoreMatrix(ids, names, std::move(scores)),
                     LabelMatrix(ids, names, std::move(labels)), std::move(bands)};
}

SynthSpec staggered_spec(std::uint64_t seed, std::size_t n_samples, std::size_t class_count,
                         double positive_rate, std::vector<std::string> names)
{
    if (!names.empty() && names.size() != class_count)
        throw ConfigError("staggered_spec: name count does not match class count");
    SynthSpec spec;
    spec.seed = seed;
    spec.n_samples = n_samples;
    for (std::size_t c = 0; c < class_count; ++c) {
        const double shift = 0.04 * static_cast<double>(c % 6);
        spec.classes.push_back({names.empty() ? "class" + std::to_string(c) : names[c],
                                positive_rate, 0.10 + shift, 0.22 + shift});
    }
    return spec;
}

SynthSpec load_synth_spec(const std::filesystem::path& path)
{
    SynthSpec spec;
    try {
        const auto doc = nlohmann::json::parse(csv::read_file(path));
        spec.seed = doc.value("seed", std::uint64_t{42});
        spec.n_samples = doc.value("n_samples", std::size_t{200});
        for (const auto& c : doc.at("classes")) {
            SynthClass cls;
            cls.name = c.at("name").get<std::string>();
            cls.positive_rate = c.value("positive_rate", 0.3);
            cls.neg_high = c.at("neg_high").get<double>();
            cls.pos_low = c.at("pos_low").get<double>();
            spec.classes.push_back(std::move(cls));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    spec.validate();
    return spec;
}

std::string bands_to_csv(const std::vector<ThresholdBand>& bands)
{
    std::string out = "class_name,band_lo_exclusive,band_hi_inclusive\n";
    for (const auto& b : bands) {
        if (b.degenerate)
            out += "# degenerate: " + b.class_name + "\n";
        out += b.class_name + "," + format_double(b.lo_exclusive) + "," +
               format_double(b.hi_inclusive) + "\n";
    }
    return out;
}

std::vector<ThresholdBand> parse_bands(std::string_view text, const std::string& source)
{
    const auto table = csv::parse(text, source);
    csv::expect_header(table, {"class_name", "band_lo_exclusive", "band_hi_inclusive"});
    std::vector<ThresholdBand> bands;
    for (const auto& row : table.rows) {
        const auto lo = parse_double(row.fields[1]);
        const auto hi = parse_double(row.fields[2]);
        if (!lo || !hi)
            throw ParseError(csv::where(table, row) + "non-numeric band edge");
        const bool degenerate =
            text.find("# degenerate: " + row.fields[0] + "\n") != std::string_view::npos;
        bands.push_back({row.fields[0], *lo, *hi, degenerate});
    }
    return bands;
}

void write_synth(const std::filesystem::path& dir, const SynthData& data)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());
    save_scores(dir / "scores.csv", data.scores);
    save_labels(dir / "labels.csv", data.labels);
    csv::write_file(dir / "bands.csv", bands_to_csv(data.bands));
}

}  // namespace a2dkit
