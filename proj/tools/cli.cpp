#include "cli.hpp"

#include <cstdio>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "a2dkit/csv.hpp"
#include "a2dkit/detector_agg.hpp"
#include "a2dkit/ensemble.hpp"
#include "a2dkit/error.hpp"
#include "a2dkit/label_space.hpp"
#include "a2dkit/matrix_io.hpp"
#include "a2dkit/metrics.hpp"
#include "a2dkit/numeric.hpp"
#include "a2dkit/spso.hpp"
#include "a2dkit/synth.hpp"
#include "a2dkit/threshold_opt.hpp"

namespace a2dkit::cli {
namespace {

struct Options {
    std::string scores, labels, thresholds = "0.5", averaging = "example", out, label_space;
    std::uint64_t seed = 42;

    // tune / sweep
    std::string method = "pso", fitness = "negPRF1", bounds = "0.1:0.4", topology = "global", trace;
    std::size_t grid = 101, particles = 40, iters = 10, runs = 4, threads = 1;

    // ensemble
    std::string config;
    std::optional<double> vote_threshold;

    // aggregate
    std::string detections, frame_counts, class_map;
    double floor = 0.5;

    // synth
    std::string spec;
    std::size_t samples = 200, classes = 6;
    double rate = 0.3;
};

std::string fixed6(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

std::optional<LabelSpace> maybe_space(const Options& o)
{
    if (o.label_space.empty())
        return std::nullopt;
    return LabelSpace::load(o.label_space);
}

/// Scores from a score matrix or, when the header says so, a rates file.
ScoreMatrix load_score_input(const Options& o, const std::optional<LabelSpace>& space)
{
    const auto text = csv::read_file(o.scores);
    if (looks_like_rates(text))
        return parse_rates(text, o.scores).rates;
    if (space)
        return load_scores(o.scores, *space);
    return parse_scores(text, o.scores);
}

/// Truth aligned with `scores`. Frame-level pair labels are collapsed to
/// video-level actor truth when the scores are per-video actor rates.
LabelMatrix load_truth(const Options& o, const ScoreMatrix& scores,
                       const std::optional<LabelSpace>& space)
{
    auto labels = load_labels(o.labels);
    if (space && labels.class_names() == space->pair_names() &&
        scores.class_names() != labels.class_names()) {
        const auto videos = collapse_video_truth(labels, *space);
        labels = select_columns(videos, scores.class_names());
    }
    if (labels.class_names() != scores.class_names())
        throw ShapeError(o.labels + ": label columns do not match the columns of " + o.scores);
    if (labels.sample_ids() != scores.sample_ids())
        throw ShapeError(o.labels + ": sample ids do not match those of " + o.scores);
    return labels;
}

ThresholdVector load_threshold_input(const std::string& spec, const ScoreMatrix& scores)
{
    if (const auto v = parse_double(spec)) {
        if (!(*v >= 0.0 && *v <= 1.0))
            throw DomainError("threshold " + spec + " outside [0,1]");
        return ThresholdVector::uniform(scores.cols(), *v, scores.class_names());
    }
    return load_thresholds(spec, scores.class_names()).thresholds;
}

std::pair<double, double> parse_bounds(const std::string& text)
{
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw ConfigError("--bounds expects LO:HI, got '" + text + "'");
    const auto lo = parse_double(std::string_view(text).substr(0, colon));
    const auto hi = parse_double(std::string_view(text).substr(colon + 1));
    if (!lo || !hi)
        throw ConfigError("--bounds expects two numbers, got '" + text + "'");
    return {*lo, *hi};
}

int cmd_eval(const Options& o, std::ostream& out)
{
    const auto space = maybe_space(o);
    const auto scores = load_score_input(o, space);
    const auto labels = load_truth(o, scores, space);
    const auto thresholds = load_threshold_input(o.thresholds, scores);
    const auto report = evaluate(scores, labels, thresholds, parse_averaging(o.averaging));
    if (!o.out.empty())
        csv::write_file(o.out, to_csv(report));
    out << summary_line(report) << "\n";
    return 0;
}

int cmd_ensemble(const Options& o, std::ostream& out)
{
    auto file = load_ensemble_file(o.config);
    auto& cfg = file.config;
    if (o.vote_threshold)
        cfg.vote_threshold = *o.vote_threshold;

    std::vector<ScoreMatrix> members;
    for (const auto& p : file.scores_paths)
        members.push_back(load_scores(p));

    if (file.dev_labels_path) {
        const auto dev_labels = load_labels(*file.dev_labels_path);
        for (std::size_t k = 0; k < members.size(); ++k) {
            if (file.dev_scores_paths[k].empty())
                continue;
            const auto dev = load_scores(file.dev_scores_paths[k]);
            cfg.dev_f1[k] = dev_f1_from_eval(dev, dev_labels,
                                             ThresholdVector::uniform(dev.cols(), 0.5),
                                             file.dev_averaging);
        }
    }
    cfg.validate();

    const auto weights = normalize_weights(cfg.dev_f1);
    for (std::size_t k = 0; k < weights.size(); ++k)
        out << "weight " << cfg.member_names[k] << " " << fixed6(weights[k]) << "\n";

    const auto fused = fuse(members, weights, cfg.vote_threshold);
    if (o.out.empty())
        throw ConfigError("ensemble needs --out for the fused scores");
    save_scores(o.out, fused);

    if (!o.labels.empty()) {
        const auto labels = load_labels(o.labels, fused.class_names());
        const auto report = evaluate(fused, labels, load_threshold_input(o.thresholds, fused),
                                     parse_averaging(o.averaging));
        out << summary_line(report) << "\n";
    }
    return 0;
}

int cmd_tune(const Options& o, std::ostream& out)
{
    const auto space = maybe_space(o);
    const auto scores = load_score_input(o, space);
    const auto labels = load_truth(o, scores, space);
    const auto averaging = parse_averaging(o.averaging);
    if (o.out.empty())
        throw ConfigError("tune needs --out");

    if (o.method == "sweep") {
        const auto grid = uniform_grid(o.grid);
        const auto sweep = sweep_uniform(scores, labels, grid, averaging);
        csv::write_file(o.out, to_csv(sweep));
        std::size_t best = 0;
        for (std::size_t i = 1; i < sweep.rows.size(); ++i)
            if (sweep.rows[i].f1 > sweep.rows[best].f1)
                best = i;
        out << "rows=" << sweep.rows.size() << " best_threshold="
            << format_double(sweep.rows[best].threshold) << " F1="
            << format_percent(sweep.rows[best].f1) << "\n";
        return 0;
    }

    const auto kind = parse_fitness_kind(o.fitness);
    const auto fitness = make_fitness(kind, scores, labels, averaging);
    std::vector<double> best;
    double best_fitness = 0.0;
    if (o.method == "pso") {
        PsoConfig cfg;
        cfg.particles = o.particles;
        cfg.iterations = o.iters;
        cfg.runs = o.runs;
        const auto [lo, hi] = parse_bounds(o.bounds);
        cfg.bounds_lo = {lo};
        cfg.bounds_hi = {hi};
        cfg.seed = o.seed;
        cfg.topology = Topology::parse(o.topology);
        cfg.threads = o.threads;
        const auto result = spso_optimize(fitness, scores.cols(), cfg);
        if (!o.trace.empty())
            csv::write_file(o.trace, trace_to_csv(result, cfg));
        best = result.position;
        best_fitness = result.fitness;
    } else if (o.method == "grid") {
        if (o.grid < 2)
            throw ConfigError("--grid must be at least 2 for the grid method");
        const auto result = grid_best(fitness, scores.cols(), uniform_grid(o.grid));
        best = result.thresholds;
        best_fitness = result.fitness;
    } else {
        throw ConfigError("unknown method '" + o.method + "' (expected sweep, pso or grid)");
    }

    const ThresholdVector thresholds(best, scores.class_names());
    csv::write_file(o.out, to_csv(thresholds, best_fitness));
    const auto report = evaluate(scores, labels, thresholds, averaging);
    out << "fitness=" << format_double(best_fitness) << " " << summary_line(report) << "\n";
    return 0;
}

int cmd_aggregate(const Options& o, std::ostream& out)
{
    const auto counts = load_frame_counts(o.frame_counts);
    const auto log = load_detections(o.detections, &counts);
    const auto map = load_class_map(o.class_map);
    const auto rates = aggregate_rates(log, counts, map, o.floor);
    csv::write_file(o.out, to_csv(rates));
    out << "videos=" << counts.size() << " actors=" << map.actor_classes().size()
        << " detections=" << log.records.size() << "\n";
    return 0;
}

int cmd_synth(const Options& o, std::ostream& out)
{
    SynthSpec spec;
    if (!o.spec.empty()) {
        spec = load_synth_spec(o.spec);
    } else {
        spec = staggered_spec(o.seed, o.samples, o.classes, o.rate);
    }
    const auto data = generate(spec);
    write_synth(o.out, data);
    std::size_t degenerate = 0;
    for (const auto& b : data.bands)
        degenerate += b.degenerate ? 1 : 0;
    out << "samples=" << spec.n_samples << " classes=" << spec.classes.size()
        << " degenerate=" << degenerate << "\n";
    return 0;
}

int cmd_stats(const Options& o, std::ostream& out)
{
    const auto space = maybe_space(o);
    const auto labels = space ? load_labels(o.labels, *space) : load_labels(o.labels);
    const auto counts = class_distribution(labels);
    const auto pw = pos_weights(labels);
    std::string text = "class_name,positives,negatives,pos_weight\n";
    for (std::size_t c = 0; c < labels.cols(); ++c)
        text += labels.class_names()[c] + "," + std::to_string(counts[c]) + "," +
                std::to_string(labels.rows() - counts[c]) + "," + format_double(pw.weights[c]) + "\n";
    if (!o.out.empty())
        csv::write_file(o.out, text);
    else
        out << text;
    if (pw.zero_positive_classes > 0)
        out << "classes without positives: " << pw.zero_positive_classes << "\n";
    return 0;
}

int cmd_labels_check(const Options& o, std::ostream& out)
{
    const auto space = LabelSpace::load(o.label_space);
    char sum[24];
    std::snprintf(sum, sizeof sum, "%016llx", static_cast<unsigned long long>(space.checksum()));
    out << "actors=" << space.actors().size() << " actions=" << space.actions().size()
        << " pairs=" << space.class_count() << " checksum=" << sum << "\n";
    if (!o.scores.empty())
        load_scores(o.scores, space);
    if (!o.labels.empty())
        load_labels(o.labels, space);
    return 0;
}

void add_tune_options(CLI::App& c, Options& o)
{
    c.add_option("--scores", o.scores, "score matrix or per-video rates CSV")->required();
    c.add_option("--labels", o.labels, "label matrix CSV")->required();
    c.add_option("--averaging", o.averaging, "example, micro or macro");
    c.add_option("--out", o.out, "output CSV")->required();
    c.add_option("--grid", o.grid, "grid points from 0 to 1");
    c.add_option("--fitness", o.fitness, "negP, negPRF1 or negF1");
    c.add_option("--particles", o.particles);
    c.add_option("--iters", o.iters);
    c.add_option("--runs", o.runs);
    c.add_option("--bounds", o.bounds, "LO:HI");
    c.add_option("--topology", o.topology, "global or ring:K");
    c.add_option("--seed", o.seed);
    c.add_option("--threads", o.threads, "fitness evaluation threads");
    c.add_option("--trace", o.trace, "PSO trace CSV");
    c.add_option("--label-space", o.label_space, "collapse pair labels to actors");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Multi-label evaluation, ensembling and threshold tuning", "a2dkit"};
    app.require_subcommand(1);

    auto* eval = app.add_subcommand("eval", "score predictions against labels");
    eval->add_option("--scores", o.scores, "score matrix or per-video rates CSV")->required();
    eval->add_option("--labels", o.labels, "label matrix CSV")->required();
    eval->add_option("--thresholds", o.thresholds, "a number or a thresholds CSV");
    eval->add_option("--averaging", o.averaging, "example, micro or macro");
    eval->add_option("--out", o.out, "report CSV");
    eval->add_option("--label-space", o.label_space, "validate columns against a label space");

    auto* ens = app.add_subcommand("ensemble", "fuse member scores");
    ens->add_option("--config", o.config, "ensemble JSON")->required();
    ens->add_option("--out", o.out, "fused scores CSV")->required();
    ens->add_option("--vote-threshold", o.vote_threshold);
    ens->add_option("--labels", o.labels, "evaluate the fused scores");
    ens->add_option("--thresholds", o.thresholds);
    ens->add_option("--averaging", o.averaging);

    auto* tune = app.add_subcommand("tune", "optimise per-class thresholds");
    add_tune_options(*tune, o);
    tune->add_option("--method", o.method, "sweep, pso or grid");
    auto* sweep = app.add_subcommand("sweep", "uniform threshold sweep (tune --method sweep)");
    add_tune_options(*sweep, o);

    auto* agg = app.add_subcommand("aggregate", "per-video detection rates");
    agg->add_option("--detections", o.detections)->required();
    agg->add_option("--frame-counts", o.frame_counts)->required();
    agg->add_option("--class-map", o.class_map)->required();
    agg->add_option("--floor", o.floor, "confidence floor");
    agg->add_option("--out", o.out, "rates CSV")->required();

    auto* syn = app.add_subcommand("synth", "separable synthetic data with known bands");
    syn->add_option("--out", o.out, "output directory")->required();
    syn->add_option("--seed", o.seed);
    syn->add_option("--samples", o.samples);
    syn->add_option("--classes", o.classes);
    syn->add_option("--rate", o.rate, "positive rate");
    syn->add_option("--spec", o.spec, "JSON spec (overrides the staggered defaults)");

    auto* stats = app.add_subcommand("stats", "per-class positive counts and pos_weight");
    stats->add_option("--labels", o.labels)->required();
    stats->add_option("--out", o.out);
    stats->add_option("--label-space", o.label_space);

    auto* labels = app.add_subcommand("labels", "label space utilities");
    labels->require_subcommand(1);
    auto* check = labels->add_subcommand("check", "validate a label space file");
    check->add_option("--label-space", o.label_space)->required();
    check->add_option("--scores", o.scores);
    check->add_option("--labels", o.labels);

    std::vector<const char*> argv{"a2dkit"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*eval)
            return cmd_eval(o, out);
        if (*ens)
            return cmd_ensemble(o, out);
        if (*tune)
            return cmd_tune(o, out);
        if (*sweep) {
            o.method = "sweep";
            return cmd_tune(o, out);
        }
        if (*agg)
            return cmd_aggregate(o, out);
        if (*syn)
            return cmd_synth(o, out);
        if (*stats)
            return cmd_stats(o, out);
        if (*check)
            return cmd_labels_check(o, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace a2dkit::cli
