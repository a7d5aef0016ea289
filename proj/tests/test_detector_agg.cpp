#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>

#include "a2dkit/detector_agg.hpp"
#include "a2dkit/error.hpp"
#include "support.hpp"

using namespace a2dkit;

namespace {

const ClassMap& coco_map()
{
    static const ClassMap map({{"person", "adult"},
                               {"person", "baby"},
                               {"bird", "bird"},
                               {"cat", "cat"},
                               {"dog", "dog"},
                               {"car", "car"},
                               {"sports ball", "ball"}});
    return map;
}

std::size_t column(const RateMatrix& r, const std::string& name)
{
    const auto& n = r.rates.class_names();
    return static_cast<std::size_t>(std::find(n.begin(), n.end(), name) - n.begin());
}

}  // namespace

TEST_CASE("bird on 30 of 100 frames gives rate 0.30")
{
    DetectionLog log;
    for (std::uint64_t f = 0; f < 30; ++f)
        log.records.push_back({"v", f * 3, "bird", 0.8});
    const VideoFrameCounts counts({"v"}, {100});
    const auto r = aggregate_rates(log, counts, coco_map());
    CHECK(r.rates(0, column(r, "bird")) == 0.3);
    CHECK(r.rates(0, column(r, "adult")) == 0.0);
    CHECK(r.frame_counts == std::vector<std::uint64_t>{100});
}

TEST_CASE("video without detections has all rates 0")
{
    const VideoFrameCounts counts({"a", "b"}, {10, 20});
    DetectionLog log;
    log.records.push_back({"a", 0, "dog", 0.9});
    const auto r = aggregate_rates(log, counts, coco_map());
    for (double v : r.rates.row(1))
        CHECK(v == 0.0);
    CHECK(r.rates.sample_ids() == std::vector<std::string>{"a", "b"});
}

TEST_CASE("confidence floor")
{
    const VideoFrameCounts counts({"v"}, {4});
    DetectionLog log;
    log.records.push_back({"v", 0, "cat", 0.45});
    log.records.push_back({"v", 1, "cat", 0.5});
    const auto r = aggregate_rates(log, counts, coco_map());
    CHECK(r.rates(0, column(r, "cat")) == 0.25);
    CHECK(aggregate_rates(log, counts, coco_map(), 0.4).rates(0, column(r, "cat")) == 0.5);
    CHECK_THROWS_AS(aggregate_rates(log, counts, coco_map(), 1.5), DomainError);
}

TEST_CASE("several detections on one frame count the frame once")
{
    const VideoFrameCounts counts({"v"}, {5});
    DetectionLog log;
    for (int i = 0; i < 4; ++i)
        log.records.push_back({"v", 2, "dog", 0.9});
    const auto r = aggregate_rates(log, counts, coco_map());
    CHECK(r.rates(0, column(r, "dog")) == 0.2);
}

TEST_CASE("one detector class can feed several actor classes")
{
    const VideoFrameCounts counts({"v"}, {10});
    DetectionLog log;
    log.records.push_back({"v", 0, "person", 0.9});
    const auto r = aggregate_rates(log, counts, coco_map());
    CHECK(r.rates(0, column(r, "adult")) == 0.1);
    CHECK(r.rates(0, column(r, "baby")) == 0.1);
}

TEST_CASE("unmapped detector classes are ignored")
{
    const VideoFrameCounts counts({"v"}, {10});
    DetectionLog log;
    log.records.push_back({"v", 0, "toaster", 0.99});
    const auto r = aggregate_rates(log, counts, coco_map());
    for (double v : r.rates.row(0))
        CHECK(v == 0.0);
}

TEST_CASE("aggregation errors")
{
    const VideoFrameCounts counts({"v"}, {10});
    DetectionLog log;
    log.records.push_back({"w", 0, "dog", 0.9});
    CHECK_THROWS_AS(aggregate_rates(log, counts, coco_map()), LookupError);
    log.records = {{"v", 10, "dog", 0.9}};
    CHECK_THROWS_AS(aggregate_rates(log, counts, coco_map()), DomainError);
}

TEST_CASE("rates are invariant to detection order and bounded by [0,1]")
{
    std::mt19937_64 rng(41);
    const std::vector<std::string> classes{"person", "bird", "cat", "dog", "car", "sports ball", "x"};
    std::uniform_int_distribution<std::size_t> pick(0, classes.size() - 1);
    std::uniform_real_distribution<double> conf(0.0, 1.0);
    const VideoFrameCounts counts({"a", "b", "c"}, {7, 30, 12});
    for (int trial = 0; trial < 20; ++trial) {
        DetectionLog log;
        for (int i = 0; i < 200; ++i) {
            const std::size_t v = i % 3;
            std::uniform_int_distribution<std::uint64_t> frame(0, counts.totals()[v] - 1);
            log.records.push_back(
                {counts.video_ids()[v], frame(rng), classes[pick(rng)], conf(rng)});
        }
        const auto base = aggregate_rates(log, counts, coco_map());
        for (double v : base.rates.values()) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
        auto shuffled = log;
        std::shuffle(shuffled.records.begin(), shuffled.records.end(), rng);
        CHECK(aggregate_rates(shuffled, counts, coco_map()) == base);

        // adding a detection never lowers any rate
        auto more = log;
        more.records.push_back({"b", 3, classes[pick(rng)], 0.99});
        const auto after = aggregate_rates(more, counts, coco_map());
        for (std::size_t i = 0; i < base.rates.values().size(); ++i)
            CHECK(after.rates.values()[i] >= base.rates.values()[i]);
    }
}

TEST_CASE("presence thresholding")
{
    const std::vector<std::string> actors{"person", "ball", "bird", "car", "cat", "dog"};
    const RateMatrix r{ScoreMatrix({"v"}, actors, {0.09, 0.2, 0.05, 0.12, 0.161, 0.2}), {1000}};
    const ThresholdVector t({0.1, 0.107, 0.1, 0.1, 0.161, 0.267}, actors);
    CHECK(presence(r, t).values() == std::vector<std::uint8_t>{0, 1, 0, 1, 1, 0});
    CHECK_THROWS_AS(presence(r, ThresholdVector({0.1})), ShapeError);
}

TEST_CASE("presence is monotone in the rate")
{
    std::mt19937_64 rng(42);
    const auto s = testing::random_scores(rng, 20, 4);
    const RateMatrix r{s, std::vector<std::uint64_t>(20, 50)};
    const auto t = ThresholdVector::uniform(4, 0.4);
    const auto base = presence(r, t);
    auto raised = s.values();
    for (auto& v : raised)
        v = std::min(1.0, v + 0.1);
    const auto up = presence(RateMatrix{ScoreMatrix(s.sample_ids(), s.class_names(), raised), r.frame_counts}, t);
    for (std::size_t i = 0; i < raised.size(); ++i)
        CHECK(up.values()[i] >= base.values()[i]);
}

TEST_CASE("video truth collapses pair labels to actors")
{
    const auto space = LabelSpace::load(testing::asset("a2d_labels.txt"));
    const std::size_t n = space.class_count();
    std::vector<std::uint8_t> v(3 * n, 0);
    v[space.class_index("adult", "walking")] = 1;
    v[n + space.class_index("dog", "walking")] = 1;
    v[2 * n + space.class_index("bird", "flying")] = 1;
    const LabelMatrix frames({"vid1/0", "vid1/5", "vid2/0"}, space.pair_names(), v);
    const auto truth = collapse_video_truth(frames, space);
    CHECK(truth.sample_ids() == std::vector<std::string>{"vid1", "vid2"});
    CHECK(truth.class_names() == space.actors());
    std::vector<std::string> vid1;
    for (std::size_t a = 0; a < truth.cols(); ++a)
        if (truth(0, a))
            vid1.push_back(truth.class_names()[a]);
    CHECK(vid1 == std::vector<std::string>{"adult", "dog"});
    CHECK(truth(1, space.actor_index("bird")) == 1);

    const auto sel = select_columns(truth, {"dog", "adult"});
    CHECK(sel.values() == std::vector<std::uint8_t>{1, 1, 0, 0});
    CHECK_THROWS_AS(select_columns(truth, {"unicorn"}), LookupError);
}

TEST_CASE("frame ids")
{
    CHECK(split_frame_id("a/b/17") == std::pair<std::string, std::uint64_t>{"a/b", 17});
    CHECK_THROWS_AS(split_frame_id("novideo"), ParseError);
    CHECK_THROWS_AS(split_frame_id("v/x"), ParseError);
    CHECK_THROWS_AS(split_frame_id("/3"), ParseError);
}

TEST_CASE("class map file")
{
    const auto m = parse_class_map("detector_class,actor_class\nperson,adult\nperson,baby\ndog,dog\n", "m");
    CHECK(m.actor_classes() == std::vector<std::string>{"adult", "baby", "dog"});
    CHECK(m.targets("person") == std::vector<std::size_t>{0, 1});
    CHECK(m.targets("cat").empty());
    CHECK_THROWS_AS(parse_class_map("detector_class,actor_class\ndog,dog\ndog,dog\n", "m"),
                    DomainError);
    CHECK_THROWS_AS(parse_class_map("detector,actor\ndog,dog\n", "m"), ParseError);
}

TEST_CASE("rates file round-trip")
{
    std::mt19937_64 rng(43);
    const VideoFrameCounts counts({"a", "b"}, {9, 13});
    DetectionLog log;
    for (std::uint64_t f = 0; f < 9; f += 2)
        log.records.push_back({"a", f, "person", 0.7});
    log.records.push_back({"b", 12, "car", 0.6});
    const auto r = aggregate_rates(log, counts, coco_map());
    const auto text = to_csv(r);
    CHECK(looks_like_rates(text));
    CHECK_FALSE(looks_like_rates("sample_id,adult\n"));
    CHECK(parse_rates(text, "r") == r);
    CHECK_THROWS_AS(parse_rates("video_id,total_frames,adult\nv,0,0.1\n", "r"), ParseError);
    CHECK_THROWS_AS(parse_rates("video_id,total_frames,adult\nv,3,1.1\n", "r"), DomainError);
}
