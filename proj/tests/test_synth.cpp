#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "a2dkit/csv.hpp"
#include "a2dkit/error.hpp"
#include "a2dkit/matrix_io.hpp"
#include "a2dkit/metrics.hpp"
#include "a2dkit/synth.hpp"
#include "support.hpp"

using namespace a2dkit;

TEST_CASE("same seed gives identical data")
{
    const auto spec = staggered_spec(3, 120, 5);
    const auto a = generate(spec);
    const auto b = generate(spec);
    CHECK(a.scores == b.scores);
    CHECK(a.labels == b.labels);
    auto other = spec;
    other.seed = 4;
    CHECK_FALSE(generate(other).scores == a.scores);
}

TEST_CASE("staggered bands")
{
    const auto spec = staggered_spec(1, 50, 8);
    REQUIRE(spec.classes.size() == 8);
    CHECK(spec.classes[0].neg_high == doctest::Approx(0.10));
    CHECK(spec.classes[0].pos_low == doctest::Approx(0.22));
    CHECK(spec.classes[5].neg_high == doctest::Approx(0.30));
    CHECK(spec.classes[5].pos_low == doctest::Approx(0.42));
    CHECK(spec.classes[6].neg_high == spec.classes[0].neg_high);
    CHECK_THROWS_AS(staggered_spec(1, 50, 2, 0.3, {"only"}), ConfigError);
}

TEST_CASE("any threshold inside every band scores perfectly")
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto data = generate(staggered_spec(seed, 200, 6));
        std::vector<double> lo(6), mid(6), hi(6);
        for (std::size_t k = 0; k < 6; ++k) {
            const auto& b = data.bands[k];
            CHECK_FALSE(b.degenerate);
            lo[k] = std::nextafter(b.lo_exclusive, 1.0);
            mid[k] = (b.lo_exclusive + b.hi_inclusive) / 2.0;
            hi[k] = b.hi_inclusive;
        }
        for (const auto& t : {lo, mid, hi}) {
            for (auto mode : {Averaging::Example, Averaging::Micro, Averaging::Macro}) {
                const auto r = evaluate(data.scores, data.labels, ThresholdVector(t), mode);
                CHECK(r.precision == 1.0);
                CHECK(r.recall == 1.0);
                CHECK(r.f1 == 1.0);
            }
        }
    }
}

TEST_CASE("band edges are tight")
{
    const auto data = generate(staggered_spec(2, 200, 3));
    for (std::size_t k = 0; k < 3; ++k) {
        const auto& b = data.bands[k];
        std::vector<double> t(3);
        for (std::size_t j = 0; j < 3; ++j)
            t[j] = data.bands[j].hi_inclusive;
        // at lo_exclusive the pinned negative is predicted positive
        t[k] = b.lo_exclusive;
        CHECK(evaluate(data.scores, data.labels, ThresholdVector(t), Averaging::Micro).precision < 1.0);
        // just above hi_inclusive the pinned positive is missed
        t[k] = std::nextafter(b.hi_inclusive, 1.0);
        CHECK(evaluate(data.scores, data.labels, ThresholdVector(t), Averaging::Micro).recall < 1.0);
        CHECK_FALSE(b.contains(b.lo_exclusive));
        CHECK(b.contains(b.hi_inclusive));
    }
}

TEST_CASE("scores stay in their ranges")
{
    const auto data = generate(staggered_spec(6, 300, 6, 0.5));
    for (std::size_t r = 0; r < data.scores.rows(); ++r)
        for (std::size_t c = 0; c < 6; ++c) {
            const auto& b = data.bands[c];
            if (data.labels(r, c))
                CHECK(data.scores(r, c) >= b.hi_inclusive);
            else
                CHECK(data.scores(r, c) <= b.lo_exclusive);
        }
}

TEST_CASE("degenerate classes are flagged")
{
    SynthSpec spec;
    spec.n_samples = 20;
    spec.classes = {{"never", 0.0, 0.2, 0.8}, {"always", 1.0, 0.2, 0.8}, {"some", 0.5, 0.2, 0.8}};
    const auto data = generate(spec);
    CHECK(data.bands[0].degenerate);
    CHECK(data.bands[1].degenerate);
    CHECK_FALSE(data.bands[2].degenerate);
    const auto text = bands_to_csv(data.bands);
    CHECK(text.find("# degenerate: never\n") != std::string::npos);
    const auto back = parse_bands(text, "bands");
    REQUIRE(back.size() == 3);
    CHECK(back[0].degenerate);
    CHECK(back[1].degenerate);
    CHECK_FALSE(back[2].degenerate);
    CHECK(back[2].lo_exclusive == 0.2);
    CHECK(back[2].hi_inclusive == 0.8);
}

TEST_CASE("SynthSpec validation")
{
    SynthSpec spec;
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec.classes = {{"a", 0.3, 0.5, 0.4}};
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec.classes = {{"a", 1.3, 0.2, 0.4}};
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec.classes = {{"a", 0.3, 0.2, 0.4}, {"a", 0.3, 0.2, 0.4}};
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec.classes = {{"a", 0.3, 0.2, 0.4}};
    spec.n_samples = 0;
    CHECK_THROWS_AS(spec.validate(), ConfigError);
}

TEST_CASE("files on disk")
{
    testing::TempDir dir("synth");
    csv::write_file(dir / "spec.json",
                    R"({"seed":9,"n_samples":30,"classes":[{"name":"a","neg_high":0.3,"pos_low":0.6}]})");
    const auto spec = load_synth_spec(dir / "spec.json");
    CHECK(spec.seed == 9);
    CHECK(spec.classes[0].positive_rate == 0.3);
    const auto data = generate(spec);
    write_synth(dir / "out", data);
    CHECK(load_scores(dir / "out" / "scores.csv") == data.scores);
    CHECK(load_labels(dir / "out" / "labels.csv") == data.labels);
    CHECK(data.scores.sample_ids()[0] == "s0");

    csv::write_file(dir / "bad.json", R"({"classes":[{"name":"a"}]})");
    CHECK_THROWS_AS(load_synth_spec(dir / "bad.json"), ConfigError);
}
