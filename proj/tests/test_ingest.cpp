#include "momentforge/annotations.hpp"
#include "momentforge/errors.hpp"
#include "momentforge/features.hpp"
#include "momentforge/synth.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <unistd.h>

using namespace momentforge;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("momentforge_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static inline int counter = 0;
};

FeatureMatrix small_matrix() {
    FeatureMatrix fm;
    fm.clip_id = "clip_a";
    fm.num_steps = 4;
    fm.dim = 3;
    fm.step_seconds = 2.5f;
    fm.values = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
    return fm;
}

} // namespace

TEST_CASE("feature file round-trip") {
    TempDir dir;
    const auto path = dir.path / "clip_a.mlf";
    save_features(small_matrix(), path);
    const FeatureMatrix fm = load_features(path);
    CHECK(fm.clip_id == "clip_a");
    CHECK(fm.num_steps == 4);
    CHECK(fm.dim == 3);
    CHECK(fm.step_seconds == doctest::Approx(2.5));
    CHECK(fm.values == small_matrix().values);
}

TEST_CASE("feature loader rejects bad files") {
    TempDir dir;

    SUBCASE("bad magic") {
        const auto path = dir.path / "bad.mlf";
        std::ofstream(path, std::ios::binary) << "NOPE1234";
        CHECK_THROWS_AS(load_features(path), ParseError);
    }
    SUBCASE("payload one float short") {
        const auto path = dir.path / "short.mlf";
        save_features(small_matrix(), path);
        fs::resize_file(path, fs::file_size(path) - 4);
        CHECK_THROWS_AS(load_features(path), ParseError);
    }
    SUBCASE("NaN names the offending cell") {
        auto fm = small_matrix();
        fm.values[7] = std::numeric_limits<float>::quiet_NaN(); // step 2, dim 1
        const auto path = dir.path / "nan.mlf";
        save_features(fm, path);
        try {
            load_features(path);
            FAIL("expected ValidationError");
        } catch (const ValidationError& e) {
            const std::string msg = e.what();
            CHECK(msg.find("step 2") != std::string::npos);
            CHECK(msg.find("dim 1") != std::string::npos);
        }
    }
}

TEST_CASE("annotation round-trip and validation") {
    TempDir dir;
    const auto path = dir.path / "ann.json";

    AnnotationSet set;
    ClipAnnotations clip;
    clip.meta = {"clip_x", 100.0};
    clip.annotations.push_back({{"q1", "Where is the mug?", std::nullopt}, {10, 20}});
    clip.annotations.push_back({{"q2", "Where is the pan?", "OBJ_WHERE"}, {55, 60}});
    set.clips.push_back(clip);

    save_annotations(set, path);
    const AnnotationSet loaded = load_annotations(path);
    REQUIRE(loaded.clips.size() == 1);
    CHECK(loaded.clips[0].meta.clip_id == "clip_x");
    CHECK(loaded.query_count() == 2);
    CHECK(loaded.clips[0].annotations[1].query.template_hint == "OBJ_WHERE");
    CHECK(loaded.clips[0].annotations[0].ground_truth == TemporalInterval{10, 20});
}

TEST_CASE("annotation loader rejects invalid records by name") {
    TempDir dir;
    const auto path = dir.path / "ann.json";

    SUBCASE("moment outside clip duration") {
        std::ofstream(path) << R"({"clips":[{"clip_id":"c1","duration_s":100,
            "queries":[{"query_id":"q9","text":"x?","template":null,"start_s":90,"end_s":120}]}]})";
        try {
            load_annotations(path);
            FAIL("expected ValidationError");
        } catch (const ValidationError& e) {
            CHECK(std::string(e.what()).find("q9") != std::string::npos);
        }
    }
    SUBCASE("duplicate clip_id") {
        std::ofstream(path) << R"({"clips":[
            {"clip_id":"c1","duration_s":100,"queries":[]},
            {"clip_id":"c1","duration_s":50,"queries":[]}]})";
        CHECK_THROWS_AS(load_annotations(path), ValidationError);
    }
    SUBCASE("start after end") {
        std::ofstream(path) << R"({"clips":[{"clip_id":"c1","duration_s":100,
            "queries":[{"query_id":"q1","text":"x?","template":null,"start_s":30,"end_s":20}]}]})";
        CHECK_THROWS_AS(load_annotations(path), ValidationError);
    }
    SUBCASE("malformed json") {
        std::ofstream(path) << "{not json";
        CHECK_THROWS_AS(load_annotations(path), ParseError);
    }
}

TEST_CASE("training_window_filter keeps positive-overlap windows in order") {
    const std::vector<TemporalInterval> windows = {{0, 40}, {20, 60}, {40, 80}, {60, 100}};
    CHECK(training_window_filter(windows, {45, 50}) ==
          std::vector<TemporalInterval>{{20, 60}, {40, 80}});
    CHECK(training_window_filter(windows, {0, 100}) == windows);
    // zero-length touch at a window boundary carries no overlap
    CHECK(training_window_filter(windows, {40, 40}).empty());

    // output is a subsequence of the input and every kept window overlaps
    for (int trial = 0; trial < 200; ++trial) {
        const double g0 = (trial * 7) % 95;
        const TemporalInterval gt{g0, g0 + (trial % 13)};
        const auto kept = training_window_filter(windows, gt);
        size_t cursor = 0;
        for (const auto& w : kept) {
            CHECK(intersection_length(w, gt) > 0.0);
            while (cursor < windows.size() && windows[cursor] != w) ++cursor;
            CHECK(cursor < windows.size());
        }
    }
}

TEST_CASE("synth corpus is deterministic and sized by the generation rule") {
    SynthSpec spec;
    spec.seed = 7;
    spec.num_clips = 3;
    spec.events_per_clip = 2;

    const SynthCorpus a = synth_corpus(spec);
    const SynthCorpus b = synth_corpus(spec);

    CHECK(a.annotations.clips.size() == 3);
    for (size_t c = 0; c < 3; ++c) {
        // 2 single-step + 1 two-step query per clip
        CHECK(a.annotations.clips[c].annotations.size() == 3);
        CHECK(a.features[c].values == b.features[c].values);
        for (size_t q = 0; q < 3; ++q) {
            CHECK(a.annotations.clips[c].annotations[q].query.text ==
                  b.annotations.clips[c].annotations[q].query.text);
            CHECK(a.annotations.clips[c].annotations[q].ground_truth ==
                  b.annotations.clips[c].annotations[q].ground_truth);
        }
    }
    CHECK(a.oracle == b.oracle);

    // planted moments land on feature-step boundaries
    for (const auto& [qid, iv] : a.oracle) {
        (void)qid;
        const double steps_start = iv.start / spec.step_seconds;
        const double steps_end = iv.end / spec.step_seconds;
        CHECK(steps_start == doctest::Approx(std::round(steps_start)));
        CHECK(steps_end == doctest::Approx(std::round(steps_end)));
    }
}

TEST_CASE("synth corpus rejects infeasible event counts") {
    SynthSpec spec;
    spec.clip_duration = 10;
    spec.step_seconds = 2.5; // 4 steps
    spec.events_per_clip = 3;
    CHECK_THROWS_AS(synth_corpus(spec), ValidationError);
}

TEST_CASE("synth corpus writes loadable files") {
    TempDir dir;
    SynthSpec spec;
    spec.num_clips = 2;
    const SynthCorpus corpus = synth_corpus(spec);
    write_corpus(corpus, dir.path);

    const AnnotationSet ann = load_annotations(dir.path / "annotations.json");
    CHECK(ann.query_count() == corpus.annotations.query_count());
    const FeatureMatrix fm = load_features(dir.path / "features" / "clip_0000.mlf");
    CHECK(fm.dim == spec.dim);
    CHECK(fm.num_steps == 40);
    const auto oracle = load_oracle(dir.path / "oracle.json");
    CHECK(oracle.size() == corpus.oracle.size());
    for (const auto& [qid, iv] : corpus.oracle) {
        REQUIRE(oracle.count(qid) == 1);
        CHECK(oracle.at(qid).start == doctest::Approx(iv.start));
        CHECK(oracle.at(qid).end == doctest::Approx(iv.end));
    }
}
