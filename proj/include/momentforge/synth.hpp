#pragma once

#include "momentforge/annotations.hpp"
#include "momentforge/features.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace momentforge {

/// Parameters for a seeded synthetic corpus with planted ground truth.
struct SynthSpec {
    uint64_t seed = 0;
    int num_clips = 1;
    double clip_duration = 100.0;
    int dim = 256;
    double step_seconds = 2.5;
    int events_per_clip = 2;
    double noise_scale = 0.0;

    bool valid() const {
        return num_clips >= 1 && clip_duration > 0.0 && dim >= 1 && step_seconds > 0.0 &&
               events_per_clip >= 1 && noise_scale >= 0.0;
    }
};

struct SynthCorpus {
    AnnotationSet annotations;
    std::vector<FeatureMatrix> features;
    std::map<std::string, TemporalInterval> oracle; // query_id -> planted moment
};

/// Deterministic under the seed. Each clip gets `events_per_clip`
/// non-overlapping events on feature-step boundaries; background steps
/// carry a per-clip ambient direction and event steps carry a distinct
/// unit direction, with per-coordinate noise of overall scale
/// `noise_scale` on top. One single-step query is emitted per event and
/// one two-step "X after Y" query per ordered adjacent event pair; query
/// texts embed the event tokens so the hashed bag-of-words embedder (with
/// this spec's dim and seed) lines up with the planted features.
/// Throws ValidationError when the events cannot fit in the clip.
SynthCorpus synth_corpus(const SynthSpec& spec);

/// Emit annotations.json, features/<clip_id>.mlf, and oracle.json
/// ({"query_id": [start_s, end_s]}) under out_dir.
void write_corpus(const SynthCorpus& corpus, const std::filesystem::path& out_dir);

std::map<std::string, TemporalInterval> load_oracle(const std::filesystem::path& path);

} // namespace momentforge
