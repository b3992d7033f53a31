#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace momentforge {

/// Precomputed per-clip features: T temporal steps of dimension D, each
/// step covering step_seconds of clip time. Values are step-major.
struct FeatureMatrix {
    std::string clip_id;
    int num_steps = 0;   // T
    int dim = 0;         // D
    double step_seconds = 0.0;
    std::vector<float> values; // T * D

    const float* step(int t) const { return values.data() + static_cast<size_t>(t) * dim; }
    float* step(int t) { return values.data() + static_cast<size_t>(t) * dim; }
    /// Center of step t in clip time.
    double step_center(int t) const { return (t + 0.5) * step_seconds; }
};

/// MLF1 layout: magic "MLF1", LE u32 T, LE u32 D, LE f32 step_seconds,
/// then T*D LE f32 values in step-major order. One file per clip,
/// named <clip_id>.mlf; the clip_id is taken from the filename stem.
FeatureMatrix load_features(const std::filesystem::path& path);
void save_features(const FeatureMatrix& fm, const std::filesystem::path& path);

} // namespace momentforge
