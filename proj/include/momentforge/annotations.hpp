#pragma once

#include "momentforge/core.hpp"

#include <filesystem>
#include <vector>

namespace momentforge {

struct ClipAnnotations {
    ClipMeta meta;
    std::vector<Annotation> annotations;
};

/// Clips with their queries and ground-truth moments. Clip ids are unique
/// and every ground truth lies within its clip.
struct AnnotationSet {
    std::vector<ClipAnnotations> clips;

    size_t query_count() const;
    void validate() const; // throws ValidationError naming the offending record
};

/// JSON schema:
/// {"clips": [{"clip_id", "duration_s",
///             "queries": [{"query_id", "text", "template", "start_s", "end_s"}]}]}
AnnotationSet load_annotations(const std::filesystem::path& path);
void save_annotations(const AnnotationSet& set, const std::filesystem::path& path);

/// Keep the windows with a positive-length intersection with the ground
/// truth, in their original order. Boundary touches do not count.
std::vector<TemporalInterval> training_window_filter(
    const std::vector<TemporalInterval>& windows, const TemporalInterval& gt);

} // namespace momentforge
