#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

namespace momentforge {

/// A [start, end] span in clip time, in seconds. The unit of moments,
/// windows, and predictions. start <= end, both finite.
struct TemporalInterval {
    double start = 0.0;
    double end = 0.0;

    double length() const { return end - start; }
    bool valid() const {
        return std::isfinite(start) && std::isfinite(end) && start <= end;
    }
    bool operator==(const TemporalInterval& o) const {
        return start == o.start && end == o.end;
    }
    bool operator!=(const TemporalInterval& o) const { return !(*this == o); }
};

struct ClipMeta {
    std::string clip_id;
    double duration_s = 0.0; // > 0
};

struct Query {
    std::string query_id;
    std::string text;
    std::optional<std::string> template_hint;
};

struct Annotation {
    Query query;
    TemporalInterval ground_truth;
};

inline double intersection_length(const TemporalInterval& a, const TemporalInterval& b) {
    return std::max(0.0, std::min(a.end, b.end) - std::max(a.start, b.start));
}

/// Temporal intersection-over-union. Union length 0 (two zero-length
/// intervals) yields 1 when they coincide, 0 otherwise.
inline double iou(const TemporalInterval& a, const TemporalInterval& b) {
    const double inter = intersection_length(a, b);
    const double uni = a.length() + b.length() - inter;
    if (uni <= 0.0) {
        return a == b ? 1.0 : 0.0;
    }
    return inter / uni;
}

/// Intersect `a` with `bounds`; a disjoint input collapses to the
/// zero-length interval at the nearest bound.
inline TemporalInterval clamp(const TemporalInterval& a, const TemporalInterval& bounds) {
    if (a.start > bounds.end) return {bounds.end, bounds.end};
    if (a.end < bounds.start) return {bounds.start, bounds.start};
    return {std::max(a.start, bounds.start), std::min(a.end, bounds.end)};
}

} // namespace momentforge
