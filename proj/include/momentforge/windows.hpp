#pragma once

#include "momentforge/core.hpp"

#include <vector>

namespace momentforge {

/// Sliding-window parameters. Defaults are 40s windows with a 20s stride,
/// cut into 16 segments for the candidate grid.
struct WindowConfig {
    double window_seconds = 40.0;
    double stride_seconds = 20.0;
    int segments_per_window = 16;

    bool valid() const {
        return window_seconds > 0.0 && stride_seconds > 0.0 &&
               stride_seconds <= window_seconds && segments_per_window >= 1;
    }
};

/// Overlapping windows at starts 0, stride, 2*stride, ... covering
/// [0, duration]. When the regular ladder stops short of the clip end, a
/// tail window anchored at duration - window_seconds is appended (clamped
/// to the clip when the clip is shorter than one window). Sorted by start,
/// no duplicates.
std::vector<TemporalInterval> make_windows(double duration, const WindowConfig& cfg);

} // namespace momentforge
