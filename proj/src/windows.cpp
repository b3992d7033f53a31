#include "momentforge/windows.hpp"

#include <stdexcept>

namespace momentforge {

std::vector<TemporalInterval> make_windows(double duration, const WindowConfig& cfg) {
    if (duration <= 0.0) throw std::invalid_argument("make_windows: duration must be > 0");
    if (!cfg.valid()) throw std::invalid_argument("make_windows: invalid window config");

    std::vector<TemporalInterval> windows;
    for (int i = 0;; ++i) {
        const double start = i * cfg.stride_seconds;
        const double end = start + cfg.window_seconds;
        if (end > duration) break;
        windows.push_back({start, end});
    }
    if (windows.empty() || windows.back().end < duration) {
        const TemporalInterval tail =
            clamp({duration - cfg.window_seconds, duration}, {0.0, duration});
        if (windows.empty() || windows.back() != tail) windows.push_back(tail);
    }
    return windows;
}

} // namespace momentforge
