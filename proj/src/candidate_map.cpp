#include "momentforge/candidate_map.hpp"

#include <stdexcept>

namespace momentforge {

size_t CandidateMap::valid_count() const {
    size_t n = 0;
    for (const uint8_t v : valid) n += v != 0;
    return n;
}

CandidateMap build_candidate_map(int k) {
    if (k < 1) throw std::invalid_argument("build_candidate_map: k must be >= 1");
    CandidateMap map;
    map.num_segments = k;
    map.valid.assign(static_cast<size_t>(k) * k, 0);
    for (int i = 0; i < k; ++i) {
        for (int j = i; j < k; ++j) {
            map.valid[static_cast<size_t>(i) * k + j] = 1;
        }
    }
    return map;
}

TemporalInterval candidate_interval(int i, int j, const TemporalInterval& window, int k) {
    if (i < 0 || j < i || j >= k) {
        throw std::out_of_range("candidate_interval: cell outside the upper triangle");
    }
    const double len = window.length();
    // (0, k-1) must reproduce the window exactly, so the full-span cell is
    // special-cased against rounding in len/k.
    const double start = i == 0 ? window.start : window.start + i * len / k;
    const double end = j == k - 1 ? window.end : window.start + (j + 1) * len / k;
    return {start, end};
}

} // namespace momentforge
