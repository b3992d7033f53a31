#pragma once

#include "momentforge/core.hpp"

#include <cstdint>
#include <vector>

namespace momentforge {

/// Upper-triangular grid of moment candidates over k segments: cell (i, j)
/// with i <= j stands for the span from segment i's start to segment j's
/// end. Validity is stored explicitly so sparser sampling schemes can reuse
/// the same scoring path.
struct CandidateMap {
    int num_segments = 0;
    std::vector<uint8_t> valid; // row-major k*k

    bool is_valid(int i, int j) const {
        return i >= 0 && j < num_segments && i <= j &&
               valid[static_cast<size_t>(i) * num_segments + j] != 0;
    }
    size_t valid_count() const;
};

/// Full upper triangle (including the diagonal): k*(k+1)/2 valid cells.
CandidateMap build_candidate_map(int k);

/// Clip-time span of cell (i, j) within `window` split into k segments.
TemporalInterval candidate_interval(int i, int j, const TemporalInterval& window, int k);

struct ScoreMap {
    CandidateMap candidate_map;
    // Scores for valid cells in row-major (i, then j) order.
    std::vector<double> scores;
};

} // namespace momentforge
