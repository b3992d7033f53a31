#include "momentforge/localizer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace momentforge {
namespace {

std::vector<double> mean_rows(const std::vector<std::vector<double>>& prefix, int i, int j) {
    // prefix[r] = sum of rows 0..r-1
    const size_t dim = prefix[0].size();
    std::vector<double> out(dim);
    const double inv = 1.0 / (j - i + 1);
    for (size_t d = 0; d < dim; ++d) {
        out[d] = (prefix[static_cast<size_t>(j) + 1][d] - prefix[static_cast<size_t>(i)][d]) * inv;
    }
    return out;
}

/// Full ranked prediction list for one query embedding: all windows, all
/// valid cells, exact duplicates collapsed, NMS applied, no truncation.
std::vector<Prediction> rank_all(const FeatureMatrix& fm, const ClipMeta& clip,
                                 const QueryEmbedding& query, const WindowConfig& cfg,
                                 double nms_threshold) {
    const auto windows = make_windows(clip.duration_s, cfg);
    const int k = cfg.segments_per_window;
    const CandidateMap cmap = build_candidate_map(k);
    const TemporalInterval clip_bounds{0.0, clip.duration_s};

    std::vector<Prediction> pool;
    pool.reserve(windows.size() * cmap.valid_count());
    for (size_t w = 0; w < windows.size(); ++w) {
        const auto segments = segment_features(fm, windows[w], k);
        const ScoreMap sm = score_candidates(segments, cmap, query);
        size_t cell = 0;
        for (int i = 0; i < k; ++i) {
            for (int j = i; j < k; ++j) {
                const double score = sm.scores[cell++];
                const TemporalInterval iv =
                    clamp(candidate_interval(i, j, windows[w], k), clip_bounds);
                pool.push_back({iv, score, static_cast<int>(w)});
            }
        }
    }

    // Overlapping windows propose the same span more than once; keep the
    // best-scored copy of each exact interval before NMS.
    std::map<std::pair<double, double>, size_t> best;
    std::vector<Prediction> deduped;
    for (const auto& p : pool) {
        const auto key = std::make_pair(p.interval.start, p.interval.end);
        auto it = best.find(key);
        if (it == best.end()) {
            best.emplace(key, deduped.size());
            deduped.push_back(p);
        } else if (p.score > deduped[it->second].score) {
            deduped[it->second] = p;
        }
    }

    return nms(std::move(deduped), nms_threshold);
}

std::vector<Prediction> take_top(std::vector<Prediction> preds, int top_k) {
    if (static_cast<int>(preds.size()) > top_k) preds.resize(static_cast<size_t>(top_k));
    return preds;
}

} // namespace

std::vector<std::vector<double>> segment_features(const FeatureMatrix& fm,
                                                  const TemporalInterval& window, int k) {
    if (k < 1) throw std::invalid_argument("segment_features: k must be >= 1");
    const int dim = fm.dim;
    std::vector<std::vector<double>> segments(static_cast<size_t>(k),
                                              std::vector<double>(static_cast<size_t>(dim), 0.0));
    std::vector<int> counts(static_cast<size_t>(k), 0);
    const double seg_len = window.length() / k;

    for (int t = 0; t < fm.num_steps; ++t) {
        const double center = fm.step_center(t);
        if (center < window.start || center > window.end) continue;
        int s = seg_len > 0.0 ? static_cast<int>((center - window.start) / seg_len) : 0;
        s = std::clamp(s, 0, k - 1);
        const float* row = fm.step(t);
        for (int d = 0; d < dim; ++d) segments[static_cast<size_t>(s)][static_cast<size_t>(d)] += row[d];
        ++counts[static_cast<size_t>(s)];
    }

    for (int s = 0; s < k; ++s) {
        if (counts[static_cast<size_t>(s)] > 0) {
            const double inv = 1.0 / counts[static_cast<size_t>(s)];
            for (double& v : segments[static_cast<size_t>(s)]) v *= inv;
        } else {
            // Empty sub-span: borrow the step whose center is closest to the
            // sub-span midpoint (earlier step on ties).
            const double mid = window.start + (s + 0.5) * seg_len;
            int nearest = 0;
            double best = std::abs(fm.step_center(0) - mid);
            for (int t = 1; t < fm.num_steps; ++t) {
                const double d = std::abs(fm.step_center(t) - mid);
                if (d < best) {
                    best = d;
                    nearest = t;
                }
            }
            const float* row = fm.step(nearest);
            for (int d = 0; d < dim; ++d) segments[static_cast<size_t>(s)][static_cast<size_t>(d)] = row[d];
        }
    }
    return segments;
}

ScoreMap score_candidates(const std::vector<std::vector<double>>& segments,
                          const CandidateMap& cmap, const QueryEmbedding& query) {
    const int k = cmap.num_segments;
    if (static_cast<int>(segments.size()) != k) {
        throw std::invalid_argument("score_candidates: segment count does not match map");
    }
    if (k > 0 && static_cast<int>(segments[0].size()) != query.dim) {
        throw std::invalid_argument("score_candidates: feature dim " +
                                    std::to_string(segments[0].size()) +
                                    " does not match query dim " + std::to_string(query.dim));
    }

    std::vector<std::vector<double>> prefix(static_cast<size_t>(k) + 1,
                                            std::vector<double>(static_cast<size_t>(query.dim), 0.0));
    for (int r = 0; r < k; ++r) {
        for (int d = 0; d < query.dim; ++d) {
            prefix[static_cast<size_t>(r) + 1][static_cast<size_t>(d)] =
                prefix[static_cast<size_t>(r)][static_cast<size_t>(d)] +
                segments[static_cast<size_t>(r)][static_cast<size_t>(d)];
        }
    }

    ScoreMap sm;
    sm.candidate_map = cmap;
    sm.scores.reserve(cmap.valid_count());
    for (int i = 0; i < k; ++i) {
        for (int j = i; j < k; ++j) {
            if (!cmap.is_valid(i, j)) continue;
            sm.scores.push_back(cosine(mean_rows(prefix, i, j), query.values));
        }
    }
    return sm;
}

void sort_predictions(std::vector<Prediction>& preds) {
    std::stable_sort(preds.begin(), preds.end(), [](const Prediction& a, const Prediction& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.interval.start != b.interval.start) return a.interval.start < b.interval.start;
        return a.interval.length() < b.interval.length();
    });
}

std::vector<Prediction> nms(std::vector<Prediction> preds, double iou_threshold) {
    sort_predictions(preds);
    std::vector<Prediction> kept;
    std::vector<bool> suppressed(preds.size(), false);
    for (size_t i = 0; i < preds.size(); ++i) {
        if (suppressed[i]) continue;
        kept.push_back(preds[i]);
        for (size_t j = i + 1; j < preds.size(); ++j) {
            if (!suppressed[j] && iou(preds[i].interval, preds[j].interval) > iou_threshold) {
                suppressed[j] = true;
            }
        }
    }
    return kept;
}

std::vector<Prediction> localize_single(const FeatureMatrix& fm, const ClipMeta& clip,
                                        const QueryEmbedding& query, const WindowConfig& cfg,
                                        int top_k, double nms_threshold) {
    if (top_k < 1) throw std::invalid_argument("localize_single: top_k must be >= 1");
    return take_top(rank_all(fm, clip, query, cfg, nms_threshold), top_k);
}

LocalizeResult localize_stepwise(const FeatureMatrix& fm, const ClipMeta& clip,
                                 const InstructionSequence& steps, const Embedder& embedder,
                                 const WindowConfig& cfg, int top_k, double nms_threshold) {
    if (steps.steps.empty()) {
        throw std::invalid_argument("localize_stepwise: empty instruction sequence");
    }
    if (top_k < 1) throw std::invalid_argument("localize_stepwise: top_k must be >= 1");

    LocalizeResult result;
    std::optional<TemporalInterval> anchor;
    std::vector<Prediction> ranked;
    for (const auto& step : steps.steps) {
        ranked = rank_all(fm, clip, embedder(step.description), cfg, nms_threshold);
        if (anchor && step.relation != StepRelation::None) {
            std::vector<Prediction> constrained;
            for (const auto& p : ranked) {
                const bool ok = step.relation == StepRelation::After
                                    ? p.interval.start >= anchor->end
                                    : p.interval.end <= anchor->start;
                if (ok) constrained.push_back(p);
            }
            if (constrained.empty()) {
                result.fallback = true;
            } else {
                ranked = std::move(constrained);
            }
        }
        if (!ranked.empty()) anchor = ranked.front().interval;
    }
    result.predictions = take_top(std::move(ranked), top_k);
    return result;
}

} // namespace momentforge
