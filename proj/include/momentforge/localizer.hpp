#pragma once

#include "momentforge/candidate_map.hpp"
#include "momentforge/core.hpp"
#include "momentforge/embed.hpp"
#include "momentforge/features.hpp"
#include "momentforge/instructions.hpp"
#include "momentforge/windows.hpp"

#include <functional>
#include <vector>

namespace momentforge {

struct Prediction {
    TemporalInterval interval; // clip coordinates
    double score = 0.0;
    int source_window = 0;
};

/// Predictions plus whether an empty constrained pool forced a fall back
/// to the unconstrained ranking in step-wise mode.
struct LocalizeResult {
    std::vector<Prediction> predictions;
    bool fallback = false;
};

using Embedder = std::function<QueryEmbedding(const std::string&)>;

inline Embedder make_embedder(const EmbedConfig& cfg) {
    return [cfg](const std::string& text) { return embed_text(text, cfg); };
}

/// Mean feature per segment: the window is split into k equal sub-spans and
/// each segment averages the steps whose centers fall inside its sub-span.
/// A sub-span containing no step centers borrows the nearest step.
/// Returns k rows of fm.dim values.
std::vector<std::vector<double>> segment_features(const FeatureMatrix& fm,
                                                  const TemporalInterval& window, int k);

/// Cosine between the query embedding and the mean of segment rows i..j for
/// every valid cell. Zero vectors score 0. Throws on dim mismatch.
ScoreMap score_candidates(const std::vector<std::vector<double>>& segments,
                          const CandidateMap& cmap, const QueryEmbedding& query);

/// Greedy non-maximum suppression: repeatedly keep the best remaining
/// prediction and drop everything overlapping it with iou > threshold.
/// Ordering (and tie-breaks) follow sort_predictions.
std::vector<Prediction> nms(std::vector<Prediction> preds, double iou_threshold);

/// Descending score; ties by earlier start, then shorter length.
void sort_predictions(std::vector<Prediction>& preds);

/// Score every candidate of every window against `query`, pool, dedupe,
/// NMS, and return the top_k.
std::vector<Prediction> localize_single(const FeatureMatrix& fm, const ClipMeta& clip,
                                        const QueryEmbedding& query, const WindowConfig& cfg,
                                        int top_k, double nms_threshold = 0.5);

/// Step-wise localization: each step is localized on its own description;
/// steps with an AFTER (BEFORE) relation keep only predictions starting at
/// or after the previous anchor's end (ending at or before its start). An
/// empty constrained pool falls back to the unconstrained ranking and sets
/// the fallback flag. The anchor is always the current step's rank-1.
LocalizeResult localize_stepwise(const FeatureMatrix& fm, const ClipMeta& clip,
                                 const InstructionSequence& steps, const Embedder& embedder,
                                 const WindowConfig& cfg, int top_k,
                                 double nms_threshold = 0.5);

} // namespace momentforge
