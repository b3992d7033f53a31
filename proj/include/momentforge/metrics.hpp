#pragma once

#include "momentforge/annotations.hpp"
#include "momentforge/core.hpp"
#include "momentforge/instructions.hpp"
#include "momentforge/localizer.hpp"
#include "momentforge/reformulate.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace momentforge {

/// Which R@n, IoU=m cells to compute.
struct MetricSpec {
    std::vector<int> ranks = {1, 5};
    std::vector<double> iou_thresholds = {0.3, 0.5};

    bool valid() const;
    bool operator==(const MetricSpec& o) const {
        return ranks == o.ranks && iou_thresholds == o.iou_thresholds;
    }
};

/// Recall percentages per (n, m) cell, stored threshold-major in the
/// report's column order (IoU ascending, rank ascending within each IoU).
struct MetricsTable {
    MetricSpec spec;
    std::string label;
    size_t query_count = 0;
    std::vector<double> recall_pct;

    double cell(size_t threshold_idx, size_t rank_idx) const {
        return recall_pct[threshold_idx * spec.ranks.size() + rank_idx];
    }
};

/// True iff one of the first min(n, |preds|) predictions has
/// iou(pred, gt) strictly greater than m. `preds` must already be ranked.
bool hit(const std::vector<Prediction>& preds, const TemporalInterval& gt, int n, double m);

/// Recall table over every annotated query; queries without predictions
/// count as misses. Prediction ids that match no annotation are an error.
MetricsTable aggregate(const std::map<std::string, std::vector<Prediction>>& results,
                       const AnnotationSet& annotations, const MetricSpec& spec);

/// Whitespace token count of `text`.
size_t word_count(const std::string& text);

struct CorpusStats {
    double mean_words_original = 0.0;
    double mean_words_reformulated = 0.0;
    double mean_steps = 0.0;
    std::map<std::string, size_t> template_counts; // template name (or "UNMATCHED") -> count
    size_t query_count = 0;
};

CorpusStats corpus_stats(const std::vector<ReformulatedCorpusEntry>& entries);

/// Two-row comparison with signed per-cell deltas (second minus first).
struct ComparisonReport {
    MetricsTable base;
    MetricsTable other;
    std::vector<double> deltas;

    /// Fixed-layout text table: one column per (IoU, R@n) pair in spec
    /// order, percentages to two decimals, half-up.
    std::string to_text() const;
};

ComparisonReport compare_report(const MetricsTable& base, const MetricsTable& other);

/// Two-decimal half-up formatting used by the reports ("4.57", "-0.31").
std::string format_pct(double value);

/// Metrics file: {"label", "query_count", "cells": [{"n", "iou", "recall_pct"}]}.
void save_metrics(const MetricsTable& table, const std::filesystem::path& path);
MetricsTable load_metrics(const std::filesystem::path& path);

std::string metrics_to_text(const MetricsTable& table);

} // namespace momentforge
