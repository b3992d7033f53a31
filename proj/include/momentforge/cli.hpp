#pragma once

#include "momentforge/chat_client.hpp"
#include "momentforge/embed.hpp"
#include "momentforge/metrics.hpp"
#include "momentforge/synth.hpp"
#include "momentforge/windows.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace momentforge::cli {

/// Everything a pipeline run needs; subcommands use the slice they care
/// about. Defaults mirror the CLI flag defaults.
struct RunConfig {
    std::filesystem::path annotations;
    std::filesystem::path features_dir;
    std::filesystem::path cache_dir = ".momentforge-cache";
    std::filesystem::path out;
    WindowConfig window;
    MetricSpec metrics;
    EmbedConfig embed;
    bool live = false;
    int top_k = 5;
    double nms_threshold = 0.5;
    std::string model_hint = "gpt-3.5-turbo";
    double temperature = 0.0;
};

/// One row of the prediction dump, grouped back per query on load.
struct QueryPredictions {
    std::vector<Prediction> predictions;
    bool fallback = false;
};

void save_predictions(const std::map<std::string, QueryPredictions>& preds,
                      const std::filesystem::path& path);
std::map<std::string, QueryPredictions> load_predictions(const std::filesystem::path& path);

/// Generate and write a synthetic corpus; returns the corpus directory.
void cmd_synth(const SynthSpec& spec, const std::filesystem::path& out_dir, std::ostream& log);

/// Reformulate every annotated query through `client` into a corpus file;
/// logs per-template counts and the cache hit rate.
void cmd_reformulate(const RunConfig& cfg, ChatClient& client, std::ostream& log);

/// Localize every query: step-wise over a reformulated corpus when given,
/// otherwise single-shot over the original query texts.
void cmd_localize(const RunConfig& cfg,
                  const std::optional<std::filesystem::path>& reformulated_corpus,
                  std::ostream& log);

/// Score predictions against annotations and write the metrics table.
void cmd_evaluate(const RunConfig& cfg, const std::filesystem::path& predictions_path,
                  const std::string& label, std::ostream& log);

/// Table-layout comparison of two metrics files, with deltas. Writes the
/// text table to cfg.out and a JSON twin next to it.
void cmd_compare(const RunConfig& cfg, const std::filesystem::path& metrics_base,
                 const std::filesystem::path& metrics_other, std::ostream& log);

/// Corpus statistics for a reformulated corpus file.
void cmd_stats(const RunConfig& cfg, const std::filesystem::path& corpus_path,
               std::ostream& log);

} // namespace momentforge::cli
