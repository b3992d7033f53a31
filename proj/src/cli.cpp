#include "momentforge/cli.hpp"

#include "momentforge/errors.hpp"
#include "momentforge/localizer.hpp"
#include "momentforge/reformulate.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

namespace momentforge::cli {

using nlohmann::json;

void save_predictions(const std::map<std::string, QueryPredictions>& preds,
                      const std::filesystem::path& path) {
    json list = json::array();
    for (const auto& [qid, qp] : preds) { // std::map iterates query_ids lexicographically
        int rank = 1;
        for (const auto& p : qp.predictions) {
            list.push_back({{"query_id", qid},
                            {"rank", rank++},
                            {"start_s", p.interval.start},
                            {"end_s", p.interval.end},
                            {"score", p.score},
                            {"fallback", qp.fallback}});
        }
        if (qp.predictions.empty()) {
            // Keep an explicit empty marker so evaluate sees the query.
            list.push_back({{"query_id", qid},
                            {"rank", 0},
                            {"start_s", nullptr},
                            {"end_s", nullptr},
                            {"score", nullptr},
                            {"fallback", qp.fallback}});
        }
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw ParseError("save_predictions: cannot open " + path.string());
    out << list.dump(2) << '\n';
}

std::map<std::string, QueryPredictions> load_predictions(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("load_predictions: cannot open " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError("load_predictions: " + path.string() + ": " + e.what());
    }
    std::map<std::string, QueryPredictions> out;
    try {
        for (const auto& row : doc) {
            const std::string qid = row.at("query_id").get<std::string>();
            auto& slot = out[qid];
            slot.fallback = slot.fallback || row.at("fallback").get<bool>();
            if (row.at("rank").get<int>() == 0) continue; // empty marker
            Prediction p;
            p.interval.start = row.at("start_s").get<double>();
            p.interval.end = row.at("end_s").get<double>();
            p.score = row.at("score").get<double>();
            slot.predictions.push_back(p);
        }
    } catch (const json::exception& e) {
        throw ParseError("load_predictions: " + path.string() + ": " + e.what());
    }
    for (auto& [qid, qp] : out) {
        (void)qid;
        sort_predictions(qp.predictions);
    }
    return out;
}

void cmd_synth(const SynthSpec& spec, const std::filesystem::path& out_dir, std::ostream& log) {
    const SynthCorpus corpus = synth_corpus(spec);
    write_corpus(corpus, out_dir);
    log << "synth: " << corpus.annotations.clips.size() << " clips, "
        << corpus.annotations.query_count() << " queries -> " << out_dir.string() << "\n";
}

void cmd_reformulate(const RunConfig& cfg, ChatClient& client, std::ostream& log) {
    const AnnotationSet annotations = load_annotations(cfg.annotations);
    CompletionCache cache(cfg.cache_dir);

    std::vector<ReformulatedCorpusEntry> entries;
    std::map<std::string, size_t> template_counts;
    size_t cache_hits = 0;
    for (const auto& clip : annotations.clips) {
        for (const auto& ann : clip.annotations) {
            ReformulatedCorpusEntry entry;
            entry.query = reformulate(ann.query, client, cache, cfg.model_hint, cfg.temperature);
            entry.steps = parse_instructions(entry.query.reformulated_text);
            if (entry.query.source == CompletionSource::Cache) ++cache_hits;
            const auto tpl = match_template(ann.query.text);
            template_counts[tpl ? to_string(*tpl) : "UNMATCHED"] += 1;
            entries.push_back(std::move(entry));
        }
    }
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        return a.query.query_id < b.query.query_id;
    });
    save_reformulated_corpus(entries, cfg.out);

    for (const auto& [name, count] : template_counts) {
        log << "template " << name << ": " << count << "\n";
    }
    const double rate = entries.empty() ? 0.0 : 100.0 * cache_hits / entries.size();
    log << "reformulated " << entries.size() << " queries, cache hit rate " << format_pct(rate)
        << "% -> " << cfg.out.string() << "\n";
}

void cmd_localize(const RunConfig& cfg,
                  const std::optional<std::filesystem::path>& reformulated_corpus,
                  std::ostream& log) {
    const AnnotationSet annotations = load_annotations(cfg.annotations);

    std::map<std::string, InstructionSequence> steps_by_id;
    if (reformulated_corpus) {
        for (auto& entry : load_reformulated_corpus(*reformulated_corpus)) {
            steps_by_id.emplace(entry.query.query_id, std::move(entry.steps));
        }
    }

    const Embedder embedder = make_embedder(cfg.embed);
    std::map<std::string, QueryPredictions> results;
    size_t fallbacks = 0;
    for (const auto& clip : annotations.clips) {
        const auto feature_path = cfg.features_dir / (clip.meta.clip_id + ".mlf");
        if (!std::filesystem::exists(feature_path)) {
            throw ValidationError("localize: missing feature file for clip '" +
                                  clip.meta.clip_id + "' (" + feature_path.string() + ")");
        }
        const FeatureMatrix fm = load_features(feature_path);
        if (fm.dim != cfg.embed.dim) {
            throw ValidationError("localize: feature dim " + std::to_string(fm.dim) +
                                  " for clip '" + clip.meta.clip_id +
                                  "' does not match embedder dim " +
                                  std::to_string(cfg.embed.dim));
        }
        // feature coverage must agree with the annotated duration to within one step
        const double covered = fm.num_steps * fm.step_seconds;
        if (std::abs(covered - clip.meta.duration_s) > fm.step_seconds) {
            throw ValidationError("localize: features for clip '" + clip.meta.clip_id +
                                  "' cover " + std::to_string(covered) + "s but the clip is " +
                                  std::to_string(clip.meta.duration_s) + "s");
        }
        for (const auto& ann : clip.annotations) {
            QueryPredictions qp;
            const auto it = steps_by_id.find(ann.query.query_id);
            if (it != steps_by_id.end()) {
                LocalizeResult res = localize_stepwise(fm, clip.meta, it->second, embedder,
                                                       cfg.window, cfg.top_k, cfg.nms_threshold);
                qp.predictions = std::move(res.predictions);
                qp.fallback = res.fallback;
                if (qp.fallback) ++fallbacks;
            } else {
                qp.predictions = localize_single(fm, clip.meta, embedder(ann.query.text),
                                                 cfg.window, cfg.top_k, cfg.nms_threshold);
            }
            results.emplace(ann.query.query_id, std::move(qp));
        }
    }
    save_predictions(results, cfg.out);
    log << "localized " << results.size() << " queries"
        << (reformulated_corpus ? " (step-wise, " + std::to_string(fallbacks) + " fallbacks)"
                                : " (single-step)")
        << " -> " << cfg.out.string() << "\n";
}

void cmd_evaluate(const RunConfig& cfg, const std::filesystem::path& predictions_path,
                  const std::string& label, std::ostream& log) {
    const AnnotationSet annotations = load_annotations(cfg.annotations);
    const auto loaded = load_predictions(predictions_path);
    std::map<std::string, std::vector<Prediction>> ranked;
    for (const auto& [qid, qp] : loaded) ranked.emplace(qid, qp.predictions);

    MetricsTable table = aggregate(ranked, annotations, cfg.metrics);
    table.label = label;
    save_metrics(table, cfg.out);
    log << metrics_to_text(table);
}

void cmd_compare(const RunConfig& cfg, const std::filesystem::path& metrics_base,
                 const std::filesystem::path& metrics_other, std::ostream& log) {
    const MetricsTable base = load_metrics(metrics_base);
    const MetricsTable other = load_metrics(metrics_other);
    const ComparisonReport report = compare_report(base, other);

    const std::string text = report.to_text();
    std::ofstream out(cfg.out, std::ios::trunc);
    if (!out) throw ParseError("compare: cannot open " + cfg.out.string());
    out << text;

    json cells = json::array();
    const auto& spec = base.spec;
    for (size_t ti = 0; ti < spec.iou_thresholds.size(); ++ti) {
        for (size_t ri = 0; ri < spec.ranks.size(); ++ri) {
            const size_t idx = ti * spec.ranks.size() + ri;
            cells.push_back({{"n", spec.ranks[ri]},
                             {"iou", spec.iou_thresholds[ti]},
                             {"base_pct", base.recall_pct[idx]},
                             {"other_pct", other.recall_pct[idx]},
                             {"delta", report.deltas[idx]}});
        }
    }
    const json doc = {{"base_label", base.label},
                      {"other_label", other.label},
                      {"cells", std::move(cells)}};
    auto json_path = cfg.out;
    json_path.replace_extension(json_path.extension() == ".json" ? ".twin.json" : ".json");
    std::ofstream jout(json_path, std::ios::trunc);
    if (!jout) throw ParseError("compare: cannot open " + json_path.string());
    jout << doc.dump(2) << '\n';

    log << text;
}

void cmd_stats(const RunConfig& cfg, const std::filesystem::path& corpus_path,
               std::ostream& log) {
    const auto entries = load_reformulated_corpus(corpus_path);
    const CorpusStats stats = corpus_stats(entries);

    json counts = json::object();
    for (const auto& [name, count] : stats.template_counts) counts[name] = count;
    const json doc = {{"query_count", stats.query_count},
                      {"mean_words_original", stats.mean_words_original},
                      {"mean_words_reformulated", stats.mean_words_reformulated},
                      {"mean_steps", stats.mean_steps},
                      {"template_counts", std::move(counts)}};
    std::ofstream out(cfg.out, std::ios::trunc);
    if (!out) throw ParseError("stats: cannot open " + cfg.out.string());
    out << doc.dump(2) << '\n';

    log << "original " << format_pct(stats.mean_words_original) << " -> reformulated "
        << format_pct(stats.mean_words_reformulated) << " words\n";
}

} // namespace momentforge::cli
