#include "momentforge/metrics.hpp"

#include "momentforge/errors.hpp"
#include "momentforge/prompt.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace momentforge {

bool MetricSpec::valid() const {
    if (ranks.empty() || iou_thresholds.empty()) return false;
    for (size_t i = 0; i < ranks.size(); ++i) {
        if (ranks[i] < 1) return false;
        if (i > 0 && ranks[i] <= ranks[i - 1]) return false;
    }
    for (size_t i = 0; i < iou_thresholds.size(); ++i) {
        if (!(iou_thresholds[i] > 0.0 && iou_thresholds[i] <= 1.0)) return false;
        if (i > 0 && iou_thresholds[i] <= iou_thresholds[i - 1]) return false;
    }
    return true;
}

bool hit(const std::vector<Prediction>& preds, const TemporalInterval& gt, int n, double m) {
    const size_t limit = std::min(preds.size(), static_cast<size_t>(n));
    for (size_t i = 0; i < limit; ++i) {
        if (iou(preds[i].interval, gt) > m) return true;
    }
    return false;
}

MetricsTable aggregate(const std::map<std::string, std::vector<Prediction>>& results,
                       const AnnotationSet& annotations, const MetricSpec& spec) {
    if (!spec.valid()) throw ValidationError("aggregate: invalid metric spec");

    std::map<std::string, const TemporalInterval*> gt_by_id;
    for (const auto& clip : annotations.clips) {
        for (const auto& ann : clip.annotations) {
            gt_by_id.emplace(ann.query.query_id, &ann.ground_truth);
        }
    }
    std::string orphans;
    for (const auto& [qid, preds] : results) {
        (void)preds;
        if (gt_by_id.find(qid) == gt_by_id.end()) {
            orphans += orphans.empty() ? qid : ", " + qid;
        }
    }
    if (!orphans.empty()) {
        throw ValidationError("aggregate: predictions for unknown query_ids: " + orphans);
    }

    MetricsTable table;
    table.spec = spec;
    table.query_count = gt_by_id.size();
    table.recall_pct.assign(spec.iou_thresholds.size() * spec.ranks.size(), 0.0);
    if (table.query_count == 0) return table;

    static const std::vector<Prediction> kNoPredictions;
    for (const auto& [qid, gt] : gt_by_id) {
        const auto it = results.find(qid);
        const auto& preds = it == results.end() ? kNoPredictions : it->second;
        for (size_t ti = 0; ti < spec.iou_thresholds.size(); ++ti) {
            for (size_t ri = 0; ri < spec.ranks.size(); ++ri) {
                if (hit(preds, *gt, spec.ranks[ri], spec.iou_thresholds[ti])) {
                    table.recall_pct[ti * spec.ranks.size() + ri] += 1.0;
                }
            }
        }
    }
    for (double& v : table.recall_pct) v = 100.0 * v / static_cast<double>(table.query_count);
    return table;
}

size_t word_count(const std::string& text) {
    std::istringstream stream(text);
    std::string word;
    size_t count = 0;
    while (stream >> word) ++count;
    return count;
}

CorpusStats corpus_stats(const std::vector<ReformulatedCorpusEntry>& entries) {
    if (entries.empty()) throw ValidationError("corpus_stats: empty corpus");
    CorpusStats stats;
    stats.query_count = entries.size();
    size_t orig_words = 0, reform_words = 0, steps = 0;
    for (const auto& entry : entries) {
        orig_words += word_count(entry.query.original_text);
        reform_words += word_count(entry.query.reformulated_text);
        steps += entry.steps.steps.size();
        const auto tpl = match_template(entry.query.original_text);
        stats.template_counts[tpl ? to_string(*tpl) : "UNMATCHED"] += 1;
    }
    const double n = static_cast<double>(entries.size());
    stats.mean_words_original = static_cast<double>(orig_words) / n;
    stats.mean_words_reformulated = static_cast<double>(reform_words) / n;
    stats.mean_steps = static_cast<double>(steps) / n;
    return stats;
}

std::string format_pct(double value) {
    const long long scaled = std::llround(value * 100.0); // half away from zero
    std::ostringstream os;
    if (scaled < 0) os << '-';
    const long long mag = std::llabs(scaled);
    os << mag / 100 << '.' << (mag % 100 < 10 ? "0" : "") << mag % 100;
    return os.str();
}

ComparisonReport compare_report(const MetricsTable& base, const MetricsTable& other) {
    if (!(base.spec == other.spec)) {
        throw ValidationError("compare_report: metric specs differ between tables");
    }
    ComparisonReport report;
    report.base = base;
    report.other = other;
    report.deltas.resize(base.recall_pct.size());
    for (size_t i = 0; i < base.recall_pct.size(); ++i) {
        report.deltas[i] = other.recall_pct[i] - base.recall_pct[i];
    }
    return report;
}

namespace {

std::vector<std::string> column_headers(const MetricSpec& spec) {
    std::vector<std::string> headers;
    for (const double m : spec.iou_thresholds) {
        std::ostringstream label;
        label << "IoU=" << m;
        for (const int n : spec.ranks) {
            headers.push_back(label.str() + " R@" + std::to_string(n));
        }
    }
    return headers;
}

void format_row(std::ostream& os, const std::string& label,
                const std::vector<double>& values, size_t label_width, size_t col_width,
                bool signed_values) {
    os << label << std::string(label_width - label.size(), ' ');
    for (const double v : values) {
        std::string cell = format_pct(v);
        if (signed_values && v >= 0.0) cell = "+" + cell;
        os << std::string(col_width > cell.size() ? col_width - cell.size() : 1, ' ') << cell;
    }
    os << '\n';
}

} // namespace

std::string ComparisonReport::to_text() const {
    const auto headers = column_headers(base.spec);
    size_t label_width = std::max({base.label.size(), other.label.size(),
                                   std::string("delta").size(), std::string("Method").size()}) +
                         2;
    size_t col_width = 0;
    for (const auto& h : headers) col_width = std::max(col_width, h.size());
    col_width += 2;

    std::ostringstream os;
    os << "Method" << std::string(label_width - 6, ' ');
    for (const auto& h : headers) {
        os << std::string(col_width - h.size(), ' ') << h;
    }
    os << '\n';
    format_row(os, base.label, base.recall_pct, label_width, col_width, false);
    format_row(os, other.label, other.recall_pct, label_width, col_width, false);
    format_row(os, "delta", deltas, label_width, col_width, true);
    return os.str();
}

std::string metrics_to_text(const MetricsTable& table) {
    const auto headers = column_headers(table.spec);
    size_t label_width = std::max(table.label.size(), std::string("Method").size()) + 2;
    size_t col_width = 0;
    for (const auto& h : headers) col_width = std::max(col_width, h.size());
    col_width += 2;

    std::ostringstream os;
    os << "Method" << std::string(label_width - 6, ' ');
    for (const auto& h : headers) os << std::string(col_width - h.size(), ' ') << h;
    os << '\n';
    format_row(os, table.label, table.recall_pct, label_width, col_width, false);
    return os.str();
}

void save_metrics(const MetricsTable& table, const std::filesystem::path& path) {
    nlohmann::json cells = nlohmann::json::array();
    for (size_t ti = 0; ti < table.spec.iou_thresholds.size(); ++ti) {
        for (size_t ri = 0; ri < table.spec.ranks.size(); ++ri) {
            cells.push_back({{"n", table.spec.ranks[ri]},
                             {"iou", table.spec.iou_thresholds[ti]},
                             {"recall_pct", table.cell(ti, ri)}});
        }
    }
    const nlohmann::json doc = {{"label", table.label},
                                {"query_count", table.query_count},
                                {"cells", std::move(cells)}};
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw ParseError("save_metrics: cannot open " + path.string());
    out << doc.dump(2) << '\n';
}

MetricsTable load_metrics(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("load_metrics: cannot open " + path.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("load_metrics: " + path.string() + ": " + e.what());
    }

    MetricsTable table;
    try {
        table.label = doc.at("label").get<std::string>();
        table.query_count = doc.at("query_count").get<size_t>();
        table.spec.ranks.clear();
        table.spec.iou_thresholds.clear();
        // Cells are stored threshold-major; recover the axes in order.
        for (const auto& cell : doc.at("cells")) {
            const int n = cell.at("n").get<int>();
            const double m = cell.at("iou").get<double>();
            if (std::find(table.spec.ranks.begin(), table.spec.ranks.end(), n) ==
                table.spec.ranks.end()) {
                table.spec.ranks.push_back(n);
            }
            if (table.spec.iou_thresholds.empty() || table.spec.iou_thresholds.back() != m) {
                if (std::find(table.spec.iou_thresholds.begin(), table.spec.iou_thresholds.end(),
                              m) == table.spec.iou_thresholds.end()) {
                    table.spec.iou_thresholds.push_back(m);
                }
            }
            table.recall_pct.push_back(cell.at("recall_pct").get<double>());
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("load_metrics: " + path.string() + ": " + e.what());
    }
    if (!table.spec.valid() ||
        table.recall_pct.size() != table.spec.ranks.size() * table.spec.iou_thresholds.size()) {
        throw ValidationError("load_metrics: malformed cell layout in " + path.string());
    }
    return table;
}

} // namespace momentforge
