#include "momentforge/annotations.hpp"

#include "momentforge/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace momentforge {

using nlohmann::json;

size_t AnnotationSet::query_count() const {
    size_t n = 0;
    for (const auto& clip : clips) n += clip.annotations.size();
    return n;
}

void AnnotationSet::validate() const {
    std::set<std::string> clip_ids;
    std::set<std::string> query_ids;
    for (const auto& clip : clips) {
        if (clip.meta.clip_id.empty()) {
            throw ValidationError("annotations: empty clip_id");
        }
        if (!(clip.meta.duration_s > 0.0)) {
            throw ValidationError("annotations: clip '" + clip.meta.clip_id +
                                  "' has non-positive duration");
        }
        if (!clip_ids.insert(clip.meta.clip_id).second) {
            throw ValidationError("annotations: duplicate clip_id '" + clip.meta.clip_id + "'");
        }
        for (const auto& ann : clip.annotations) {
            const auto& q = ann.query;
            if (q.query_id.empty()) {
                throw ValidationError("annotations: empty query_id in clip '" +
                                      clip.meta.clip_id + "'");
            }
            if (!query_ids.insert(q.query_id).second) {
                throw ValidationError("annotations: duplicate query_id '" + q.query_id + "'");
            }
            if (q.text.empty()) {
                throw ValidationError("annotations: query '" + q.query_id + "' has empty text");
            }
            const auto& gt = ann.ground_truth;
            if (!gt.valid()) {
                throw ValidationError("annotations: query '" + q.query_id +
                                      "' has start > end or non-finite bounds");
            }
            if (gt.start < 0.0 || gt.end > clip.meta.duration_s) {
                std::ostringstream msg;
                msg << "annotations: query '" << q.query_id << "' moment [" << gt.start
                    << ", " << gt.end << "] outside clip '" << clip.meta.clip_id
                    << "' duration " << clip.meta.duration_s;
                throw ValidationError(msg.str());
            }
        }
    }
}

AnnotationSet load_annotations(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("load_annotations: cannot open " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError("load_annotations: " + path.string() + ": " + e.what());
    }

    AnnotationSet set;
    try {
        for (const auto& jclip : doc.at("clips")) {
            ClipAnnotations clip;
            clip.meta.clip_id = jclip.at("clip_id").get<std::string>();
            clip.meta.duration_s = jclip.at("duration_s").get<double>();
            for (const auto& jq : jclip.at("queries")) {
                Annotation ann;
                ann.query.query_id = jq.at("query_id").get<std::string>();
                ann.query.text = jq.at("text").get<std::string>();
                if (jq.contains("template") && !jq.at("template").is_null()) {
                    ann.query.template_hint = jq.at("template").get<std::string>();
                }
                ann.ground_truth.start = jq.at("start_s").get<double>();
                ann.ground_truth.end = jq.at("end_s").get<double>();
                clip.annotations.push_back(std::move(ann));
            }
            set.clips.push_back(std::move(clip));
        }
    } catch (const json::exception& e) {
        throw ParseError("load_annotations: " + path.string() + ": " + e.what());
    }
    set.validate();
    return set;
}

void save_annotations(const AnnotationSet& set, const std::filesystem::path& path) {
    json jclips = json::array();
    for (const auto& clip : set.clips) {
        json jqueries = json::array();
        for (const auto& ann : clip.annotations) {
            json jq = {{"query_id", ann.query.query_id},
                       {"text", ann.query.text},
                       {"template", nullptr},
                       {"start_s", ann.ground_truth.start},
                       {"end_s", ann.ground_truth.end}};
            if (ann.query.template_hint) jq["template"] = *ann.query.template_hint;
            jqueries.push_back(std::move(jq));
        }
        jclips.push_back(json{{"clip_id", clip.meta.clip_id},
                              {"duration_s", clip.meta.duration_s},
                              {"queries", std::move(jqueries)}});
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw ParseError("save_annotations: cannot open " + path.string());
    out << json{{"clips", std::move(jclips)}}.dump(2) << '\n';
}

std::vector<TemporalInterval> training_window_filter(
    const std::vector<TemporalInterval>& windows, const TemporalInterval& gt) {
    std::vector<TemporalInterval> kept;
    for (const auto& w : windows) {
        if (intersection_length(w, gt) > 0.0) kept.push_back(w);
    }
    return kept;
}

} // namespace momentforge
