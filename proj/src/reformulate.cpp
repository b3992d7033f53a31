#include "momentforge/reformulate.hpp"

#include "momentforge/errors.hpp"
#include "text_util.hpp"

#include <json.hpp>

#include <array>
#include <fstream>

namespace momentforge {

using detail::starts_with_ci;
using detail::to_lower;
using detail::trim;

const char* to_string(StepRelation r) {
    switch (r) {
        case StepRelation::None: return "NONE";
        case StepRelation::After: return "AFTER";
        case StepRelation::Before: return "BEFORE";
    }
    return "NONE";
}

StepRelation relation_from_string(const std::string& s) {
    if (s == "AFTER") return StepRelation::After;
    if (s == "BEFORE") return StepRelation::Before;
    return StepRelation::None;
}

ReformulatedQuery reformulate(const Query& query, ChatClient& client, CompletionCache& cache,
                              const std::string& model_hint, double temperature) {
    const PromptText prompt = build_prompt(query, model_hint, temperature);
    const std::string key = CompletionCache::key_for(prompt);

    ReformulatedQuery out;
    out.query_id = query.query_id;
    out.original_text = query.text;

    if (auto cached = cache.lookup(key)) {
        out.reformulated_text = std::move(cached->completion);
        out.source = CompletionSource::Cache;
        out.origin = cached->origin == "mock" ? CompletionSource::Mock : CompletionSource::Live;
        return out;
    }

    out.reformulated_text = client.complete(prompt);
    if (trim(out.reformulated_text).empty()) {
        throw TransportError("reformulate: empty completion for query '" + query.query_id + "'");
    }
    cache.store(key, prompt, out.reformulated_text, to_string(client.source()));
    out.source = client.source();
    out.origin = client.source();
    return out;
}

namespace {

constexpr std::array<const char*, 5> kStepDelimiters = {", next ", "; next ", ". next ",
                                                        ", then ", ". then "};

std::vector<std::string> split_steps(const std::string& text) {
    const std::string lower = to_lower(text);
    std::vector<std::string> fragments;
    size_t begin = 0;
    while (begin < text.size()) {
        size_t best_pos = std::string::npos;
        size_t best_len = 0;
        for (const char* delim : kStepDelimiters) {
            const size_t pos = lower.find(delim, begin);
            if (pos < best_pos) {
                best_pos = pos;
                best_len = std::string(delim).size();
            }
        }
        if (best_pos == std::string::npos) {
            fragments.push_back(text.substr(begin));
            break;
        }
        fragments.push_back(text.substr(begin, best_pos - begin));
        begin = best_pos + best_len;
    }
    return fragments;
}

struct Marker {
    const char* text;
    StepRelation relation;
};

constexpr std::array<Marker, 6> kLeadingMarkers = {{
    {"after this", StepRelation::After},
    {"after that", StepRelation::After},
    {"before this", StepRelation::Before},
    {"before that", StepRelation::Before},
    {"when", StepRelation::None},
    {"where", StepRelation::None},
}};

bool word_boundary(const std::string& s, size_t pos) {
    return pos >= s.size() || !std::isalnum(static_cast<unsigned char>(s[pos]));
}

InstructionStep parse_step(const std::string& fragment) {
    InstructionStep step;
    const std::string lower = to_lower(fragment);
    if (lower.find("after this") != std::string::npos ||
        lower.find("after that") != std::string::npos) {
        step.relation = StepRelation::After;
    } else if (lower.find("before this") != std::string::npos ||
               lower.find("before that") != std::string::npos) {
        step.relation = StepRelation::Before;
    }

    std::string rest = trim(fragment);
    if (starts_with_ci(rest, "find the moment")) rest = trim(rest.substr(15));
    for (bool stripped = true; stripped;) {
        stripped = false;
        for (const auto& marker : kLeadingMarkers) {
            const size_t len = std::string(marker.text).size();
            if (starts_with_ci(rest, marker.text) && word_boundary(rest, len)) {
                rest = trim(rest.substr(len));
                stripped = true;
                break;
            }
        }
    }
    if (!rest.empty() && rest.back() == '.') rest.pop_back();
    step.description = trim(rest);
    if (step.description.empty()) step.description = detail::trim_sentence(fragment);
    // A description with no word characters is not a usable instruction.
    const bool has_word = std::any_of(step.description.begin(), step.description.end(),
                                      [](unsigned char c) { return std::isalnum(c); });
    if (!has_word) step.description.clear();
    return step;
}

} // namespace

InstructionSequence parse_instructions(const std::string& reformulated_text) {
    if (trim(reformulated_text).empty()) {
        throw std::invalid_argument("parse_instructions: empty text");
    }

    InstructionSequence seq;
    for (const std::string& fragment : split_steps(reformulated_text)) {
        if (trim(fragment).empty()) continue;
        InstructionStep step = parse_step(fragment);
        if (step.description.empty()) continue;
        seq.steps.push_back(std::move(step));
    }
    if (seq.steps.empty()) {
        seq.steps.push_back({trim(reformulated_text), StepRelation::None});
        seq.fallback = true;
    }
    // A relation on the first step has no anchor to refer to.
    seq.steps.front().relation = StepRelation::None;
    return seq;
}

void save_reformulated_corpus(const std::vector<ReformulatedCorpusEntry>& entries,
                              const std::filesystem::path& path) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& entry : entries) {
        nlohmann::json steps = nlohmann::json::array();
        for (const auto& step : entry.steps.steps) {
            steps.push_back({{"description", step.description},
                             {"relation", to_string(step.relation)}});
        }
        list.push_back({{"query_id", entry.query.query_id},
                        {"original", entry.query.original_text},
                        {"reformulated", entry.query.reformulated_text},
                        {"steps", std::move(steps)},
                        {"source", to_string(entry.query.origin)}});
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw ParseError("save_reformulated_corpus: cannot open " + path.string());
    out << list.dump(2) << '\n';
}

std::vector<ReformulatedCorpusEntry> load_reformulated_corpus(
    const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("load_reformulated_corpus: cannot open " + path.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("load_reformulated_corpus: " + path.string() + ": " + e.what());
    }
    std::vector<ReformulatedCorpusEntry> entries;
    try {
        for (const auto& item : doc) {
            ReformulatedCorpusEntry entry;
            entry.query.query_id = item.at("query_id").get<std::string>();
            entry.query.original_text = item.at("original").get<std::string>();
            entry.query.reformulated_text = item.at("reformulated").get<std::string>();
            const std::string source = item.at("source").get<std::string>();
            entry.query.source = source == "live"    ? CompletionSource::Live
                                 : source == "cache" ? CompletionSource::Cache
                                                     : CompletionSource::Mock;
            entry.query.origin = entry.query.source;
            for (const auto& jstep : item.at("steps")) {
                entry.steps.steps.push_back(
                    {jstep.at("description").get<std::string>(),
                     relation_from_string(jstep.at("relation").get<std::string>())});
            }
            if (entry.steps.steps.empty()) {
                throw ParseError("load_reformulated_corpus: query '" + entry.query.query_id +
                                 "' has no steps");
            }
            entries.push_back(std::move(entry));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("load_reformulated_corpus: " + path.string() + ": " + e.what());
    }
    return entries;
}

} // namespace momentforge
