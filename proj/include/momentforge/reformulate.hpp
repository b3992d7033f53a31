#pragma once

#include "momentforge/cache.hpp"
#include "momentforge/chat_client.hpp"
#include "momentforge/core.hpp"
#include "momentforge/instructions.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace momentforge {

struct ReformulatedQuery {
    std::string query_id;
    std::string original_text;
    std::string reformulated_text;
    // How this call obtained the text: live, mock, or cache.
    CompletionSource source = CompletionSource::Mock;
    // Client kind that produced the text originally. Equals `source`
    // except on cache hits; this is what corpus files persist, keeping
    // re-runs byte-identical.
    CompletionSource origin = CompletionSource::Mock;
};

/// Reformulate one query through the client, memoized in the cache.
/// A cache hit short-circuits the client and reports source = cache.
/// Empty completions are an error and are never cached.
ReformulatedQuery reformulate(const Query& query, ChatClient& client, CompletionCache& cache,
                              const std::string& model_hint = "gpt-3.5-turbo",
                              double temperature = 0.0);

/// Split a reformulation into ordered steps on the ", next" / ". then"
/// family of delimiters; each step sheds its "find the moment when/where"
/// prefix and an AFTER/BEFORE marker becomes the step's relation. Text
/// with no recoverable step degrades to a flagged single-step sequence of
/// the whole text. Throws std::invalid_argument only for empty input.
InstructionSequence parse_instructions(const std::string& reformulated_text);

struct ReformulatedCorpusEntry {
    ReformulatedQuery query;
    InstructionSequence steps;
};

/// JSON list of {"query_id", "original", "reformulated",
/// "steps": [{"description", "relation"}], "source"}, ordered by query_id.
void save_reformulated_corpus(const std::vector<ReformulatedCorpusEntry>& entries,
                              const std::filesystem::path& path);
std::vector<ReformulatedCorpusEntry> load_reformulated_corpus(const std::filesystem::path& path);

} // namespace momentforge
