#pragma once

#include "momentforge/prompt.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace momentforge {

enum class CompletionSource;

/// Content-addressed completion cache: one JSON file per key under a
/// directory, written via temp-file + rename so concurrent writers of the
/// same key are safe (identical content, last writer wins).
class CompletionCache {
public:
    struct Entry {
        std::string completion;
        // Client kind that produced the completion originally; hits keep
        // reporting it so re-runs emit identical corpus files.
        std::string origin;
    };

    explicit CompletionCache(std::filesystem::path dir);

    /// Key = SHA-256 over (model_hint, temperature, prompt text).
    static std::string key_for(const PromptText& prompt);

    std::optional<Entry> lookup(const std::string& key) const;
    void store(const std::string& key, const PromptText& prompt, const std::string& completion,
               const std::string& origin);

    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path dir_;
};

} // namespace momentforge
