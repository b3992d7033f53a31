#pragma once

#include "momentforge/prompt.hpp"

#include <memory>
#include <string>

namespace momentforge {

/// Where a reformulation came from.
enum class CompletionSource { Live, Mock, Cache };

const char* to_string(CompletionSource s);

/// Chat-completion client boundary. Implementations must be re-entrant.
class ChatClient {
public:
    virtual ~ChatClient() = default;

    /// Completion text for the prompt. Throws TransportError on failure.
    virtual std::string complete(const PromptText& prompt) = 0;

    /// Source tag recorded on reformulations served by this client.
    virtual CompletionSource source() const = 0;
};

/// Deterministic offline stand-in for the live endpoint: extracts the user
/// query from the prompt tail and rewrites it through a fixed per-template
/// table. The prompt's own two worked examples are reproduced verbatim.
class MockChatClient final : public ChatClient {
public:
    std::string complete(const PromptText& prompt) override;
    CompletionSource source() const override { return CompletionSource::Mock; }

    /// The rewrite itself, usable without a prompt round trip.
    static std::string rewrite_query(const std::string& query_text);
};

/// POSTs {"model", "messages": [{"role": "user", "content": ...}],
/// "temperature"} to `url` and reads choices[0].message.content. Retries
/// transport failures with exponential backoff before giving up.
class HttpChatClient final : public ChatClient {
public:
    HttpChatClient(std::string url, std::string api_key, int max_attempts = 3,
                   int initial_backoff_ms = 1000);

    std::string complete(const PromptText& prompt) override;
    CompletionSource source() const override { return CompletionSource::Live; }

private:
    std::string url_;
    std::string api_key_;
    int max_attempts_;
    int initial_backoff_ms_;
};

/// Live client when MOMENTFORGE_API_URL is set (key from
/// MOMENTFORGE_API_KEY), otherwise the mock.
std::unique_ptr<ChatClient> make_default_client();

} // namespace momentforge
