#include "momentforge/chat_client.hpp"

#include "momentforge/errors.hpp"
#include "text_util.hpp"

#include <httplib.h>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <thread>

namespace momentforge {

using detail::to_lower;
using detail::trim;
using detail::trim_sentence;

namespace {

size_t find_ci(const std::string& haystack, const std::string& needle) {
    return to_lower(haystack).find(to_lower(needle));
}

/// Substring after the first case-insensitive occurrence of `marker`, or
/// the whole string when absent.
std::string after_marker(const std::string& s, const std::string& marker) {
    const size_t pos = find_ci(s, marker);
    if (pos == std::string::npos) return s;
    return trim(s.substr(pos + marker.size()));
}

struct RelationSplit {
    std::string left;
    std::string right;
    std::string relation; // "after" or "before"
};

/// Split around the earlier of " after " / " before ".
std::optional<RelationSplit> split_on_relation(const std::string& s) {
    const size_t after_pos = find_ci(s, " after ");
    const size_t before_pos = find_ci(s, " before ");
    if (after_pos == std::string::npos && before_pos == std::string::npos) return std::nullopt;
    RelationSplit out;
    size_t pos;
    size_t marker_len;
    if (after_pos <= before_pos) {
        pos = after_pos;
        marker_len = 7;
        out.relation = "after";
    } else {
        pos = before_pos;
        marker_len = 8;
        out.relation = "before";
    }
    out.left = trim(s.substr(0, pos));
    out.right = trim(s.substr(pos + marker_len));
    return out;
}

std::string strip_prefix_ci(const std::string& s, const std::string& prefix) {
    if (detail::starts_with_ci(s, prefix)) return trim(s.substr(prefix.size()));
    return s;
}

/// Truncate at the first case-insensitive occurrence of `marker`.
std::string up_to(const std::string& s, const std::string& marker) {
    const size_t pos = find_ci(s, marker);
    if (pos == std::string::npos) return s;
    return trim(s.substr(0, pos));
}

const char* kExample1Query = "What did I sprinkle on the cooking pan?";
const char* kExample1Output = "find the moment when I sprinkled something on the cooking pan.";
const char* kExample2Query = "Did I turn off the cooker after I fried the meat?";
const char* kExample2Output =
    "find the moment when I fried the meat, next find the moment after this with the cooker "
    "(I may turn off the cooker).";

} // namespace

const char* to_string(CompletionSource s) {
    switch (s) {
        case CompletionSource::Live: return "live";
        case CompletionSource::Mock: return "mock";
        case CompletionSource::Cache: return "cache";
    }
    return "unknown";
}

std::string MockChatClient::rewrite_query(const std::string& query_text) {
    const std::string q = trim(query_text);
    if (to_lower(q) == to_lower(kExample1Query)) return kExample1Output;
    if (to_lower(q) == to_lower(kExample2Query)) return kExample2Output;

    const std::string core = trim_sentence(q);
    const auto tpl = match_template(q);
    if (!tpl) return "find the moment when " + core + ".";

    switch (*tpl) {
        case TemplateId::ObjWhereBeforeAfter: {
            const auto split = split_on_relation(core);
            if (!split) break;
            const std::string object = strip_prefix_ci(after_marker(split->left, "where is"), "the ");
            return "find the moment when " + split->right + ", next find the moment " +
                   split->relation + " this with the " + object + ".";
        }
        case TemplateId::ObjWhere:
            return "find the moment when I saw " + after_marker(core, "where is") + ".";
        case TemplateId::PutInX:
            return "find the moment when I put something in " +
                   after_marker(core, "what did i put in") + ".";
        case TemplateId::Quantity:
            return "find the moment when I was handling the " +
                   up_to(after_marker(core, "how many"), " did ") + ".";
        case TemplateId::WhatXDidIY: {
            const std::string rest = after_marker(core, "what");
            const std::string x =
                detail::starts_with_ci(rest, "did ") ? std::string() : up_to(rest, " did ");
            const std::string y = after_marker(core, "did i ");
            if (x.empty()) return "find the moment when I " + y + ".";
            return "find the moment when I " + y + " and notice the " + x + ".";
        }
        case TemplateId::LocationSeen:
            return "find the moment when I saw " + after_marker(core, "see") +
                   " and identify the location around me.";
        case TemplateId::WhatXIsY: {
            const std::string attribute = up_to(after_marker(core, "what"), " is ");
            const std::string object = after_marker(core, " is ");
            return "find the moment when I looked at " + object + " and its " + attribute +
                   " is visible.";
        }
        case TemplateId::ObjectState: {
            const auto split = split_on_relation(core);
            if (!split) break;
            const std::string action = strip_prefix_ci(split->left, "did i ");
            return "find the moment when " + split->right + ", next find the moment " +
                   split->relation + " this where I " + action + ".";
        }
        case TemplateId::WhereIsMyX:
            return "find the moment when I last used my " + after_marker(core, "where is my") +
                   ".";
        case TemplateId::WhereDidIPutX:
            return "find the moment when I put " + after_marker(core, "where did i put") +
                   " somewhere.";
        case TemplateId::InteractDuringX:
            return "find the moment when " + after_marker(core, "when") +
                   " and see who I interacted with.";
        case TemplateId::TalkToInX:
            return "find the moment when I was in " + after_marker(core, " in ") +
                   " and talked to someone.";
        case TemplateId::InteractWithRoleX: {
            std::string role = after_marker(core, "role");
            if (role == core) role = after_marker(core, "with");
            return "find the moment when I interacted with the " + role + ".";
        }
    }
    return "find the moment when " + core + ".";
}

std::string MockChatClient::complete(const PromptText& prompt) {
    const std::string marker = "Now reformulate this query ";
    const size_t pos = prompt.text.rfind(marker);
    std::string query =
        pos == std::string::npos ? prompt.text : prompt.text.substr(pos + marker.size());
    if (!query.empty() && query.back() == ':') query.pop_back();
    return rewrite_query(query);
}

HttpChatClient::HttpChatClient(std::string url, std::string api_key, int max_attempts,
                               int initial_backoff_ms)
    : url_(std::move(url)),
      api_key_(std::move(api_key)),
      max_attempts_(max_attempts),
      initial_backoff_ms_(initial_backoff_ms) {}

std::string HttpChatClient::complete(const PromptText& prompt) {
    // Split "http://host:port/path" into client target and request path.
    const size_t scheme_end = url_.find("://");
    const size_t host_begin = scheme_end == std::string::npos ? 0 : scheme_end + 3;
    const size_t path_begin = url_.find('/', host_begin);
    const std::string base = path_begin == std::string::npos ? url_ : url_.substr(0, path_begin);
    const std::string path = path_begin == std::string::npos ? "/" : url_.substr(path_begin);

    const nlohmann::json body = {
        {"model", prompt.model_hint},
        {"messages", {{{"role", "user"}, {"content", prompt.text}}}},
        {"temperature", prompt.temperature},
    };
    httplib::Headers headers;
    if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

    std::string last_error;
    for (int attempt = 0; attempt < max_attempts_; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(
                std::chrono::milliseconds(initial_backoff_ms_ << (attempt - 1)));
        }
        httplib::Client client(base);
        client.set_connection_timeout(10, 0);
        client.set_read_timeout(60, 0);
        auto res = client.Post(path, headers, body.dump(), "application/json");
        if (!res) {
            last_error = "connection failed (" + httplib::to_string(res.error()) + ")";
            continue;
        }
        if (res->status != 200) {
            last_error = "HTTP " + std::to_string(res->status);
            continue;
        }
        try {
            const auto doc = nlohmann::json::parse(res->body);
            return doc.at("choices").at(0).at("message").at("content").get<std::string>();
        } catch (const nlohmann::json::exception& e) {
            last_error = std::string("malformed completion response: ") + e.what();
        }
    }
    throw TransportError("chat completion failed after " + std::to_string(max_attempts_) +
                         " attempts: " + last_error);
}

std::unique_ptr<ChatClient> make_default_client() {
    const char* url = std::getenv("MOMENTFORGE_API_URL");
    if (url != nullptr && *url != '\0') {
        const char* key = std::getenv("MOMENTFORGE_API_KEY");
        return std::make_unique<HttpChatClient>(url, key ? key : "");
    }
    return std::make_unique<MockChatClient>();
}

} // namespace momentforge
