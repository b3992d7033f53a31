#include "momentforge/cache.hpp"

#include "momentforge/errors.hpp"
#include "momentforge/sha256.hpp"

#include <json.hpp>

#include <atomic>
#include <chrono>
#include <fstream>
#include <unistd.h>

namespace momentforge {

CompletionCache::CompletionCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
}

std::string CompletionCache::key_for(const PromptText& prompt) {
    char temp[32];
    std::snprintf(temp, sizeof temp, "%.6g", prompt.temperature);
    std::string material = prompt.model_hint;
    material.push_back('\x1f');
    material += temp;
    material.push_back('\x1f');
    material += prompt.text;
    return sha256_hex(material);
}

std::optional<CompletionCache::Entry> CompletionCache::lookup(const std::string& key) const {
    const auto path = dir_ / (key + ".json");
    std::ifstream in(path);
    if (!in) return std::nullopt;
    try {
        const auto doc = nlohmann::json::parse(in);
        Entry entry;
        entry.completion = doc.at("completion").get<std::string>();
        entry.origin = doc.value("source", "live");
        return entry;
    } catch (const nlohmann::json::exception&) {
        // A torn or foreign file is treated as a miss; the next store
        // overwrites it atomically.
        return std::nullopt;
    }
}

void CompletionCache::store(const std::string& key, const PromptText& prompt,
                            const std::string& completion, const std::string& origin) {
    const nlohmann::json entry = {
        {"prompt_hash", sha256_hex(prompt.text)},
        {"model", prompt.model_hint},
        {"temperature", prompt.temperature},
        {"completion", completion},
        {"source", origin},
        {"created_unix",
         std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
             .count()},
    };
    static std::atomic<unsigned> counter{0};
    const auto tmp = dir_ / (key + ".tmp" + std::to_string(::getpid()) + "." +
                             std::to_string(counter.fetch_add(1)));
    const auto final_path = dir_ / (key + ".json");
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw ParseError("cache: cannot write " + tmp.string());
        out << entry.dump(2) << '\n';
        if (!out) throw ParseError("cache: write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, final_path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw ParseError("cache: rename to " + final_path.string() + " failed: " + ec.message());
    }
}

} // namespace momentforge
