#include "momentforge/embed.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace momentforge {
namespace {

// FNV-1a over the token bytes, with the seed folded into the offset basis.
uint64_t fnv1a(std::string_view token, uint64_t seed) {
    uint64_t h = 1469598103934665603ULL ^ (seed * 0x9E3779B97F4A7C15ULL);
    for (const char c : token) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

} // namespace

uint64_t token_hash(std::string_view token, uint64_t seed) {
    return fnv1a(token, seed);
}

int token_bucket(std::string_view token, int dim, uint64_t seed) {
    return static_cast<int>(token_hash(token, seed) % static_cast<uint64_t>(dim));
}

QueryEmbedding embed_text(std::string_view text, int dim, uint64_t seed) {
    if (dim < 1) throw std::invalid_argument("embed_text: dim must be >= 1");
    QueryEmbedding out;
    out.dim = dim;
    out.values.assign(static_cast<size_t>(dim), 0.0);

    std::string token;
    auto flush = [&] {
        if (token.empty()) return;
        const uint64_t h = token_hash(token, seed);
        const int bucket = static_cast<int>(h % static_cast<uint64_t>(dim));
        // Sign comes from an independent re-hash, not from the bucket bits.
        const double sign = (splitmix64(h) & 1u) ? 1.0 : -1.0;
        out.values[static_cast<size_t>(bucket)] += sign;
        token.clear();
    };
    for (const char c : text) {
        const auto uc = static_cast<unsigned char>(c);
        if (std::isalnum(uc)) {
            token.push_back(static_cast<char>(std::tolower(uc)));
        } else {
            flush();
        }
    }
    flush();

    double norm_sq = 0.0;
    for (const double v : out.values) norm_sq += v * v;
    if (norm_sq > 0.0) {
        const double inv = 1.0 / std::sqrt(norm_sq);
        for (double& v : out.values) v *= inv;
    }
    return out;
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("cosine: dimension mismatch");
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

} // namespace momentforge
