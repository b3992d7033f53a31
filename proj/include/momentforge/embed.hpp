#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace momentforge {

/// Sentence embedding used to score candidates against query text.
/// The hashed bag-of-words embedder below is the default, deterministic
/// stand-in; anything producing a fixed-dim vector plugs in the same way.
struct QueryEmbedding {
    int dim = 0;
    std::vector<double> values;
};

struct EmbedConfig {
    int dim = 256;
    uint64_t seed = 0;
};

/// Seeded token hash; exposed so corpus generators can pick tokens with
/// non-colliding buckets.
uint64_t token_hash(std::string_view token, uint64_t seed);

/// Bucket in [0, dim) that `token` accumulates into.
int token_bucket(std::string_view token, int dim, uint64_t seed);

/// Hashed bag-of-words: lowercase, split on non-alphanumerics, hash each
/// token to a signed bucket, accumulate, L2-normalize. Empty text (no
/// tokens) gives the zero vector.
QueryEmbedding embed_text(std::string_view text, int dim, uint64_t seed);

inline QueryEmbedding embed_text(std::string_view text, const EmbedConfig& cfg) {
    return embed_text(text, cfg.dim, cfg.seed);
}

double cosine(const std::vector<double>& a, const std::vector<double>& b);

} // namespace momentforge
