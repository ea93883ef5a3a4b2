#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace skillforge::identify {

struct EmbeddingVector {
    std::vector<double> dims;
    double norm = 0.0;

    static EmbeddingVector from_components(std::vector<double> components);

    bool operator==(const EmbeddingVector&) const = default;
};

// Pluggable text embedder. The built-in is a deterministic hashed-token
// vectorizer; a learned bi-encoder can be swapped in behind this interface.
class EmbeddingProvider {
  public:
    virtual ~EmbeddingProvider() = default;
    virtual EmbeddingVector embed(std::string_view text, std::size_t dims) const = 0;
};

// Deterministic default: lowercase alphanumeric tokens, each hashed with
// FNV-1a 64-bit modulo dims, counts accumulated, then L2-normalized. The
// zero vector comes back only for token-free input. dims must be >= 8.
EmbeddingVector embed_text(std::string_view input, std::size_t dims);

class HashedTokenEmbedder : public EmbeddingProvider {
  public:
    EmbeddingVector embed(std::string_view input, std::size_t dims) const override {
        return embed_text(input, dims);
    }
};

// (a.b) / (|a||b|). Throws DimensionMismatch / ZeroNormVector.
double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b);

} // namespace skillforge::identify
