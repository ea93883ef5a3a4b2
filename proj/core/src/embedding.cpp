#include "skillforge/embedding.hpp"

#include "skillforge/error.hpp"
#include "skillforge/text_util.hpp"

#include <cmath>

namespace skillforge::identify {

EmbeddingVector EmbeddingVector::from_components(std::vector<double> components) {
    EmbeddingVector v;
    v.dims = std::move(components);
    double sq = 0.0;
    for (double x : v.dims) sq += x * x;
    v.norm = std::sqrt(sq);
    return v;
}

EmbeddingVector embed_text(std::string_view input, std::size_t dims) {
    if (dims < 8) {
        throw Error(Errc::InvalidArgument, "embedding dims must be >= 8, got " +
                                               std::to_string(dims));
    }
    std::vector<double> counts(dims, 0.0);
    for (const auto& token : text::tokenize(input)) {
        counts[text::fnv1a64(token) % dims] += 1.0;
    }
    auto v = EmbeddingVector::from_components(std::move(counts));
    if (v.norm > 0.0) {
        for (double& x : v.dims) x /= v.norm;
        v.norm = 1.0;
    }
    return v;
}

double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b) {
    if (a.dims.size() != b.dims.size()) {
        throw Error(Errc::DimensionMismatch,
                    std::to_string(a.dims.size()) + " vs " + std::to_string(b.dims.size()));
    }
    if (a.norm <= 0.0 || b.norm <= 0.0) {
        throw Error(Errc::ZeroNormVector, "cosine undefined for zero-norm vectors");
    }
    double dot = 0.0;
    for (std::size_t i = 0; i < a.dims.size(); ++i) dot += a.dims[i] * b.dims[i];
    return dot / (a.norm * b.norm);
}

} // namespace skillforge::identify
