#pragma once

#include <map>
#include <string>
#include <vector>

namespace jsguard {

// Sparse token-weight vector; absent keys weigh zero.
struct TfIdfVector {
    std::string sample_id;
    std::map<std::string, double> weights;
};

struct TokenDocument {
    std::string sample_id;
    std::map<std::string, uint64_t> counts;  // token -> occurrences
};

// Standard tf-idf over the corpus: tf is the token's share of its document's
// occurrences, idf is ln(N / document-frequency). Tokens present in every
// document get weight zero and are omitted. Throws std::invalid_argument on
// an empty corpus or a document with no tokens.
std::vector<TfIdfVector> tfidf_vectors(const std::vector<TokenDocument>& corpus);

// Euclidean distance over the union of keys.
double euclidean_distance(const TfIdfVector& a, const TfIdfVector& b);

}  // namespace jsguard
