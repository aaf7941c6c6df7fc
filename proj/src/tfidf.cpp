#include "jsguard/tfidf.hpp"

#include <cmath>
#include <stdexcept>

namespace jsguard {

std::vector<TfIdfVector> tfidf_vectors(const std::vector<TokenDocument>& corpus) {
    if (corpus.empty()) throw std::invalid_argument("tfidf_vectors: empty corpus");

    std::map<std::string, uint64_t> df;
    for (const auto& doc : corpus) {
        if (doc.counts.empty())
            throw std::invalid_argument("tfidf_vectors: document '" + doc.sample_id +
                                        "' has no tokens");
        for (const auto& [token, count] : doc.counts) {
            (void)count;
            df[token] += 1;
        }
    }

    const double n_docs = static_cast<double>(corpus.size());
    std::vector<TfIdfVector> out;
    out.reserve(corpus.size());
    for (const auto& doc : corpus) {
        uint64_t total = 0;
        for (const auto& [token, count] : doc.counts) total += count;

        TfIdfVector vec;
        vec.sample_id = doc.sample_id;
        for (const auto& [token, count] : doc.counts) {
            double tf = static_cast<double>(count) / static_cast<double>(total);
            double idf = std::log(n_docs / static_cast<double>(df[token]));
            double w = tf * idf;
            if (w != 0.0) vec.weights[token] = w;
        }
        out.push_back(std::move(vec));
    }
    return out;
}

double euclidean_distance(const TfIdfVector& a, const TfIdfVector& b) {
    double sum = 0.0;
    auto ia = a.weights.begin();
    auto ib = b.weights.begin();
    while (ia != a.weights.end() || ib != b.weights.end()) {
        if (ib == b.weights.end() || (ia != a.weights.end() && ia->first < ib->first)) {
            sum += ia->second * ia->second;
            ++ia;
        } else if (ia == a.weights.end() || ib->first < ia->first) {
            sum += ib->second * ib->second;
            ++ib;
        } else {
            double d = ia->second - ib->second;
            sum += d * d;
            ++ia;
            ++ib;
        }
    }
    return std::sqrt(sum);
}

}  // namespace jsguard
