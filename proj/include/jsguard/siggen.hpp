#pragma once

#include <ctime>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "jsguard/static_analyzer.hpp"
#include "jsguard/tfidf.hpp"
#include "jsguard/types.hpp"

namespace jsguard {

class SignatureGenError : public std::runtime_error {
public:
    enum class Kind { ClusterTooSmall, SignatureTooWeak, BenignCollision };

    SignatureGenError(Kind kind, const std::string& detail)
        : std::runtime_error(detail), kind_(kind) {}

    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

// The regex token that stands in for any dotted-quad literal.
const std::string& ipv4_regex_pattern();

// Replaces every IPv4-literal token with the shared regex token (several
// literals collapse to one); everything else passes through as a literal.
std::vector<SignatureToken> normalize_ip_tokens(const std::set<std::string>& tokens);

// One cluster member as signature generation sees it: the distinct token
// texts plus the tf-idf weights used for ordering.
struct ClusterSample {
    std::string sample_id;
    std::set<std::string> token_texts;
    TfIdfVector vector;
};

struct SiggenOptions {
    size_t min_cluster_size = 2;
    size_t min_signature_tokens = 5;
    double benign_df_cutoff = 0.5;
};

// Tokens shared by every member, IP literals normalized, ordered by
// descending mean tf-idf weight then token text. The record id is derived
// from the type and token contents, so equal clusters forge equal ids.
// Throws SignatureGenError on a too-small cluster or a too-thin intersection.
SignatureRecord conjunction_signature(const std::vector<ClusterSample>& members,
                                      MaliciousType type, std::time_t created_at,
                                      const SiggenOptions& opts = {});

// Benign scripts reduced to per-document distinct token texts.
struct BenignCorpus {
    std::vector<std::set<std::string>> documents;

    static BenignCorpus from_scripts(const std::vector<std::string>& bodies);

    // Fraction of documents containing each token.
    std::map<std::string, double> df() const;
};

// Drops literal tokens ubiquitous in benign code (document frequency >=
// cutoff), then proves the survivor still matches every member and zero
// benign documents. Throws SignatureGenError when either proof fails.
SignatureRecord refine_signature(const SignatureRecord& candidate, const BenignCorpus& benign,
                                 const std::vector<ClusterSample>& members,
                                 const SiggenOptions& opts = {});

}  // namespace jsguard
