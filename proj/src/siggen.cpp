#include "jsguard/siggen.hpp"

#include <algorithm>
#include <cstdio>

#include "jsguard/tokenizer.hpp"

namespace jsguard {

namespace {

// Mean weight of a signature token across members. A regex token inherits
// the heaviest ip-literal weight of each member, since it replaced those.
double mean_weight(const SignatureToken& token, const std::vector<ClusterSample>& members) {
    double sum = 0.0;
    for (const auto& member : members) {
        if (token.kind == SignatureToken::Kind::Literal) {
            auto it = member.vector.weights.find(token.value);
            if (it != member.vector.weights.end()) sum += it->second;
        } else {
            double best = 0.0;
            for (const auto& text : member.token_texts) {
                if (!is_ipv4_literal(text)) continue;
                auto it = member.vector.weights.find(text);
                if (it != member.vector.weights.end()) best = std::max(best, it->second);
            }
            sum += best;
        }
    }
    return members.empty() ? 0.0 : sum / static_cast<double>(members.size());
}

std::string forge_id(MaliciousType type, const std::vector<SignatureToken>& tokens) {
    uint64_t h = 14695981039346656037ull;
    auto mix = [&h](std::string_view s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
        h ^= 0x1f;
        h *= 1099511628211ull;
    };
    mix(to_string(type));
    for (const auto& token : tokens) {
        mix(token.kind == SignatureToken::Kind::Regex ? "re" : "lit");
        mix(token.value);
    }
    char buf[13];
    std::snprintf(buf, sizeof(buf), "%012llx",
                  static_cast<unsigned long long>(h & 0xffffffffffffull));
    return "sig-" + to_string(type) + "-" + buf;
}

void sort_tokens(std::vector<SignatureToken>& tokens,
                 const std::vector<ClusterSample>& members) {
    std::vector<std::pair<double, SignatureToken>> weighted;
    weighted.reserve(tokens.size());
    for (auto& token : tokens) weighted.emplace_back(mean_weight(token, members), std::move(token));
    std::stable_sort(weighted.begin(), weighted.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second.value < b.second.value;
    });
    tokens.clear();
    for (auto& [w, token] : weighted) tokens.push_back(std::move(token));
}

}  // namespace

const std::string& ipv4_regex_pattern() {
    static const std::string pattern =
        R"((?:(?:25[0-5]|2[0-4][0-9]|[01]?[0-9][0-9]?)\.){3}(?:25[0-5]|2[0-4][0-9]|[01]?[0-9][0-9]?))";
    return pattern;
}

std::vector<SignatureToken> normalize_ip_tokens(const std::set<std::string>& tokens) {
    std::vector<SignatureToken> out;
    bool saw_ip = false;
    for (const auto& text : tokens) {
        if (is_ipv4_literal(text)) {
            saw_ip = true;
        } else {
            out.push_back({SignatureToken::Kind::Literal, text});
        }
    }
    if (saw_ip) out.push_back({SignatureToken::Kind::Regex, ipv4_regex_pattern()});
    return out;
}

SignatureRecord conjunction_signature(const std::vector<ClusterSample>& members,
                                      MaliciousType type, std::time_t created_at,
                                      const SiggenOptions& opts) {
    if (members.size() < opts.min_cluster_size) {
        throw SignatureGenError(SignatureGenError::Kind::ClusterTooSmall,
                                "cluster has " + std::to_string(members.size()) +
                                    " members, need " +
                                    std::to_string(opts.min_cluster_size));
    }

    // Intersect the normalized token sets: a literal survives when every
    // member carries it, the regex token when every member has some ip.
    std::set<std::string> shared_literals;
    bool all_have_ip = true;
    for (size_t i = 0; i < members.size(); ++i) {
        std::set<std::string> literals;
        bool has_ip = false;
        for (const auto& text : members[i].token_texts) {
            if (is_ipv4_literal(text))
                has_ip = true;
            else
                literals.insert(text);
        }
        all_have_ip = all_have_ip && has_ip;
        if (i == 0) {
            shared_literals = std::move(literals);
        } else {
            std::set<std::string> kept;
            std::set_intersection(shared_literals.begin(), shared_literals.end(),
                                  literals.begin(), literals.end(),
                                  std::inserter(kept, kept.begin()));
            shared_literals = std::move(kept);
        }
    }

    std::vector<SignatureToken> tokens;
    for (const auto& text : shared_literals)
        tokens.push_back({SignatureToken::Kind::Literal, text});
    if (all_have_ip) tokens.push_back({SignatureToken::Kind::Regex, ipv4_regex_pattern()});

    if (tokens.size() < opts.min_signature_tokens) {
        throw SignatureGenError(SignatureGenError::Kind::SignatureTooWeak,
                                "intersection kept " + std::to_string(tokens.size()) +
                                    " tokens, need " +
                                    std::to_string(opts.min_signature_tokens));
    }

    sort_tokens(tokens, members);

    SignatureRecord record;
    record.type = type;
    record.tokens = std::move(tokens);
    record.created_at = created_at;
    for (const auto& member : members) record.provenance.push_back(member.sample_id);
    record.id = forge_id(type, record.tokens);
    return record;
}

BenignCorpus BenignCorpus::from_scripts(const std::vector<std::string>& bodies) {
    BenignCorpus corpus;
    corpus.documents.reserve(bodies.size());
    for (const auto& body : bodies) {
        std::set<std::string> texts;
        for (const auto& token : tokenize_script(body)) texts.insert(token.text);
        corpus.documents.push_back(std::move(texts));
    }
    return corpus;
}

std::map<std::string, double> BenignCorpus::df() const {
    std::map<std::string, double> out;
    if (documents.empty()) return out;
    for (const auto& doc : documents) {
        for (const auto& text : doc) out[text] += 1.0;
    }
    for (auto& [text, count] : out) count /= static_cast<double>(documents.size());
    return out;
}

SignatureRecord refine_signature(const SignatureRecord& candidate, const BenignCorpus& benign,
                                 const std::vector<ClusterSample>& members,
                                 const SiggenOptions& opts) {
    const auto df = benign.df();

    SignatureRecord refined = candidate;
    refined.tokens.clear();
    for (const auto& token : candidate.tokens) {
        if (token.kind == SignatureToken::Kind::Literal) {
            auto it = df.find(token.value);
            if (it != df.end() && it->second >= opts.benign_df_cutoff) continue;
        }
        refined.tokens.push_back(token);
    }

    if (refined.tokens.size() < opts.min_signature_tokens) {
        throw SignatureGenError(SignatureGenError::Kind::SignatureTooWeak,
                                "signature " + candidate.id + " kept " +
                                    std::to_string(refined.tokens.size()) +
                                    " tokens after benign filtering, need " +
                                    std::to_string(opts.min_signature_tokens));
    }

    for (const auto& member : members) {
        if (!signature_matches(refined, member.token_texts)) {
            throw SignatureGenError(SignatureGenError::Kind::SignatureTooWeak,
                                    "signature " + candidate.id +
                                        " no longer matches cluster member " +
                                        member.sample_id);
        }
    }
    for (size_t i = 0; i < benign.documents.size(); ++i) {
        if (signature_matches(refined, benign.documents[i])) {
            throw SignatureGenError(SignatureGenError::Kind::BenignCollision,
                                    "signature " + candidate.id +
                                        " matches benign document #" + std::to_string(i));
        }
    }

    refined.id = forge_id(refined.type, refined.tokens);
    return refined;
}

}  // namespace jsguard
