#pragma once

#include <ctime>
#include <map>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include "jsguard/types.hpp"

namespace jsguard {

// Keyword sets per behavior type. A type becomes a candidate when at least
// min_hits of its keywords appear among a script's tokens; candidacy alone
// never marks content malicious -- it prioritizes signature/trace lookups
// and feeds escalation. Matching is case-sensitive.
struct KeywordRuleSet {
    std::map<MaliciousType, std::set<std::string>> keywords;
    std::map<MaliciousType, size_t> min_hits;

    // Built-in keyword sets with min_hits = ceil(0.6 * set size).
    static KeywordRuleSet defaults();

    // Loads {"TypeName": ["kw", ...], ...}; types absent from the file keep
    // their defaults. min_hits is recomputed for overridden types.
    static KeywordRuleSet load_json(const std::string& document);
};

struct SignatureToken {
    enum class Kind { Literal, Regex };
    Kind kind = Kind::Literal;
    std::string value;

    bool operator==(const SignatureToken&) const = default;
};

// A conjunction signature: fires only when every literal token is present in
// the sample's token multiset and every regex token fully matches at least
// one token text.
struct SignatureRecord {
    std::string id;
    MaliciousType type = MaliciousType::HashDoS;
    std::vector<SignatureToken> tokens;     // non-empty
    std::vector<std::string> provenance;    // member sample ids
    std::time_t created_at = 0;
};

// A set of signatures with their regex tokens compiled once.
class SignaturePool {
public:
    SignaturePool() = default;
    explicit SignaturePool(std::vector<SignatureRecord> records);

    const std::vector<SignatureRecord>& records() const { return records_; }
    bool empty() const { return records_.empty(); }
    size_t size() const { return records_.size(); }

    // True when `record_index`'s conjunction holds over the token texts.
    bool matches(size_t record_index, const std::set<std::string>& token_texts) const;

private:
    std::vector<SignatureRecord> records_;
    std::vector<std::vector<std::regex>> compiled_;
};

// One-off conjunction check without pool construction; compiles any regex
// tokens on the fly. Signature generation uses this for member/benign
// verification.
bool signature_matches(const SignatureRecord& record,
                       const std::set<std::string>& token_texts);

// Distinct-keyword hit count per type over the token multiset. Every type is
// present in the result, zero included.
std::map<MaliciousType, size_t> extract_primary_keys(const std::vector<Token>& tokens,
                                                     const KeywordRuleSet& rules);

// Ids of all pool signatures whose conjunction holds, ordered by id.
std::vector<std::string> match_signatures(const std::vector<Token>& tokens,
                                          const SignaturePool& pool);

struct ScriptFinding {
    size_t script_index = 0;
    std::vector<std::string> matched_signatures;  // ordered by id
};

// Static-analysis result: the verdict's static fields plus the per-script
// attribution the sanitizer needs. Escalation fields are filled later by the
// heuristics pass.
struct StaticAnalysis {
    Verdict verdict;
    std::vector<ScriptFinding> findings;              // one per content script
    std::map<MaliciousType, size_t> keyword_hits;     // over all scripts
    std::set<MaliciousType> candidates;               // hits >= min_hits
};

StaticAnalysis classify(const WebContent& content, const KeywordRuleSet& rules,
                        const SignaturePool& pool);

}  // namespace jsguard
