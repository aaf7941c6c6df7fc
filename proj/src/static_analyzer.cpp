#include "jsguard/static_analyzer.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "jsguard/log.hpp"
#include "jsguard/tokenizer.hpp"

namespace jsguard {

namespace {

size_t majority_hits(size_t keyword_count) {
    return static_cast<size_t>(std::ceil(0.6 * static_cast<double>(keyword_count)));
}

}  // namespace

KeywordRuleSet KeywordRuleSet::defaults() {
    KeywordRuleSet rules;
    const std::set<std::string> dos = {"setInterval", "open", "send",
                                       "ActiveXObject", "XMLHttpRequest"};
    const std::set<std::string> scan = {"open", "ActiveXObject", "XMLHttpRequest",
                                        "Date", "readyState"};
    rules.keywords[MaliciousType::HashDoS] = dos;
    rules.keywords[MaliciousType::XhrObjectDoS] = dos;
    rules.keywords[MaliciousType::NetworkScan] = scan;
    rules.keywords[MaliciousType::PortScan] = scan;
    rules.keywords[MaliciousType::GeolocationLeak] = {"coords", "getCurrentPosition"};
    rules.keywords[MaliciousType::WebSocketAbuse] = {"parse", "eval", "WebSocket",
                                                     "JSON", "send"};
    rules.keywords[MaliciousType::WebWorkerDDoS] = {"postMessage", "Worker",
                                                    "XMLHttpRequest", "open", "send"};
    for (const auto& [type, words] : rules.keywords) {
        rules.min_hits[type] = majority_hits(words.size());
    }
    return rules;
}

KeywordRuleSet KeywordRuleSet::load_json(const std::string& document) {
    KeywordRuleSet rules = defaults();
    const auto root = nlohmann::json::parse(document);
    if (!root.is_object()) {
        throw std::runtime_error("rule set file must be a JSON object");
    }
    for (const auto& [name, value] : root.items()) {
        auto type = malicious_type_from_string(name);
        if (!type) {
            throw std::runtime_error("unknown malicious type in rule set: " + name);
        }
        if (!value.is_array()) {
            throw std::runtime_error("keyword list for " + name + " must be an array");
        }
        std::set<std::string> words;
        for (const auto& w : value) words.insert(w.get<std::string>());
        if (words.empty()) {
            throw std::runtime_error("keyword list for " + name + " is empty");
        }
        rules.keywords[*type] = words;
        rules.min_hits[*type] = majority_hits(words.size());
    }
    return rules;
}

SignaturePool::SignaturePool(std::vector<SignatureRecord> records)
    : records_(std::move(records)) {
    std::sort(records_.begin(), records_.end(),
              [](const SignatureRecord& a, const SignatureRecord& b) { return a.id < b.id; });
    compiled_.reserve(records_.size());
    for (const auto& record : records_) {
        std::vector<std::regex> regexes;
        for (const auto& token : record.tokens) {
            if (token.kind == SignatureToken::Kind::Regex) {
                regexes.emplace_back(token.value, std::regex::ECMAScript);
            }
        }
        compiled_.push_back(std::move(regexes));
    }
}

bool SignaturePool::matches(size_t record_index,
                            const std::set<std::string>& token_texts) const {
    const SignatureRecord& record = records_[record_index];
    for (const auto& token : record.tokens) {
        if (token.kind == SignatureToken::Kind::Literal &&
            token_texts.find(token.value) == token_texts.end()) {
            return false;
        }
    }
    for (const auto& regex : compiled_[record_index]) {
        bool hit = false;
        for (const auto& text : token_texts) {
            if (std::regex_match(text, regex)) {
                hit = true;
                break;
            }
        }
        if (!hit) return false;
    }
    return true;
}

bool signature_matches(const SignatureRecord& record,
                       const std::set<std::string>& token_texts) {
    for (const auto& token : record.tokens) {
        if (token.kind == SignatureToken::Kind::Literal) {
            if (token_texts.find(token.value) == token_texts.end()) return false;
        } else {
            std::regex regex(token.value, std::regex::ECMAScript);
            bool hit = false;
            for (const auto& text : token_texts) {
                if (std::regex_match(text, regex)) {
                    hit = true;
                    break;
                }
            }
            if (!hit) return false;
        }
    }
    return true;
}

std::map<MaliciousType, size_t> extract_primary_keys(const std::vector<Token>& tokens,
                                                     const KeywordRuleSet& rules) {
    std::set<std::string> texts;
    for (const auto& token : tokens) texts.insert(token.text);

    std::map<MaliciousType, size_t> hits;
    for (MaliciousType type : kAllMaliciousTypes) hits[type] = 0;
    for (const auto& [type, words] : rules.keywords) {
        size_t count = 0;
        for (const auto& word : words) {
            if (texts.count(word)) ++count;
        }
        hits[type] = count;
    }
    return hits;
}

std::vector<std::string> match_signatures(const std::vector<Token>& tokens,
                                          const SignaturePool& pool) {
    std::set<std::string> texts;
    for (const auto& token : tokens) texts.insert(token.text);

    std::vector<std::string> ids;
    for (size_t i = 0; i < pool.size(); ++i) {
        if (pool.matches(i, texts)) ids.push_back(pool.records()[i].id);
    }
    return ids;  // records are kept sorted by id
}

StaticAnalysis classify(const WebContent& content, const KeywordRuleSet& rules,
                        const SignaturePool& pool) {
    StaticAnalysis result;
    std::vector<Token> all_tokens;

    for (size_t i = 0; i < content.scripts.size(); ++i) {
        auto tokens = tokenize_script(content.scripts[i].body);
        ScriptFinding finding;
        finding.script_index = i;
        finding.matched_signatures = match_signatures(tokens, pool);
        for (const auto& id : finding.matched_signatures) {
            result.verdict.matched_signatures.push_back(id);
        }
        all_tokens.insert(all_tokens.end(), std::make_move_iterator(tokens.begin()),
                          std::make_move_iterator(tokens.end()));
        result.findings.push_back(std::move(finding));
    }

    std::sort(result.verdict.matched_signatures.begin(),
              result.verdict.matched_signatures.end());
    result.verdict.matched_signatures.erase(
        std::unique(result.verdict.matched_signatures.begin(),
                    result.verdict.matched_signatures.end()),
        result.verdict.matched_signatures.end());
    result.verdict.malicious = !result.verdict.matched_signatures.empty();

    for (const auto& record : pool.records()) {
        if (std::binary_search(result.verdict.matched_signatures.begin(),
                               result.verdict.matched_signatures.end(), record.id)) {
            result.verdict.types.insert(record.type);
        }
    }

    result.keyword_hits = extract_primary_keys(all_tokens, rules);
    for (const auto& [type, count] : result.keyword_hits) {
        auto it = rules.min_hits.find(type);
        const size_t need = it != rules.min_hits.end() ? it->second : 1;
        if (count >= need && count > 0) {
            result.candidates.insert(type);
            if (!result.verdict.types.count(type)) {
                JSG_DEBUG("keyword candidate " << to_string(type) << " (" << count
                                               << " hits) awaiting signature/trace evidence");
            }
        }
    }
    return result;
}

}  // namespace jsguard
