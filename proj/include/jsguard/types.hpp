#pragma once

#include <cstdint>
#include <ctime>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace jsguard {

// The seven script-behavior classes the engine reports. The set is closed;
// serialized names are the enumerator spellings below and never change.
enum class MaliciousType {
    HashDoS,
    XhrObjectDoS,
    NetworkScan,
    PortScan,
    GeolocationLeak,
    WebSocketAbuse,
    WebWorkerDDoS,
};

inline constexpr MaliciousType kAllMaliciousTypes[] = {
    MaliciousType::HashDoS,        MaliciousType::XhrObjectDoS,
    MaliciousType::NetworkScan,    MaliciousType::PortScan,
    MaliciousType::GeolocationLeak, MaliciousType::WebSocketAbuse,
    MaliciousType::WebWorkerDDoS,
};

const std::string& to_string(MaliciousType type);
std::optional<MaliciousType> malicious_type_from_string(const std::string& name);

// Connection metadata captured with a piece of web content.
// observed_at is UTC seconds; within one capture session it never decreases.
struct ContentMeta {
    std::string source_ip = "0.0.0.0";  // dotted quad
    int port = 0;                       // 0..65535
    std::string protocol = "http";
    std::string domain;
    std::time_t observed_at = 0;

    bool operator==(const ContentMeta&) const = default;
};

enum class ScriptKind { Inline, External };

struct ScriptArtifact {
    std::string body;    // UTF-8 source text, non-empty when submitted to analysis
    std::string origin;  // URL, or "inline"
    ScriptKind kind = ScriptKind::Inline;

    bool operator==(const ScriptArtifact&) const = default;
};

// One HTML document plus its scripts plus connection metadata: the unit of
// analysis. `scripts` holds every inline block of `html` in document order,
// followed by one entry per successfully crawled external link.
struct WebContent {
    std::string html;
    std::vector<ScriptArtifact> scripts;
    ContentMeta meta;

    bool operator==(const WebContent&) const = default;
};

enum class TokenClass {
    Identifier,
    MemberName,
    StringLiteral,
    NumericLiteral,
    IpLiteral,
};

struct Token {
    std::string text;
    TokenClass cls = TokenClass::Identifier;

    bool operator==(const Token&) const = default;
};

struct TraceMatch {
    std::string sample_id;
    MaliciousType type = MaliciousType::HashDoS;
    int distance = 0;

    bool operator==(const TraceMatch&) const = default;
};

// Per-content classification. malicious is true exactly when a signature
// matched or a trace-analysis match was recorded; escalated is true only
// when one of the two heuristic scores met its cutoff.
struct Verdict {
    bool malicious = false;
    std::set<MaliciousType> types;
    std::vector<std::string> matched_signatures;  // sorted, unique
    double obfuscation_score = 0.0;
    double html5_score = 0.0;
    bool escalated = false;
    std::optional<TraceMatch> trace_match;
};

// Strict dotted-quad check: four decimal runs of 1-3 digits, each <= 255.
bool is_ipv4_literal(std::string_view text);

// RFC 3339 timestamps at seconds resolution ("2015-06-10T12:00:00Z" or with
// a +hh:mm / -hh:mm offset). Fractional seconds are accepted and discarded.
std::optional<std::time_t> parse_rfc3339(const std::string& text);
std::string format_rfc3339(std::time_t t);

}  // namespace jsguard
