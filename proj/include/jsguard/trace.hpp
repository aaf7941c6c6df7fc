#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "jsguard/types.hpp"

namespace jsguard {

// One API invocation from an instrumented run: dotted API name, ordered
// parameter strings (possibly none), and a "sample:offset" source locator.
struct CallRecord {
    std::string api;
    std::vector<std::string> params;
    std::string loc;

    bool operator==(const CallRecord&) const = default;
};

struct CallTrace {
    std::string sample_id;
    std::vector<CallRecord> records;  // document order
};

struct TraceFingerprint {
    uint64_t bits = 0;
    std::string sample_id;
    MaliciousType type = MaliciousType::HashDoS;
};

class TraceParseError : public std::runtime_error {
public:
    enum class Kind { MalformedXml, UnrecognizedShape };

    TraceParseError(Kind kind, std::string element, const std::string& detail)
        : std::runtime_error(detail), kind_(kind), element_(std::move(element)) {}

    Kind kind() const { return kind_; }
    const std::string& element() const { return element_; }

private:
    Kind kind_;
    std::string element_;
};

// Trace documents are XML: a root element whose children are API-named
// elements, each holding P1..Pn parameter elements (in order, contiguous
// from 1) and a Loc element. The trace's sample id is taken from the first
// locator's "sample:" prefix. Throws TraceParseError on malformed XML or a
// child that does not fit the shape.
CallTrace parse_trace_xml(const std::string& document);

// Parameter values are abstracted to classes so re-targeted attacks (same
// calls, different victim) fingerprint alike.
enum class ParamClass { Url, IpLiteral, Number, CodeBlock, Other };
ParamClass classify_param(const std::string& value);
const std::string& to_string(ParamClass cls);

// Weighted features feeding SimHash: each API name weighted by its call
// count, each consecutive-call API bigram, and each (API, parameter class)
// pair. Deterministic; the trace must be non-empty.
std::map<std::string, uint64_t> trace_features(const CallTrace& trace);

// Stable 64-bit FNV-1a over a feature string; the per-feature hash SimHash
// builds on. Fixed for the life of the fingerprint format.
uint64_t feature_hash(std::string_view feature);

// Classic SimHash: per-bit signed sums of feature hashes weighted by feature
// weight; output bit i is 1 iff the sum is positive.
uint64_t simhash(const std::map<std::string, uint64_t>& features);

uint64_t trace_fingerprint(const CallTrace& trace);

int hamming_distance(uint64_t a, uint64_t b);

struct NearestTrace {
    std::string sample_id;
    MaliciousType type;
    int distance;
};

// Minimal-distance pool entry; ties break toward the lexicographically
// smallest sample id. Empty pool yields nothing.
std::optional<NearestTrace> nearest_trace(uint64_t fingerprint,
                                          const std::vector<TraceFingerprint>& pool);

// Malicious with the neighbor's type iff the nearest distance <= threshold.
std::optional<TraceMatch> trace_verdict(const CallTrace& trace,
                                        const std::vector<TraceFingerprint>& pool,
                                        int threshold);

}  // namespace jsguard
