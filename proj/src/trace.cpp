#include "jsguard/trace.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

namespace jsguard {

namespace {

bool is_param_name(const std::string& name, int expected_index) {
    if (name.size() < 2 || name.size() > 7 || name[0] != 'P') return false;
    for (size_t i = 1; i < name.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
    return std::stoi(name.substr(1)) == expected_index;
}

std::string sample_from_loc(const std::string& loc) {
    auto colon = loc.find(':');
    return colon == std::string::npos ? loc : loc.substr(0, colon);
}

}  // namespace

CallTrace parse_trace_xml(const std::string& document) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        std::istringstream in(document);
        pt::read_xml(in, tree, pt::xml_parser::no_comments);
    } catch (const pt::xml_parser_error& e) {
        throw TraceParseError(TraceParseError::Kind::MalformedXml, "", e.message());
    }

    if (tree.empty())
        throw TraceParseError(TraceParseError::Kind::UnrecognizedShape, "",
                              "trace document has no root element");
    const auto& root = tree.front().second;

    CallTrace trace;
    for (const auto& [name, node] : root) {
        if (name == "<xmlattr>") continue;
        CallRecord rec;
        rec.api = name;
        int next_param = 1;
        bool saw_loc = false;
        for (const auto& [child_name, child] : node) {
            if (child_name == "<xmlattr>") continue;
            if (child_name == "Loc") {
                if (saw_loc)
                    throw TraceParseError(TraceParseError::Kind::UnrecognizedShape, name,
                                          "duplicate Loc in record '" + name + "'");
                rec.loc = child.get_value<std::string>();
                saw_loc = true;
            } else if (is_param_name(child_name, next_param)) {
                if (saw_loc)
                    throw TraceParseError(TraceParseError::Kind::UnrecognizedShape, name,
                                          "parameter after Loc in record '" + name + "'");
                rec.params.push_back(child.get_value<std::string>());
                ++next_param;
            } else {
                throw TraceParseError(TraceParseError::Kind::UnrecognizedShape, child_name,
                                      "unexpected element '" + child_name + "' in record '" +
                                          name + "'");
            }
        }
        if (!saw_loc)
            throw TraceParseError(TraceParseError::Kind::UnrecognizedShape, name,
                                  "record '" + name + "' has no Loc");
        trace.records.push_back(std::move(rec));
    }

    // A childless root parses to an empty trace; fingerprinting rejects it.
    if (!trace.records.empty())
        trace.sample_id = sample_from_loc(trace.records.front().loc);
    return trace;
}

ParamClass classify_param(const std::string& value) {
    if (value.empty()) return ParamClass::Other;

    if (is_ipv4_literal(value)) return ParamClass::IpLiteral;

    auto scheme_end = value.find("://");
    if (scheme_end != std::string::npos && scheme_end > 0) {
        bool scheme_ok = true;
        for (size_t i = 0; i < scheme_end; ++i) {
            char c = value[i];
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' &&
                c != '.') {
                scheme_ok = false;
                break;
            }
        }
        if (scheme_ok && std::isalpha(static_cast<unsigned char>(value[0])))
            return ParamClass::Url;
    }

    bool numeric = true;
    bool any_digit = false;
    for (size_t i = 0; i < value.size(); ++i) {
        char c = value[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            any_digit = true;
        } else if (c == '.' || ((c == '+' || c == '-') && i == 0)) {
            // sign / decimal point
        } else {
            numeric = false;
            break;
        }
    }
    if (numeric && any_digit) return ParamClass::Number;

    // Function sources and eval payloads carry statement syntax.
    if (value.find('{') != std::string::npos || value.find(';') != std::string::npos ||
        value.find("function") != std::string::npos)
        return ParamClass::CodeBlock;

    return ParamClass::Other;
}

const std::string& to_string(ParamClass cls) {
    static const std::array<std::string, 5> names = {"url", "ip-literal", "number",
                                                     "code-block", "other"};
    return names[static_cast<size_t>(cls)];
}

std::map<std::string, uint64_t> trace_features(const CallTrace& trace) {
    if (trace.records.empty())
        throw std::invalid_argument("trace_features: empty trace");

    std::map<std::string, uint64_t> features;
    for (const auto& rec : trace.records) {
        features["api:" + rec.api] += 1;
        for (const auto& param : rec.params)
            features["arg:" + rec.api + ":" + to_string(classify_param(param))] += 1;
    }
    for (size_t i = 0; i + 1 < trace.records.size(); ++i)
        features["seq:" + trace.records[i].api + ">" + trace.records[i + 1].api] += 1;
    return features;
}

uint64_t feature_hash(std::string_view feature) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : feature) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

uint64_t simhash(const std::map<std::string, uint64_t>& features) {
    std::array<int64_t, 64> sums{};
    for (const auto& [feature, weight] : features) {
        uint64_t h = feature_hash(feature);
        for (int bit = 0; bit < 64; ++bit) {
            if ((h >> bit) & 1)
                sums[bit] += static_cast<int64_t>(weight);
            else
                sums[bit] -= static_cast<int64_t>(weight);
        }
    }
    uint64_t out = 0;
    for (int bit = 0; bit < 64; ++bit)
        if (sums[bit] > 0) out |= (1ull << bit);
    return out;
}

uint64_t trace_fingerprint(const CallTrace& trace) { return simhash(trace_features(trace)); }

int hamming_distance(uint64_t a, uint64_t b) { return std::popcount(a ^ b); }

std::optional<NearestTrace> nearest_trace(uint64_t fingerprint,
                                          const std::vector<TraceFingerprint>& pool) {
    std::optional<NearestTrace> best;
    for (const auto& entry : pool) {
        int d = hamming_distance(fingerprint, entry.bits);
        if (!best || d < best->distance ||
            (d == best->distance && entry.sample_id < best->sample_id)) {
            best = NearestTrace{entry.sample_id, entry.type, d};
        }
    }
    return best;
}

std::optional<TraceMatch> trace_verdict(const CallTrace& trace,
                                        const std::vector<TraceFingerprint>& pool,
                                        int threshold) {
    auto best = nearest_trace(trace_fingerprint(trace), pool);
    if (!best || best->distance > threshold) return std::nullopt;
    return TraceMatch{best->sample_id, best->type, best->distance};
}

}  // namespace jsguard
