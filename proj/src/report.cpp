#include "jsguard/report.hpp"

#include <json.hpp>

namespace jsguard {

std::string verdict_json_line(const std::string& sample, const Verdict& verdict) {
    nlohmann::json line;
    line["sample"] = sample;
    line["malicious"] = verdict.malicious;
    line["types"] = nlohmann::json::array();
    for (MaliciousType type : verdict.types) line["types"].push_back(to_string(type));
    line["matched_signatures"] = verdict.matched_signatures;
    line["obfuscation_score"] = verdict.obfuscation_score;
    line["html5_score"] = verdict.html5_score;
    line["escalated"] = verdict.escalated;
    if (verdict.trace_match) {
        line["trace_match"] = {{"sample_id", verdict.trace_match->sample_id},
                               {"type", to_string(verdict.trace_match->type)},
                               {"distance", verdict.trace_match->distance}};
    } else {
        line["trace_match"] = nullptr;
    }
    return line.dump();
}

}  // namespace jsguard
