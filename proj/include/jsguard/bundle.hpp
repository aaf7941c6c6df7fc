#pragma once

#include <stdexcept>
#include <string>

#include "jsguard/types.hpp"

namespace jsguard {

// Parse failures carry the offending path ("meta.port", "scripts[2].body").
class BundleError : public std::runtime_error {
public:
    enum class Kind { Syntax, Schema };

    BundleError(Kind kind, std::string path, const std::string& detail)
        : std::runtime_error(detail), kind_(kind), path_(std::move(path)) {}

    Kind kind() const { return kind_; }
    const std::string& path() const { return path_; }

private:
    Kind kind_;
    std::string path_;
};

// One JSON document bundling a page with its scripts and metadata:
//   {"html": str,
//    "scripts": [{"origin": str, "kind": "inline"|"external", "body": str}],
//    "meta": {"ip": str, "port": int, "protocol": str, "domain": str,
//             "observed_at": RFC-3339 str}}
// Unknown keys are ignored. Throws BundleError on malformed syntax or a
// missing/invalid field.
WebContent parse_analysis_bundle(const std::string& document);

std::string serialize_analysis_bundle(const WebContent& content);

}  // namespace jsguard
