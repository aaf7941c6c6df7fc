#include "jsguard/bundle.hpp"

#include <json.hpp>

namespace jsguard {

namespace {

using nlohmann::json;

const json& require_field(const json& obj, const char* key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw BundleError(BundleError::Kind::Schema, path, "missing field: " + path);
    }
    return *it;
}

std::string require_string(const json& obj, const char* key, const std::string& path) {
    const json& v = require_field(obj, key, path);
    if (!v.is_string()) {
        throw BundleError(BundleError::Kind::Schema, path, "expected string at: " + path);
    }
    return v.get<std::string>();
}

}  // namespace

WebContent parse_analysis_bundle(const std::string& document) {
    json root;
    try {
        root = json::parse(document);
    } catch (const json::parse_error& e) {
        throw BundleError(BundleError::Kind::Syntax, "", e.what());
    }
    if (!root.is_object()) {
        throw BundleError(BundleError::Kind::Syntax, "", "bundle is not a JSON object");
    }

    WebContent content;
    content.html = require_string(root, "html", "html");

    const json& scripts = require_field(root, "scripts", "scripts");
    if (!scripts.is_array()) {
        throw BundleError(BundleError::Kind::Schema, "scripts", "expected array at: scripts");
    }
    for (size_t i = 0; i < scripts.size(); ++i) {
        const std::string base = "scripts[" + std::to_string(i) + "]";
        const json& s = scripts[i];
        if (!s.is_object()) {
            throw BundleError(BundleError::Kind::Schema, base, "expected object at: " + base);
        }
        ScriptArtifact artifact;
        artifact.origin = require_string(s, "origin", base + ".origin");
        const std::string kind = require_string(s, "kind", base + ".kind");
        if (kind == "inline") {
            artifact.kind = ScriptKind::Inline;
        } else if (kind == "external") {
            artifact.kind = ScriptKind::External;
        } else {
            throw BundleError(BundleError::Kind::Schema, base + ".kind",
                              "kind must be \"inline\" or \"external\": " + base + ".kind");
        }
        artifact.body = require_string(s, "body", base + ".body");
        if (artifact.body.empty()) {
            throw BundleError(BundleError::Kind::Schema, base + ".body",
                              "script body must be non-empty: " + base + ".body");
        }
        content.scripts.push_back(std::move(artifact));
    }

    const json& meta = require_field(root, "meta", "meta");
    if (!meta.is_object()) {
        throw BundleError(BundleError::Kind::Schema, "meta", "expected object at: meta");
    }
    content.meta.source_ip = require_string(meta, "ip", "meta.ip");
    if (!is_ipv4_literal(content.meta.source_ip)) {
        throw BundleError(BundleError::Kind::Schema, "meta.ip",
                          "not a dotted-quad IPv4 address: meta.ip");
    }
    const json& port = require_field(meta, "port", "meta.port");
    if (!port.is_number_integer() || port.get<long>() < 0 || port.get<long>() > 65535) {
        throw BundleError(BundleError::Kind::Schema, "meta.port",
                          "port must be an integer in 0..65535: meta.port");
    }
    content.meta.port = port.get<int>();
    content.meta.protocol = require_string(meta, "protocol", "meta.protocol");
    content.meta.domain = require_string(meta, "domain", "meta.domain");
    const std::string observed = require_string(meta, "observed_at", "meta.observed_at");
    auto when = parse_rfc3339(observed);
    if (!when) {
        throw BundleError(BundleError::Kind::Schema, "meta.observed_at",
                          "not an RFC-3339 timestamp: meta.observed_at");
    }
    content.meta.observed_at = *when;

    return content;
}

std::string serialize_analysis_bundle(const WebContent& content) {
    json scripts = json::array();
    for (const auto& s : content.scripts) {
        scripts.push_back({
            {"origin", s.origin},
            {"kind", s.kind == ScriptKind::Inline ? "inline" : "external"},
            {"body", s.body},
        });
    }
    json root = {
        {"html", content.html},
        {"scripts", std::move(scripts)},
        {"meta",
         {
             {"ip", content.meta.source_ip},
             {"port", content.meta.port},
             {"protocol", content.meta.protocol},
             {"domain", content.meta.domain},
             {"observed_at", format_rfc3339(content.meta.observed_at)},
         }},
    };
    return root.dump();
}

}  // namespace jsguard
