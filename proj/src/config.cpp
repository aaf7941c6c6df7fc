#include "jsguard/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace jsguard {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& why) {
    throw ConfigError("config: " + path + " " + why);
}

void expect_object(const json& node, const std::string& path) {
    if (!node.is_object()) fail(path, "must be an object");
}

double get_number(const json& node, const std::string& path, double lo, double hi) {
    if (!node.is_number()) fail(path, "must be a number");
    const double v = node.get<double>();
    if (v < lo || v > hi)
        fail(path, "must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v;
}

long get_integer(const json& node, const std::string& path, long lo, long hi) {
    if (!node.is_number_integer()) fail(path, "must be an integer");
    const long v = node.get<long>();
    if (v < lo || v > hi)
        fail(path, "must be in [" + std::to_string(lo) + ".." + std::to_string(hi) + "]");
    return v;
}

void apply_gateway(const json& node, GatewayConfig& out) {
    expect_object(node, "gateway");
    for (const auto& [key, value] : node.items()) {
        if (key == "listen_address") {
            if (!value.is_string()) fail("gateway.listen_address", "must be a string");
            out.listen_address = value.get<std::string>();
            parse_listen_address(out.listen_address);  // validate now
        } else if (key == "crawl_timeout_ms") {
            out.crawl_timeout_ms =
                static_cast<int>(get_integer(value, "gateway.crawl_timeout_ms", 1, 600000));
        } else if (key == "crawl_max_bytes") {
            out.crawl_max_bytes = static_cast<size_t>(
                get_integer(value, "gateway.crawl_max_bytes", 1, 1L << 31));
        } else if (key == "crawl_max_links") {
            out.crawl_max_links = static_cast<size_t>(
                get_integer(value, "gateway.crawl_max_links", 0, 10000));
        } else if (key == "failure_mode") {
            const std::string mode = value.is_string() ? value.get<std::string>() : "";
            if (mode == "open") {
                out.failure_mode = GatewayConfig::FailureMode::Open;
            } else if (mode == "closed") {
                out.failure_mode = GatewayConfig::FailureMode::Closed;
            } else {
                fail("gateway.failure_mode", "must be \"open\" or \"closed\"");
            }
        } else if (key == "analyzer_budget_ms") {
            out.analyzer_budget_ms = static_cast<int>(
                get_integer(value, "gateway.analyzer_budget_ms", 1, 3600000));
        } else {
            fail("gateway." + key, "is not a known setting");
        }
    }
}

void apply_obfuscation(const json& node, ObfuscationWeights& out) {
    expect_object(node, "obfuscation");
    for (const auto& [key, value] : node.items()) {
        const std::string path = "obfuscation." + key;
        if (key == "ngram") {
            out.ngram = get_number(value, path, 0, 100);
        } else if (key == "entropy") {
            out.entropy = get_number(value, path, 0, 100);
        } else if (key == "wordsize") {
            out.wordsize = get_number(value, path, 0, 100);
        } else if (key == "cutoff") {
            out.cutoff = get_number(value, path, 0, 300);
        } else if (key == "word_cap") {
            out.word_cap = get_number(value, path, 1, 1e9);
        } else if (key == "entropy_band") {
            if (!value.is_array() || value.size() != 2)
                fail(path, "must be [low, high]");
            out.entropy_band_low = get_number(value[0], path + "[0]", 0, 8);
            out.entropy_band_high = get_number(value[1], path + "[1]", 0, 8);
            if (out.entropy_band_low > out.entropy_band_high)
                fail(path, "must satisfy low <= high");
        } else if (key == "entropy_falloff") {
            out.entropy_falloff = get_number(value, path, 0.001, 8);
        } else {
            fail(path, "is not a known setting");
        }
    }
}

void apply_html5(const json& node, Html5Weights& out) {
    expect_object(node, "html5");
    for (const auto& [key, value] : node.items()) {
        const std::string path = "html5." + key;
        if (key == "cutoff") {
            out.cutoff = get_number(value, path, 0, 1000);
        } else if (key == "tag_weights") {
            expect_object(value, path);
            for (const auto& [tag, weight] : value.items())
                out.tag_weights[tag] = get_number(weight, path + "." + tag, 0, 1000);
        } else {
            fail(path, "is not a known setting");
        }
    }
}

void apply_trace(const json& node, AnalysisOptions& out) {
    expect_object(node, "trace");
    for (const auto& [key, value] : node.items()) {
        if (key == "threshold") {
            out.trace_threshold =
                static_cast<int>(get_integer(value, "trace.threshold", 0, 64));
        } else {
            fail("trace." + key, "is not a known setting");
        }
    }
}

void apply_cluster(const json& node, ClusterTree::Options& out) {
    expect_object(node, "cluster");
    for (const auto& [key, value] : node.items()) {
        const std::string path = "cluster." + key;
        if (key == "branching") {
            out.branching = static_cast<size_t>(get_integer(value, path, 2, 1024));
        } else if (key == "threshold") {
            out.threshold = get_number(value, path, 1e-9, 1e9);
        } else if (key == "meta_coeff") {
            out.meta_coeff = get_number(value, path, 0, 1);
        } else {
            fail(path, "is not a known setting");
        }
    }
}

void apply_siggen(const json& node, SiggenOptions& out) {
    expect_object(node, "signatures");
    for (const auto& [key, value] : node.items()) {
        const std::string path = "signatures." + key;
        if (key == "min_cluster_size") {
            out.min_cluster_size = static_cast<size_t>(get_integer(value, path, 1, 100000));
        } else if (key == "min_signature_tokens") {
            out.min_signature_tokens =
                static_cast<size_t>(get_integer(value, path, 1, 100000));
        } else if (key == "benign_df_cutoff") {
            out.benign_df_cutoff = get_number(value, path, 0, 1);
        } else {
            fail(path, "is not a known setting");
        }
    }
}

}  // namespace

AppConfig parse_config(const std::string& document) {
    AppConfig config;
    json root;
    try {
        root = json::parse(document);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: not valid JSON: ") + e.what());
    }
    expect_object(root, "(document)");

    for (const auto& [key, value] : root.items()) {
        if (key == "gateway") {
            apply_gateway(value, config.gateway);
        } else if (key == "obfuscation") {
            apply_obfuscation(value, config.analysis.obfuscation);
        } else if (key == "html5") {
            apply_html5(value, config.analysis.html5);
        } else if (key == "keywords") {
            try {
                config.analysis.rules = KeywordRuleSet::load_json(value.dump());
            } catch (const std::exception& e) {
                fail("keywords", std::string("invalid: ") + e.what());
            }
        } else if (key == "trace") {
            apply_trace(value, config.analysis);
        } else if (key == "cluster") {
            apply_cluster(value, config.cluster);
        } else if (key == "signatures") {
            apply_siggen(value, config.siggen);
        } else {
            fail(key, "is not a known section");
        }
    }
    return config;
}

AppConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace jsguard
