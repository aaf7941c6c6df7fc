#pragma once

#include <string>

#include "jsguard/cluster.hpp"
#include "jsguard/gateway.hpp"
#include "jsguard/siggen.hpp"

namespace jsguard {

// Everything tunable, in one document. Defaults are the shipped behavior;
// a config file overrides only the fields it names.
struct AppConfig {
    GatewayConfig gateway;
    AnalysisOptions analysis;
    ClusterTree::Options cluster;
    SiggenOptions siggen;
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& detail) : std::runtime_error(detail) {}
};

// Parses a JSON config document over the defaults. Unknown keys are
// rejected, bad values raise ConfigError naming the field path.
AppConfig parse_config(const std::string& document);

// Reads and parses path; io failures become ConfigError.
AppConfig load_config_file(const std::string& path);

}  // namespace jsguard
