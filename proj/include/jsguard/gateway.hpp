#pragma once

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "jsguard/heuristics.hpp"
#include "jsguard/html_scan.hpp"
#include "jsguard/static_analyzer.hpp"
#include "jsguard/store.hpp"
#include "jsguard/types.hpp"
#include "jsguard/url.hpp"

namespace jsguard {

struct GatewayConfig {
    std::string listen_address = "127.0.0.1:1344";
    int crawl_timeout_ms = 2000;
    size_t crawl_max_bytes = 1 << 20;
    size_t crawl_max_links = 8;
    enum class FailureMode { Open, Closed };
    FailureMode failure_mode = FailureMode::Open;
    int analyzer_budget_ms = 5000;
};

// "host:port" -> (host, port). Throws std::invalid_argument on bad input.
std::pair<std::string, int> parse_listen_address(const std::string& address);

// src attributes of script elements resolved against base: document order,
// de-duplicated, capped at max_links. Unresolvable references are skipped.
std::vector<std::string> extract_external_links(const std::string& html, const Url& base,
                                                size_t max_links);

// Fetches each URL (http only) within the crawl timeout and byte cap.
// Failures, oversize bodies, and empty bodies are logged and skipped; the
// batch always completes. Artifacts carry kind = external.
std::vector<ScriptArtifact> crawl_resources(const std::vector<std::string>& urls,
                                            const GatewayConfig& config);

// Every script of a page, with enough provenance to splice the document.
struct PageScripts {
    HtmlScanResult scan;
    std::vector<ScriptArtifact> scripts;  // inline in document order, then external

    struct Source {
        ScriptKind kind = ScriptKind::Inline;
        std::vector<size_t> tag_indexes;  // indexes into scan.scripts
        std::string url;                  // external only: resolved absolute URL
    };
    std::vector<Source> sources;  // parallel to scripts
};

// scan_html + extract_external_links + crawl_resources; external artifacts
// remember every tag referencing their URL.
PageScripts collect_page_scripts(const std::string& html, const Url& base,
                                 const GatewayConfig& config);

struct RemovedSpan {
    size_t script_index = 0;  // index into PageScripts::scripts
    size_t begin = 0;         // byte range in the ORIGINAL document
    size_t end = 0;
};

struct SanitizedPage {
    std::string html;
    std::vector<RemovedSpan> removed;
};

// Splices flagged scripts out of the document: inline blocks are emptied,
// external elements lose their src attribute; every other byte is kept
// verbatim.
SanitizedPage sanitize_response(const std::string& html, const PageScripts& page,
                                const std::vector<size_t>& flagged_scripts);

struct AnalysisOptions {
    KeywordRuleSet rules = KeywordRuleSet::defaults();
    ObfuscationWeights obfuscation;
    Html5Weights html5 = Html5Weights::defaults();
    int trace_threshold = 3;
};

// Fills the verdict's heuristic fields: obfuscation report of the most
// suspicious script, the document's HTML5 tag score, and the escalation
// flag.
void score_heuristics(Verdict& verdict, const WebContent& content,
                      const AnalysisOptions& options);

struct AdaptationResult {
    enum class Action { Pass, Sanitize, Block };
    Action action = Action::Pass;
    Verdict verdict;
    std::vector<RemovedSpan> removed_spans;
    std::string html;  // document to forward; equals the input when passing

    // Pass and Sanitize follow the verdict (pass iff clean). Block is never
    // produced by analysis; it is the closed-failure-mode answer built by
    // the ICAP layer when no verdict could be computed.
};

// Full pipeline for one HTML document: collect scripts, classify against the
// snapshot's signatures, score obfuscation and HTML5 usage, and sanitize
// when malicious.
AdaptationResult adapt_html(const std::string& html, const Url& base,
                            const ContentMeta& meta, const GatewayConfig& config,
                            const PoolSnapshot& snapshot, const AnalysisOptions& options);

// Content-adaptation service speaking the OPTIONS/RESPMOD subset. HTML
// response bodies run through adapt_html inside the analyzer budget;
// everything else passes unmodified. stop() drains in-flight transactions.
class IcapServer {
public:
    IcapServer(GatewayConfig config, AnalysisOptions options,
               std::shared_ptr<PoolStore> store);
    ~IcapServer();

    IcapServer(const IcapServer&) = delete;
    IcapServer& operator=(const IcapServer&) = delete;

    void start();  // binds and begins accepting; throws on bind failure
    void stop();   // idempotent

    int port() const { return port_; }  // actual bound port
    uint64_t transactions() const { return transactions_.load(); }

private:
    void accept_loop();
    void serve_connection(int fd, const std::string& peer);
    bool handle_transaction(class ConnectionState& conn);

    GatewayConfig config_;
    AnalysisOptions options_;
    std::shared_ptr<PoolStore> store_;

    std::atomic<bool> running_{false};
    int listen_fd_ = -1;
    int port_ = 0;
    std::thread accept_thread_;

    std::mutex mu_;
    std::condition_variable idle_cv_;
    std::set<int> connection_fds_;
    size_t active_connections_ = 0;
    std::atomic<uint64_t> transactions_{0};
};

}  // namespace jsguard
