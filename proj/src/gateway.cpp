#include "jsguard/gateway.hpp"

#include <algorithm>
#include <map>

#include <httplib.h>

#include "jsguard/log.hpp"
#include "jsguard/tokenizer.hpp"

namespace jsguard {

std::pair<std::string, int> parse_listen_address(const std::string& address) {
    const auto colon = address.rfind(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 >= address.size())
        throw std::invalid_argument("listen_address must be host:port, got '" + address +
                                    "'");
    const std::string host = address.substr(0, colon);
    const std::string port_text = address.substr(colon + 1);
    if (port_text.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("listen_address port is not a number: '" + address +
                                    "'");
    const long port = std::stol(port_text);
    if (port < 0 || port > 65535)
        throw std::invalid_argument("listen_address port out of range: '" + address + "'");
    return {host, static_cast<int>(port)};
}

std::vector<std::string> extract_external_links(const std::string& html, const Url& base,
                                                size_t max_links) {
    const HtmlScanResult scan = scan_html(html);
    std::vector<std::string> links;
    std::set<std::string> seen;
    const std::string base_str = base.str();
    for (const auto& tag : scan.scripts) {
        if (links.size() >= max_links) break;
        if (!tag.has_src || tag.src_value.empty()) continue;
        const std::string resolved = resolve_url(base_str, tag.src_value);
        if (resolved.empty()) continue;
        if (seen.insert(resolved).second) links.push_back(resolved);
    }
    return links;
}

std::vector<ScriptArtifact> crawl_resources(const std::vector<std::string>& urls,
                                            const GatewayConfig& config) {
    std::vector<ScriptArtifact> artifacts;
    for (const auto& url_text : urls) {
        const auto url = parse_url(url_text);
        if (!url) {
            JSG_WARN("crawl skip (unparsable url): " << url_text);
            continue;
        }
        if (url->scheme != "http") {
            JSG_WARN("crawl skip (unsupported scheme " << url->scheme << "): " << url_text);
            continue;
        }

        httplib::Client client(url->host, url->port);
        client.set_connection_timeout(0, config.crawl_timeout_ms * 1000);
        client.set_read_timeout(0, config.crawl_timeout_ms * 1000);
        client.set_write_timeout(0, config.crawl_timeout_ms * 1000);

        std::string body;
        bool oversize = false;
        auto result = client.Get(url->target, [&](const char* data, size_t len) {
            if (body.size() + len > config.crawl_max_bytes) {
                oversize = true;
                return false;
            }
            body.append(data, len);
            return true;
        });

        if (oversize) {
            JSG_WARN("crawl skip (body over " << config.crawl_max_bytes
                                              << " bytes): " << url_text);
            continue;
        }
        if (!result) {
            JSG_WARN("crawl skip (" << httplib::to_string(result.error())
                                    << "): " << url_text);
            continue;
        }
        if (result->status != 200) {
            JSG_WARN("crawl skip (status " << result->status << "): " << url_text);
            continue;
        }
        if (body.empty()) {
            JSG_WARN("crawl skip (empty body): " << url_text);
            continue;
        }
        artifacts.push_back({std::move(body), url_text, ScriptKind::External});
    }
    return artifacts;
}

PageScripts collect_page_scripts(const std::string& html, const Url& base,
                                 const GatewayConfig& config) {
    PageScripts page;
    page.scan = scan_html(html);

    for (size_t i = 0; i < page.scan.scripts.size(); ++i) {
        const auto& tag = page.scan.scripts[i];
        if (tag.has_src) continue;
        if (tag.content_begin >= tag.content_end) continue;
        PageScripts::Source source;
        source.kind = ScriptKind::Inline;
        source.tag_indexes.push_back(i);
        page.scripts.push_back({html.substr(tag.content_begin,
                                            tag.content_end - tag.content_begin),
                                "inline", ScriptKind::Inline});
        page.sources.push_back(std::move(source));
    }

    // Resolved URL -> every tag that references it, in document order.
    std::map<std::string, std::vector<size_t>> url_tags;
    const std::string base_str = base.str();
    for (size_t i = 0; i < page.scan.scripts.size(); ++i) {
        const auto& tag = page.scan.scripts[i];
        if (!tag.has_src || tag.src_value.empty()) continue;
        const std::string resolved = resolve_url(base_str, tag.src_value);
        if (!resolved.empty()) url_tags[resolved].push_back(i);
    }

    const auto links = extract_external_links(html, base, config.crawl_max_links);
    for (auto& artifact : crawl_resources(links, config)) {
        PageScripts::Source source;
        source.kind = ScriptKind::External;
        source.url = artifact.origin;
        source.tag_indexes = url_tags[artifact.origin];
        page.scripts.push_back(std::move(artifact));
        page.sources.push_back(std::move(source));
    }
    return page;
}

SanitizedPage sanitize_response(const std::string& html, const PageScripts& page,
                                const std::vector<size_t>& flagged_scripts) {
    SanitizedPage out;
    for (size_t script_index : flagged_scripts) {
        const auto& source = page.sources.at(script_index);
        for (size_t tag_index : source.tag_indexes) {
            const auto& tag = page.scan.scripts.at(tag_index);
            if (source.kind == ScriptKind::Inline) {
                if (tag.content_begin < tag.content_end)
                    out.removed.push_back({script_index, tag.content_begin,
                                           tag.content_end});
            } else {
                if (tag.src_span)
                    out.removed.push_back({script_index, tag.src_span->first,
                                           tag.src_span->second});
                // Without src, element content would become live; cut it too.
                if (tag.content_begin < tag.content_end)
                    out.removed.push_back({script_index, tag.content_begin,
                                           tag.content_end});
            }
        }
    }

    std::vector<RemovedSpan> cuts = out.removed;
    std::sort(cuts.begin(), cuts.end(),
              [](const RemovedSpan& a, const RemovedSpan& b) { return a.begin > b.begin; });
    out.html = html;
    for (const auto& cut : cuts) out.html.erase(cut.begin, cut.end - cut.begin);
    return out;
}

void score_heuristics(Verdict& verdict, const WebContent& content,
                      const AnalysisOptions& options) {
    // The most suspicious script drives the page's obfuscation report.
    ObfuscationReport worst;
    for (const auto& script : content.scripts) {
        ObfuscationReport report = obfuscation_score(script.body, options.obfuscation);
        if (report.total > worst.total) worst = report;
    }
    verdict.obfuscation_score = worst.total;
    verdict.html5_score = html5_tag_score(content.html, options.html5);
    verdict.escalated = should_escalate(worst, verdict.html5_score, options.html5);
}

AdaptationResult adapt_html(const std::string& html, const Url& base,
                            const ContentMeta& meta, const GatewayConfig& config,
                            const PoolSnapshot& snapshot, const AnalysisOptions& options) {
    PageScripts page = collect_page_scripts(html, base, config);

    WebContent content;
    content.html = html;
    content.scripts = page.scripts;
    content.meta = meta;

    StaticAnalysis analysis = classify(content, options.rules, snapshot.signatures);
    score_heuristics(analysis.verdict, content, options);

    AdaptationResult result;
    result.verdict = std::move(analysis.verdict);
    if (!result.verdict.malicious) {
        result.action = AdaptationResult::Action::Pass;
        result.html = html;
        return result;
    }

    std::vector<size_t> flagged;
    for (const auto& finding : analysis.findings) {
        if (!finding.matched_signatures.empty()) flagged.push_back(finding.script_index);
    }
    SanitizedPage sanitized = sanitize_response(html, page, flagged);
    result.action = AdaptationResult::Action::Sanitize;
    result.removed_spans = std::move(sanitized.removed);
    result.html = std::move(sanitized.html);
    return result;
}

}  // namespace jsguard
