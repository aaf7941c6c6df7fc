// jsguard command line: analyze content, generate signatures, evaluate
// corpora, serve ICAP, and match call traces.

#include <atomic>
#include <chrono>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "jsguard/bundle.hpp"
#include "jsguard/cluster.hpp"
#include "jsguard/config.hpp"
#include "jsguard/gateway.hpp"
#include "jsguard/log.hpp"
#include "jsguard/report.hpp"
#include "jsguard/siggen.hpp"
#include "jsguard/static_analyzer.hpp"
#include "jsguard/store.hpp"
#include "jsguard/tfidf.hpp"
#include "jsguard/tokenizer.hpp"
#include "jsguard/trace.hpp"
#include "jsguard/types.hpp"

namespace fs = std::filesystem;
using namespace jsguard;

namespace {

constexpr int kExitClean = 0;
constexpr int kExitDetection = 1;
constexpr int kExitError = 2;

std::atomic<bool> g_shutdown{false};

void handle_signal(int) { g_shutdown = true; }

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw std::runtime_error("read failed for " + path.string());
    return buf.str();
}

bool is_sidecar(const fs::path& path) {
    const std::string name = path.filename().string();
    return name.ends_with(".label") || name.ends_with(".trace.xml") ||
           name.ends_with(".meta.json");
}

// Files named by explicit paths plus the regular files of any directory
// argument (recursive, sorted), with sidecars and dotfiles left out.
std::vector<fs::path> expand_inputs(const std::vector<std::string>& inputs) {
    std::vector<fs::path> files;
    for (const auto& input : inputs) {
        fs::path path(input);
        std::error_code ec;
        if (fs::is_directory(path, ec)) {
            std::vector<fs::path> found;
            for (const auto& entry : fs::recursive_directory_iterator(path, ec)) {
                if (!entry.is_regular_file()) continue;
                if (is_sidecar(entry.path())) continue;
                if (entry.path().filename().string().starts_with(".")) continue;
                found.push_back(entry.path());
            }
            std::sort(found.begin(), found.end());
            files.insert(files.end(), found.begin(), found.end());
        } else {
            files.push_back(path);
        }
    }
    return files;
}

ContentMeta meta_from_sidecar(const fs::path& sample) {
    ContentMeta meta;
    const fs::path sidecar = sample.string() + ".meta.json";
    std::error_code ec;
    if (!fs::is_regular_file(sidecar, ec)) return meta;

    const auto doc = nlohmann::json::parse(read_file(sidecar));
    if (doc.contains("ip")) meta.source_ip = doc["ip"].get<std::string>();
    if (doc.contains("port")) meta.port = doc["port"].get<int>();
    if (doc.contains("protocol")) meta.protocol = doc["protocol"].get<std::string>();
    if (doc.contains("domain")) meta.domain = doc["domain"].get<std::string>();
    if (doc.contains("observed_at")) {
        auto t = parse_rfc3339(doc["observed_at"].get<std::string>());
        if (!t)
            throw std::runtime_error(sidecar.string() + ": bad observed_at");
        meta.observed_at = *t;
    }
    return meta;
}

// A sample file becomes analyzable content by extension: .json bundles carry
// everything; .html documents contribute their inline scripts; anything else
// is a bare script.
WebContent content_for_file(const fs::path& path) {
    const std::string body = read_file(path);
    const std::string ext = path.extension().string();

    if (ext == ".json") return parse_analysis_bundle(body);

    WebContent content;
    content.meta = meta_from_sidecar(path);
    if (ext == ".html" || ext == ".htm") {
        content.html = body;
        const HtmlScanResult scan = scan_html(content.html);
        for (const auto& tag : scan.scripts) {
            if (tag.has_src || tag.content_begin >= tag.content_end) continue;
            content.scripts.push_back(
                {content.html.substr(tag.content_begin,
                                     tag.content_end - tag.content_begin),
                 "inline", ScriptKind::Inline});
        }
    } else {
        if (body.empty()) throw std::runtime_error(path.string() + ": empty script");
        content.scripts.push_back({body, path.string(), ScriptKind::Inline});
    }
    return content;
}

struct SampleResult {
    std::string sample;
    Verdict verdict;
    std::string error;  // non-empty when the sample failed
};

SampleResult analyze_sample(const fs::path& path, const AppConfig& config,
                            const PoolSnapshot& snapshot) {
    SampleResult result;
    result.sample = path.string();
    try {
        const WebContent content = content_for_file(path);
        StaticAnalysis analysis =
            classify(content, config.analysis.rules, snapshot.signatures);
        score_heuristics(analysis.verdict, content, config.analysis);
        result.verdict = std::move(analysis.verdict);

        const fs::path trace_sidecar = path.string() + ".trace.xml";
        std::error_code ec;
        if (fs::is_regular_file(trace_sidecar, ec)) {
            const CallTrace trace = parse_trace_xml(read_file(trace_sidecar));
            if (!trace.records.empty()) {
                auto match = trace_verdict(trace, snapshot.traces,
                                           config.analysis.trace_threshold);
                if (match) {
                    result.verdict.malicious = true;
                    result.verdict.types.insert(match->type);
                    result.verdict.trace_match = match;
                }
            }
        }
    } catch (const std::exception& e) {
        result.error = e.what();
    }
    return result;
}

// Index-ordered parallel map over [0, count).
std::vector<SampleResult> run_pool(size_t jobs, size_t count,
                                   const std::function<SampleResult(size_t)>& fn) {
    std::vector<SampleResult> results(count);
    std::atomic<size_t> next{0};
    const size_t workers = std::max<size_t>(1, std::min(jobs, count));
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (size_t w = 0; w < workers; ++w) {
        threads.emplace_back([&] {
            while (true) {
                const size_t i = next.fetch_add(1);
                if (i >= count) return;
                results[i] = fn(i);
            }
        });
    }
    for (auto& t : threads) t.join();
    return results;
}

struct GlobalPaths {
    std::string config_path;
    std::string signatures = "signatures.json";
    bool signatures_explicit = false;
    std::string traces;
    std::string benign_df;
    bool traces_optional = false;
    std::string log_level = "info";
    size_t jobs = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
};

AppConfig load_app_config(const GlobalPaths& globals) {
    AppConfig config;
    if (!globals.config_path.empty()) config = load_config_file(globals.config_path);
    return config;
}

PoolSnapshot load_pools(const GlobalPaths& globals) {
    SnapshotPaths paths;
    paths.signatures = globals.signatures;
    paths.traces = globals.traces;
    paths.benign_df = globals.benign_df;
    paths.traces_optional = globals.traces_optional;

    std::error_code ec;
    if (!fs::exists(globals.signatures, ec)) {
        if (globals.signatures_explicit)
            throw StoreError(StoreError::Kind::Io,
                             "signature pool not found: " + globals.signatures);
        JSG_WARN("no signature pool at " << globals.signatures
                                         << "; running with an empty pool");
        PoolSnapshot snapshot;
        if (!globals.traces.empty()) {
            if (fs::exists(globals.traces, ec)) {
                snapshot.traces = load_trace_pool(globals.traces);
            } else if (!globals.traces_optional) {
                throw StoreError(StoreError::Kind::Io,
                                 "trace pool file missing: " + globals.traces);
            }
        }
        if (!globals.benign_df.empty()) snapshot.benign_df = load_benign_df(globals.benign_df);
        return snapshot;
    }
    return load_snapshot(paths);
}

int emit_results(const std::vector<SampleResult>& results) {
    size_t malicious = 0;
    size_t errors = 0;
    for (const auto& result : results) {
        if (!result.error.empty()) {
            ++errors;
            std::cerr << "error: " << result.sample << ": " << result.error << "\n";
            continue;
        }
        std::cout << verdict_json_line(result.sample, result.verdict) << "\n";
        if (result.verdict.malicious) ++malicious;
    }
    std::cerr << results.size() << " samples, " << malicious << " malicious, " << errors
              << " errors\n";
    if (errors) return kExitError;
    return malicious ? kExitDetection : kExitClean;
}

int cmd_analyze(const GlobalPaths& globals, const std::vector<std::string>& inputs) {
    const AppConfig config = load_app_config(globals);
    const PoolSnapshot snapshot = load_pools(globals);
    const auto files = expand_inputs(inputs);
    if (files.empty()) {
        std::cerr << "error: no input files\n";
        return kExitError;
    }
    auto results = run_pool(globals.jobs, files.size(), [&](size_t i) {
        return analyze_sample(files[i], config, snapshot);
    });
    return emit_results(results);
}

std::optional<std::string> read_label(const fs::path& sample) {
    const fs::path sidecar = sample.string() + ".label";
    std::error_code ec;
    if (!fs::is_regular_file(sidecar, ec)) return std::nullopt;
    std::string label = read_file(sidecar);
    while (!label.empty() && (label.back() == '\n' || label.back() == '\r' ||
                              label.back() == ' '))
        label.pop_back();
    return label;
}

int cmd_eval(const GlobalPaths& globals, const std::vector<std::string>& inputs) {
    const AppConfig config = load_app_config(globals);
    const PoolSnapshot snapshot = load_pools(globals);
    const auto files = expand_inputs(inputs);
    if (files.empty()) {
        std::cerr << "error: empty corpus\n";
        return kExitError;
    }

    std::vector<std::string> labels(files.size());
    for (size_t i = 0; i < files.size(); ++i) {
        auto label = read_label(files[i]);
        if (!label) {
            std::cerr << "error: missing label sidecar for " << files[i].string() << "\n";
            return kExitError;
        }
        if (*label != "benign" && !malicious_type_from_string(*label)) {
            std::cerr << "error: bad label '" << *label << "' for " << files[i].string()
                      << "\n";
            return kExitError;
        }
        labels[i] = *label;
    }

    auto results = run_pool(globals.jobs, files.size(), [&](size_t i) {
        return analyze_sample(files[i], config, snapshot);
    });

    size_t tp = 0, fp = 0, tn = 0, fn = 0, errors = 0;
    struct TypeRow {
        size_t total = 0;
        size_t detected = 0;
        size_t typed = 0;
    };
    std::map<std::string, TypeRow> per_type;
    for (size_t i = 0; i < results.size(); ++i) {
        const auto& result = results[i];
        if (!result.error.empty()) {
            ++errors;
            std::cerr << "error: " << result.sample << ": " << result.error << "\n";
            continue;
        }
        std::cout << verdict_json_line(result.sample, result.verdict) << "\n";
        const bool labeled_malicious = labels[i] != "benign";
        if (labeled_malicious) {
            auto& row = per_type[labels[i]];
            ++row.total;
            if (result.verdict.malicious) {
                ++tp;
                ++row.detected;
                auto type = malicious_type_from_string(labels[i]);
                if (type && result.verdict.types.count(*type)) ++row.typed;
            } else {
                ++fn;
            }
        } else {
            result.verdict.malicious ? ++fp : ++tn;
        }
    }

    const size_t labeled_malicious = tp + fn;
    const size_t labeled_benign = fp + tn;
    auto pct = [](size_t num, size_t den) {
        return den == 0 ? 0.0 : 100.0 * static_cast<double>(num) / static_cast<double>(den);
    };
    std::cerr << "samples: " << results.size() << " (malicious " << labeled_malicious
              << ", benign " << labeled_benign << ", errors " << errors << ")\n";
    char line[160];
    std::snprintf(line, sizeof(line), "detection rate: %.1f%% (%zu/%zu)\n",
                  pct(tp, labeled_malicious), tp, labeled_malicious);
    std::cerr << line;
    std::snprintf(line, sizeof(line), "false positives: %.1f%% (%zu/%zu)\n",
                  pct(fp, labeled_benign), fp, labeled_benign);
    std::cerr << line;
    std::cerr << "type                 total  detected  typed\n";
    for (const auto& [name, row] : per_type) {
        std::snprintf(line, sizeof(line), "%-20s %5zu  %8zu  %5zu\n", name.c_str(),
                      row.total, row.detected, row.typed);
        std::cerr << line;
    }

    if (errors) return kExitError;
    return tp + fp ? kExitDetection : kExitClean;
}

int cmd_gen_signatures(const GlobalPaths& globals, const std::string& samples_dir,
                       const std::string& benign_dir, const std::string& out_path) {
    const AppConfig config = load_app_config(globals);

    const auto sample_files = expand_inputs({samples_dir});
    if (sample_files.size() < 2) {
        std::cerr << "error: need at least 2 malicious samples, found "
                  << sample_files.size() << "\n";
        return kExitError;
    }

    // Tokenize the pool and build its vector space.
    std::vector<TokenDocument> docs;
    std::vector<std::set<std::string>> token_sets;
    std::vector<ContentMeta> metas;
    std::vector<std::optional<MaliciousType>> types;
    for (const auto& path : sample_files) {
        const std::string body = read_file(path);
        TokenDocument doc;
        doc.sample_id = path.filename().string();
        std::set<std::string> texts;
        for (const auto& token : tokenize_script(body)) {
            doc.counts[token.text] += 1;
            texts.insert(token.text);
        }
        if (doc.counts.empty()) {
            std::cerr << "skip (no tokens): " << path.string() << "\n";
            continue;
        }
        docs.push_back(std::move(doc));
        token_sets.push_back(std::move(texts));
        metas.push_back(meta_from_sidecar(path));
        auto label = read_label(path);
        types.push_back(label ? malicious_type_from_string(*label) : std::nullopt);
    }
    if (docs.size() < 2) {
        std::cerr << "error: fewer than 2 tokenizable samples\n";
        return kExitError;
    }

    const auto vectors = tfidf_vectors(docs);

    ClusterTree tree(config.cluster);
    std::map<int, std::vector<size_t>> cluster_members;
    for (size_t i = 0; i < vectors.size(); ++i) {
        const int cluster_id = tree.insert(vectors[i], metas[i]);
        cluster_members[cluster_id].push_back(i);
    }

    BenignCorpus benign;
    if (!benign_dir.empty()) {
        std::vector<std::string> bodies;
        for (const auto& path : expand_inputs({benign_dir}))
            bodies.push_back(read_file(path));
        benign = BenignCorpus::from_scripts(bodies);
    }

    std::vector<SignatureRecord> records;
    std::set<std::string> record_ids;
    size_t rejected = 0;
    const std::time_t now = std::time(nullptr);
    for (const auto& [cluster_id, members] : cluster_members) {
        if (members.size() < config.siggen.min_cluster_size) {
            std::cerr << "cluster " << cluster_id << ": rejected (only " << members.size()
                      << " member)\n";
            ++rejected;
            continue;
        }

        // Majority label decides the signature's type; unlabeled members
        // abstain, label-free clusters are skipped.
        std::map<MaliciousType, size_t> votes;
        for (size_t i : members) {
            if (types[i]) votes[*types[i]] += 1;
        }
        if (votes.empty()) {
            std::cerr << "cluster " << cluster_id << ": rejected (no labeled members)\n";
            ++rejected;
            continue;
        }
        MaliciousType majority = votes.begin()->first;
        size_t best_votes = 0;
        for (const auto& [type, count] : votes) {
            if (count > best_votes) {
                best_votes = count;
                majority = type;
            }
        }

        std::vector<ClusterSample> cluster;
        for (size_t i : members)
            cluster.push_back({docs[i].sample_id, token_sets[i], vectors[i]});

        try {
            SignatureRecord candidate =
                conjunction_signature(cluster, majority, now, config.siggen);
            SignatureRecord refined =
                refine_signature(candidate, benign, cluster, config.siggen);
            if (!record_ids.insert(refined.id).second) {
                std::cerr << "cluster " << cluster_id << ": rejected (duplicate of "
                          << refined.id << ")\n";
                ++rejected;
                continue;
            }
            records.push_back(std::move(refined));
        } catch (const SignatureGenError& e) {
            std::cerr << "cluster " << cluster_id << ": rejected (" << e.what() << ")\n";
            ++rejected;
        }
    }

    SignaturePoolFile pool;
    pool.signatures = records;
    save_pool(pool, out_path);
    if (!globals.benign_df.empty()) save_benign_df(benign.df(), globals.benign_df);

    std::cerr << docs.size() << " samples -> " << cluster_members.size() << " clusters, "
              << records.size() << " signatures (" << rejected << " clusters rejected)\n";
    std::cerr << "wrote " << out_path << "\n";
    return kExitClean;
}

int cmd_serve(const GlobalPaths& globals) {
    const AppConfig config = load_app_config(globals);

    auto store = std::make_shared<PoolStore>();
    SnapshotPaths paths;
    paths.signatures = globals.signatures;
    paths.traces = globals.traces;
    paths.benign_df = globals.benign_df;
    paths.traces_optional = globals.traces_optional;
    std::error_code ec;
    if (fs::exists(globals.signatures, ec)) {
        store->reload(paths);
    } else if (globals.signatures_explicit) {
        std::cerr << "error: signature pool not found: " << globals.signatures << "\n";
        return kExitError;
    } else {
        JSG_WARN("serving without a signature pool; every page will pass");
        SignaturePoolFile empty;
        const fs::path tmp = fs::temp_directory_path() / "jsguard-empty-signatures.json";
        save_pool(empty, tmp.string());
        SnapshotPaths empty_paths;
        empty_paths.signatures = tmp.string();
        store->reload(empty_paths);
    }

    IcapServer server(config.gateway, config.analysis, store);
    server.start();

    std::signal(SIGINT, handle_signal);
    std::signal(SIGTERM, handle_signal);
    while (!g_shutdown) std::this_thread::sleep_for(std::chrono::milliseconds(100));
    JSG_INFO("shutdown signal received; draining");
    server.stop();
    return kExitClean;
}

int cmd_trace_match(const GlobalPaths& globals, const std::vector<std::string>& inputs,
                    bool build, const std::string& out_path) {
    const AppConfig config = load_app_config(globals);
    const auto files = [&] {
        std::vector<fs::path> all;
        for (const auto& input : inputs) {
            fs::path path(input);
            std::error_code ec;
            if (fs::is_directory(path, ec)) {
                for (const auto& entry : fs::recursive_directory_iterator(path, ec)) {
                    if (entry.is_regular_file() &&
                        entry.path().string().ends_with(".xml") &&
                        !entry.path().filename().string().starts_with("."))
                        all.push_back(entry.path());
                }
                std::sort(all.begin(), all.end());
            } else {
                all.push_back(path);
            }
        }
        return all;
    }();
    if (files.empty()) {
        std::cerr << "error: no trace files\n";
        return kExitError;
    }

    if (build) {
        std::vector<TraceFingerprint> pool;
        size_t errors = 0;
        for (const auto& path : files) {
            try {
                const CallTrace trace = parse_trace_xml(read_file(path));
                if (trace.records.empty())
                    throw std::runtime_error("trace has no call records");
                auto label = read_label(path);
                if (!label)
                    throw std::runtime_error("missing .label sidecar naming the type");
                auto type = malicious_type_from_string(*label);
                if (!type) throw std::runtime_error("bad label '" + *label + "'");
                pool.push_back({trace_fingerprint(trace),
                                trace.sample_id.empty() ? path.filename().string()
                                                        : trace.sample_id,
                                *type});
            } catch (const std::exception& e) {
                std::cerr << "error: " << path.string() << ": " << e.what() << "\n";
                ++errors;
            }
        }
        if (errors) return kExitError;
        save_trace_pool(pool, out_path);
        std::cerr << "wrote " << pool.size() << " fingerprints to " << out_path << "\n";
        return kExitClean;
    }

    if (globals.traces.empty()) {
        std::cerr << "error: --traces POOL is required for matching\n";
        return kExitError;
    }
    const auto pool = load_trace_pool(globals.traces);
    size_t matches = 0, errors = 0;
    for (const auto& path : files) {
        try {
            const CallTrace trace = parse_trace_xml(read_file(path));
            if (trace.records.empty()) throw std::runtime_error("trace has no call records");
            auto verdict =
                trace_verdict(trace, pool, config.analysis.trace_threshold);
            nlohmann::json line;
            line["sample"] = path.string();
            line["matched"] = verdict.has_value();
            if (verdict) {
                ++matches;
                line["match"] = {{"sample_id", verdict->sample_id},
                                 {"type", to_string(verdict->type)},
                                 {"distance", verdict->distance}};
            } else {
                line["match"] = nullptr;
            }
            std::cout << line.dump() << "\n";
        } catch (const std::exception& e) {
            std::cerr << "error: " << path.string() << ": " << e.what() << "\n";
            ++errors;
        }
    }
    std::cerr << files.size() << " traces, " << matches << " matched, " << errors
              << " errors\n";
    if (errors) return kExitError;
    return matches ? kExitDetection : kExitClean;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"in-line malicious-script protection toolkit"};
    app.require_subcommand(1);

    GlobalPaths globals;
    app.add_option("--config", globals.config_path, "configuration file (JSON)");
    auto* sig_opt =
        app.add_option("--signatures", globals.signatures, "signature pool file");
    app.add_option("--traces", globals.traces, "trace fingerprint pool file");
    app.add_flag("--traces-optional", globals.traces_optional,
                 "missing trace pool file yields an empty pool");
    app.add_option("--benign-df", globals.benign_df, "benign document-frequency table");
    app.add_option("--log-level", globals.log_level, "debug|info|warn|error");
    app.add_option("--jobs", globals.jobs, "worker threads for corpus commands");

    std::vector<std::string> analyze_inputs;
    auto* analyze = app.add_subcommand("analyze", "classify script/html/bundle files");
    analyze->add_option("inputs", analyze_inputs, "files or directories")->required();

    std::vector<std::string> eval_inputs;
    auto* eval = app.add_subcommand("eval", "run a labeled corpus and report rates");
    eval->add_option("inputs", eval_inputs, "files or directories with .label sidecars")
        ->required();

    std::string samples_dir, benign_dir, gen_out = "signatures.json";
    auto* gen = app.add_subcommand("gen-signatures",
                                   "cluster malicious samples and forge signatures");
    gen->add_option("--samples", samples_dir, "directory of malicious scripts")->required();
    gen->add_option("--benign", benign_dir, "directory of benign scripts");
    gen->add_option("--out", gen_out, "output signature pool path");

    auto* serve = app.add_subcommand("serve", "run the ICAP adaptation service");

    std::vector<std::string> trace_inputs;
    bool trace_build = false;
    std::string trace_out = "traces.pool";
    auto* trace = app.add_subcommand("trace-match", "match or pool call traces");
    trace->add_option("inputs", trace_inputs, "trace xml files or directories")->required();
    trace->add_flag("--build", trace_build, "build a fingerprint pool from labeled traces");
    trace->add_option("--out", trace_out, "pool output path (with --build)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Usage problems land on the error exit code; --help stays clean.
        const int code = app.exit(e);
        return code == 0 ? kExitClean : kExitError;
    }

    LogLevel level;
    if (!parse_log_level(globals.log_level, level)) {
        std::cerr << "error: unknown log level '" << globals.log_level << "'\n";
        return kExitError;
    }
    set_log_level(level);
    globals.signatures_explicit = sig_opt->count() > 0;

    try {
        if (*analyze) return cmd_analyze(globals, analyze_inputs);
        if (*eval) return cmd_eval(globals, eval_inputs);
        if (*gen) return cmd_gen_signatures(globals, samples_dir, benign_dir, gen_out);
        if (*serve) return cmd_serve(globals);
        if (*trace) return cmd_trace_match(globals, trace_inputs, trace_build, trace_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
