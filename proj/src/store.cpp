#include "jsguard/store.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include <json.hpp>

#include "jsguard/tokenizer.hpp"

namespace jsguard {

namespace {

void default_writer(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw StoreError(StoreError::Kind::Io, "cannot open " + path + " for writing");
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    out.flush();
    if (!out) throw StoreError(StoreError::Kind::Io, "short write to " + path);
}

// Write-to-temp plus rename; the destination is either the old file or the
// complete new one, never a prefix.
void atomic_write(const std::string& path, const std::string& data,
                  const FileWriter& writer) {
    const std::string tmp = path + ".tmp";
    try {
        writer(tmp, data);
    } catch (...) {
        std::remove(tmp.c_str());
        throw;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        int err = errno;
        std::remove(tmp.c_str());
        throw StoreError(StoreError::Kind::Io,
                         "rename " + tmp + " -> " + path + ": " + std::strerror(err));
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StoreError(StoreError::Kind::Io, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw StoreError(StoreError::Kind::Io, "read failed for " + path);
    return buf.str();
}

// '#' is escaped so no encoded token can ever start a comment line.
bool needs_pct(unsigned char c) {
    return c < 0x21 || c == 0x7f || c == '%' || c == '#';
}

std::string pct_encode(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (unsigned char c : s) {
        if (needs_pct(c)) {
            char buf[4];
            std::snprintf(buf, sizeof(buf), "%%%02X", c);
            out += buf;
        } else {
            out += static_cast<char>(c);
        }
    }
    return out;
}

std::string pct_decode(const std::string& s, const std::string& path, size_t line_no) {
    std::string out;
    out.reserve(s.size());
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '%') {
            out += s[i];
            continue;
        }
        if (i + 2 >= s.size() || !std::isxdigit(static_cast<unsigned char>(s[i + 1])) ||
            !std::isxdigit(static_cast<unsigned char>(s[i + 2]))) {
            throw StoreError(StoreError::Kind::Validation,
                             path + ":" + std::to_string(line_no) + ": bad percent escape");
        }
        out += static_cast<char>(std::stoi(s.substr(i + 1, 2), nullptr, 16));
        i += 2;
    }
    return out;
}

// Splits body into lines, checks the "#format=1" header, and hands each
// data line (with its 1-based number) to the callback.
void for_each_data_line(const std::string& body, const std::string& path,
                        const std::function<void(size_t, const std::string&)>& fn) {
    std::istringstream in(body);
    std::string line;
    size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (!header_seen && line != "#format=1")
                throw StoreError(StoreError::Kind::Validation,
                                 path + ": unsupported format header '" + line + "'");
            header_seen = true;
            continue;
        }
        if (!header_seen)
            throw StoreError(StoreError::Kind::Validation,
                             path + ": missing #format=1 header");
        fn(line_no, line);
    }
    if (!header_seen)
        throw StoreError(StoreError::Kind::Validation, path + ": missing #format=1 header");
}

void validate_record(const SignatureRecord& record) {
    if (record.id.empty())
        throw StoreError(StoreError::Kind::Validation, "signature with empty id");
    if (record.tokens.empty())
        throw StoreError(StoreError::Kind::Validation,
                         "signature " + record.id + " has no tokens");
    for (const auto& token : record.tokens) {
        if (token.value.empty())
            throw StoreError(StoreError::Kind::Validation,
                             "signature " + record.id + " has an empty token");
        if (token.kind == SignatureToken::Kind::Regex) {
            try {
                std::regex probe(token.value, std::regex::ECMAScript);
            } catch (const std::regex_error& e) {
                throw StoreError(StoreError::Kind::Validation,
                                 "signature " + record.id + " has a bad regex token: " +
                                     e.what());
            }
        }
    }
}

}  // namespace

std::string serialize_pool(const SignaturePoolFile& pool) {
    nlohmann::json doc;
    doc["format_version"] = pool.format_version;
    doc["signatures"] = nlohmann::json::array();
    for (const auto& record : pool.signatures) {
        nlohmann::json rec;
        rec["id"] = record.id;
        rec["type"] = to_string(record.type);
        rec["tokens"] = nlohmann::json::array();
        for (const auto& token : record.tokens) {
            rec["tokens"].push_back(
                {{"kind", token.kind == SignatureToken::Kind::Regex ? "regex" : "literal"},
                 {"value", token.value}});
        }
        rec["provenance"] = record.provenance;
        rec["created_at"] = format_rfc3339(record.created_at);
        doc["signatures"].push_back(std::move(rec));
    }
    return doc.dump(2) + "\n";
}

SignaturePoolFile parse_pool(const std::string& document) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(document);
    } catch (const nlohmann::json::exception& e) {
        throw StoreError(StoreError::Kind::Validation,
                         std::string("signature pool is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("format_version") || !doc.contains("signatures"))
        throw StoreError(StoreError::Kind::Validation,
                         "signature pool must carry format_version and signatures");
    if (doc["format_version"] != 1)
        throw StoreError(StoreError::Kind::Validation,
                         "unsupported signature pool format_version");
    if (!doc["signatures"].is_array())
        throw StoreError(StoreError::Kind::Validation, "signatures must be an array");

    SignaturePoolFile pool;
    std::set<std::string> seen_ids;
    for (const auto& rec : doc["signatures"]) {
        SignatureRecord record;
        try {
            record.id = rec.at("id").get<std::string>();
            auto type = malicious_type_from_string(rec.at("type").get<std::string>());
            if (!type)
                throw StoreError(StoreError::Kind::Validation,
                                 "signature " + record.id + " has unknown type '" +
                                     rec.at("type").get<std::string>() + "'");
            record.type = *type;
            for (const auto& tok : rec.at("tokens")) {
                SignatureToken token;
                const std::string kind = tok.at("kind").get<std::string>();
                if (kind == "regex") {
                    token.kind = SignatureToken::Kind::Regex;
                } else if (kind == "literal") {
                    token.kind = SignatureToken::Kind::Literal;
                } else {
                    throw StoreError(StoreError::Kind::Validation,
                                     "signature " + record.id + " has unknown token kind '" +
                                         kind + "'");
                }
                token.value = tok.at("value").get<std::string>();
                record.tokens.push_back(std::move(token));
            }
            if (rec.contains("provenance"))
                record.provenance = rec["provenance"].get<std::vector<std::string>>();
            if (rec.contains("created_at")) {
                auto t = parse_rfc3339(rec["created_at"].get<std::string>());
                if (!t)
                    throw StoreError(StoreError::Kind::Validation,
                                     "signature " + record.id + " has a bad created_at");
                record.created_at = *t;
            }
        } catch (const nlohmann::json::exception& e) {
            throw StoreError(StoreError::Kind::Validation,
                             std::string("malformed signature record: ") + e.what());
        }
        validate_record(record);
        if (!seen_ids.insert(record.id).second)
            throw StoreError(StoreError::Kind::Validation,
                             "duplicate signature id " + record.id);
        pool.signatures.push_back(std::move(record));
    }
    return pool;
}

void save_pool(const SignaturePoolFile& pool, const std::string& path) {
    save_pool(pool, path, default_writer);
}

void save_pool(const SignaturePoolFile& pool, const std::string& path,
               const FileWriter& writer) {
    atomic_write(path, serialize_pool(pool), writer);
}

void save_trace_pool(const std::vector<TraceFingerprint>& pool, const std::string& path) {
    save_trace_pool(pool, path, default_writer);
}

void save_trace_pool(const std::vector<TraceFingerprint>& pool, const std::string& path,
                     const FileWriter& writer) {
    std::ostringstream out;
    out << "#format=1\n";
    for (const auto& entry : pool) {
        if (entry.sample_id.empty() ||
            entry.sample_id.find_first_of("\t\r\n") != std::string::npos)
            throw StoreError(StoreError::Kind::Validation,
                             "trace sample id unfit for line format: '" + entry.sample_id +
                                 "'");
        char hex[17];
        std::snprintf(hex, sizeof(hex), "%016llx",
                      static_cast<unsigned long long>(entry.bits));
        out << hex << '\t' << to_string(entry.type) << '\t' << entry.sample_id << '\n';
    }
    atomic_write(path, out.str(), writer);
}

std::vector<TraceFingerprint> load_trace_pool(const std::string& path) {
    const std::string body = read_file(path);
    std::vector<TraceFingerprint> pool;
    for_each_data_line(body, path, [&](size_t line_no, const std::string& line) {
        auto t1 = line.find('\t');
        auto t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
        if (t1 == std::string::npos || t2 == std::string::npos)
            throw StoreError(StoreError::Kind::Validation,
                             path + ":" + std::to_string(line_no) +
                                 ": expected 3 tab-separated fields");
        const std::string hex = line.substr(0, t1);
        const std::string type_name = line.substr(t1 + 1, t2 - t1 - 1);
        const std::string sample_id = line.substr(t2 + 1);

        TraceFingerprint entry;
        if (hex.size() != 16 || hex.find_first_not_of("0123456789abcdefABCDEF") !=
                                    std::string::npos)
            throw StoreError(StoreError::Kind::Validation,
                             path + ":" + std::to_string(line_no) +
                                 ": fingerprint must be 16 hex digits");
        entry.bits = std::stoull(hex, nullptr, 16);
        auto type = malicious_type_from_string(type_name);
        if (!type)
            throw StoreError(StoreError::Kind::Validation,
                             path + ":" + std::to_string(line_no) + ": unknown type '" +
                                 type_name + "'");
        entry.type = *type;
        if (sample_id.empty())
            throw StoreError(StoreError::Kind::Validation,
                             path + ":" + std::to_string(line_no) + ": empty sample id");
        entry.sample_id = sample_id;
        pool.push_back(std::move(entry));
    });
    return pool;
}

void save_benign_df(const std::map<std::string, double>& df, const std::string& path) {
    save_benign_df(df, path, default_writer);
}

void save_benign_df(const std::map<std::string, double>& df, const std::string& path,
                    const FileWriter& writer) {
    std::ostringstream out;
    out << "#format=1\n";
    for (const auto& [token, fraction] : df) {
        char num[32];
        std::snprintf(num, sizeof(num), "%.17g", fraction);
        out << pct_encode(token) << '\t' << num << '\n';
    }
    atomic_write(path, out.str(), writer);
}

std::map<std::string, double> load_benign_df(const std::string& path) {
    const std::string body = read_file(path);
    std::map<std::string, double> df;
    for_each_data_line(body, path, [&](size_t line_no, const std::string& line) {
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw StoreError(StoreError::Kind::Validation,
                             path + ":" + std::to_string(line_no) +
                                 ": expected 2 tab-separated fields");
        const std::string token = pct_decode(line.substr(0, tab), path, line_no);
        double fraction = 0.0;
        try {
            fraction = std::stod(line.substr(tab + 1));
        } catch (const std::exception&) {
            throw StoreError(StoreError::Kind::Validation,
                             path + ":" + std::to_string(line_no) + ": bad fraction");
        }
        if (!(fraction >= 0.0 && fraction <= 1.0))
            throw StoreError(StoreError::Kind::Validation,
                             path + ":" + std::to_string(line_no) +
                                 ": fraction out of [0,1]");
        df[token] = fraction;
    });
    return df;
}

PoolSnapshot load_snapshot(const SnapshotPaths& paths) {
    PoolSnapshot snapshot;

    SignaturePoolFile pool = parse_pool(read_file(paths.signatures));

    if (!paths.samples_dir.empty()) {
        for (const auto& record : pool.signatures) {
            for (const auto& sample_id : record.provenance) {
                const auto sample_path =
                    std::filesystem::path(paths.samples_dir) / sample_id;
                std::error_code ec;
                if (!std::filesystem::is_regular_file(sample_path, ec)) continue;
                std::set<std::string> texts;
                for (const auto& token : tokenize_script(read_file(sample_path.string())))
                    texts.insert(token.text);
                if (!signature_matches(record, texts))
                    throw StoreError(StoreError::Kind::Validation,
                                     "signature " + record.id +
                                         " does not match its provenance sample " +
                                         sample_id);
            }
        }
    }
    snapshot.signatures = SignaturePool(std::move(pool.signatures));

    if (!paths.traces.empty()) {
        std::error_code ec;
        const bool present = std::filesystem::exists(paths.traces, ec);
        if (present) {
            snapshot.traces = load_trace_pool(paths.traces);
        } else if (!paths.traces_optional) {
            throw StoreError(StoreError::Kind::Io,
                             "trace pool file missing: " + paths.traces);
        }
    }

    if (!paths.benign_df.empty()) snapshot.benign_df = load_benign_df(paths.benign_df);

    return snapshot;
}

std::shared_ptr<const PoolSnapshot> PoolStore::reload(const SnapshotPaths& paths) {
    auto snapshot = std::make_shared<PoolSnapshot>(load_snapshot(paths));
    std::lock_guard<std::mutex> lock(mu_);
    snapshot->generation = ++next_generation_;
    current_ = snapshot;
    return current_;
}

std::shared_ptr<const PoolSnapshot> PoolStore::current() const {
    std::lock_guard<std::mutex> lock(mu_);
    return current_;
}

}  // namespace jsguard
