#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "jsguard/static_analyzer.hpp"
#include "jsguard/trace.hpp"

namespace jsguard {

class StoreError : public std::runtime_error {
public:
    enum class Kind { Io, Validation };

    StoreError(Kind kind, const std::string& detail)
        : std::runtime_error(detail), kind_(kind) {}

    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

// On-disk signature pool: a JSON document with a format_version marker.
struct SignaturePoolFile {
    int format_version = 1;
    std::vector<SignatureRecord> signatures;
};

std::string serialize_pool(const SignaturePoolFile& pool);
SignaturePoolFile parse_pool(const std::string& document);

// Hook for fault-injection tests: receives the temp path and the full file
// body; the default writes with fstream and reports failures as io errors.
using FileWriter = std::function<void(const std::string& path, const std::string& data)>;

// Serializes to a sibling temp file, then renames over `path`, so a crash
// mid-write never damages the existing file.
void save_pool(const SignaturePoolFile& pool, const std::string& path);
void save_pool(const SignaturePoolFile& pool, const std::string& path,
               const FileWriter& writer);

// Trace fingerprints persist line-oriented: a "#format=1" header, then one
// "<16-hex-digit bits> TAB <type> TAB <sample_id>" line per fingerprint.
void save_trace_pool(const std::vector<TraceFingerprint>& pool, const std::string& path);
void save_trace_pool(const std::vector<TraceFingerprint>& pool, const std::string& path,
                     const FileWriter& writer);
std::vector<TraceFingerprint> load_trace_pool(const std::string& path);

// Benign document frequencies persist as "#format=1" plus "<token> TAB
// <fraction>" lines; token bytes below 0x21, 0x7f, and '%' are
// percent-encoded so tab/newline-bearing tokens survive.
void save_benign_df(const std::map<std::string, double>& df, const std::string& path);
void save_benign_df(const std::map<std::string, double>& df, const std::string& path,
                    const FileWriter& writer);
std::map<std::string, double> load_benign_df(const std::string& path);

struct SnapshotPaths {
    std::string signatures;   // required
    std::string traces;       // optional when traces_optional
    std::string benign_df;    // optional (empty table when absent)
    std::string samples_dir;  // when set, provenance bodies are verified
    bool traces_optional = false;
};

// Immutable loaded view the analysis path reads from.
struct PoolSnapshot {
    SignaturePool signatures;
    std::vector<TraceFingerprint> traces;
    std::map<std::string, double> benign_df;
    uint64_t generation = 0;
};

// Loads and validates all pool files (generation left at 0): unique ids,
// compilable regex tokens, and, when samples_dir holds a provenance sample's
// body, the signature must still match it. Errors name the offending record.
PoolSnapshot load_snapshot(const SnapshotPaths& paths);

// Owns the current snapshot. Reload builds a fresh snapshot off to the side
// and swaps it in atomically with a bumped generation; a failed reload
// leaves the current snapshot untouched.
class PoolStore {
public:
    std::shared_ptr<const PoolSnapshot> reload(const SnapshotPaths& paths);
    std::shared_ptr<const PoolSnapshot> current() const;

private:
    mutable std::mutex mu_;
    std::shared_ptr<const PoolSnapshot> current_;
    uint64_t next_generation_ = 0;
};

}  // namespace jsguard
