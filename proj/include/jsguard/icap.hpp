#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace jsguard::icap {

// Raised on any malformed protocol element; the server answers 400 and
// drops the connection.
class ProtocolError : public std::runtime_error {
public:
    explicit ProtocolError(const std::string& detail) : std::runtime_error(detail) {}
};

// One start-line plus ordered headers; used for both ICAP heads and the
// embedded HTTP heads.
struct Message {
    std::string start_line;
    std::vector<std::pair<std::string, std::string>> headers;
};

// Case-insensitive lookup of the first matching header.
std::optional<std::string> find_header(const Message& message, std::string_view name);

// Parses a head block: start line, then "Name: value" lines. Accepts the
// block with or without its blank-line terminator.
Message parse_head(const std::string& text);

// Start line + headers + terminating blank line, CRLF line endings.
std::string format_head(const Message& message);

struct EncapsulatedEntry {
    std::string name;  // req-hdr | res-hdr | req-body | res-body | null-body | opt-body
    size_t offset = 0;
};

// "res-hdr=0, res-body=137" and friends. Offsets must start at 0 and be
// non-decreasing; exactly one *-body entry must close the list.
std::vector<EncapsulatedEntry> parse_encapsulated(const std::string& value);
std::string format_encapsulated(const std::vector<EncapsulatedEntry>& entries);

// Encodes a body as a single chunk plus the last-chunk terminator. Empty
// bodies encode to just the terminator.
std::string chunk_encode(std::string_view body);

// Pull-based buffered reader so the codec can be driven by sockets and by
// in-memory strings alike. The callback returns bytes read, 0 on EOF, and
// a negative value on error.
class BufferedReader {
public:
    using ReadFn = std::function<long(char* out, size_t max)>;

    explicit BufferedReader(ReadFn fn) : fn_(std::move(fn)) {}

    // Reads through the next LF; strips the trailing CRLF or LF. Returns
    // false on clean EOF before any byte; throws ProtocolError on EOF
    // mid-line or read error.
    bool read_line(std::string& line);

    // Exactly n bytes into out. Returns false on clean EOF before any byte;
    // throws on partial reads.
    bool read_exact(char* out, size_t n);

    // Reads up to and including the CRLF CRLF (or LF LF) head terminator.
    // Returns false on clean EOF before any byte.
    bool read_head(std::string& head);

private:
    bool fill();

    ReadFn fn_;
    std::string buf_;
    size_t pos_ = 0;
    bool eof_ = false;
};

struct ChunkedBody {
    std::string data;
    bool ieof = false;  // last chunk carried the "ieof" extension (preview)
};

// Decodes a chunked body off the reader, trailers discarded. `max_bytes`
// of 0 means unlimited; exceeding it raises ProtocolError.
ChunkedBody read_chunked(BufferedReader& in, size_t max_bytes = 0);

}  // namespace jsguard::icap
