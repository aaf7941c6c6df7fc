#include "jsguard/icap.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>

namespace jsguard::icap {

namespace {

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    }
    return true;
}

std::string trim(std::string_view s) {
    size_t b = 0;
    size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

}  // namespace

std::optional<std::string> find_header(const Message& message, std::string_view name) {
    for (const auto& [key, value] : message.headers) {
        if (iequals(key, name)) return value;
    }
    return std::nullopt;
}

Message parse_head(const std::string& text) {
    Message message;
    size_t pos = 0;
    bool first = true;
    while (pos < text.size()) {
        size_t eol = text.find('\n', pos);
        std::string line = eol == std::string::npos ? text.substr(pos)
                                                    : text.substr(pos, eol - pos);
        pos = eol == std::string::npos ? text.size() : eol + 1;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) break;  // head terminator

        if (first) {
            message.start_line = line;
            first = false;
            continue;
        }
        size_t colon = line.find(':');
        if (colon == std::string::npos)
            throw ProtocolError("header line without colon: '" + line + "'");
        std::string name = trim(std::string_view(line).substr(0, colon));
        if (name.empty()) throw ProtocolError("header line with empty name");
        message.headers.emplace_back(std::move(name),
                                     trim(std::string_view(line).substr(colon + 1)));
    }
    if (first) throw ProtocolError("empty message head");
    return message;
}

std::string format_head(const Message& message) {
    std::string out = message.start_line + "\r\n";
    for (const auto& [name, value] : message.headers) {
        out += name;
        out += ": ";
        out += value;
        out += "\r\n";
    }
    out += "\r\n";
    return out;
}

std::vector<EncapsulatedEntry> parse_encapsulated(const std::string& value) {
    std::vector<EncapsulatedEntry> entries;
    size_t pos = 0;
    while (pos < value.size()) {
        size_t comma = value.find(',', pos);
        std::string part = trim(std::string_view(value).substr(
            pos, comma == std::string::npos ? std::string::npos : comma - pos));
        pos = comma == std::string::npos ? value.size() : comma + 1;
        if (part.empty()) continue;

        size_t eq = part.find('=');
        if (eq == std::string::npos)
            throw ProtocolError("Encapsulated entry without '=': '" + part + "'");
        EncapsulatedEntry entry;
        entry.name = trim(std::string_view(part).substr(0, eq));
        const std::string off = trim(std::string_view(part).substr(eq + 1));
        if (off.empty() || off.find_first_not_of("0123456789") != std::string::npos)
            throw ProtocolError("Encapsulated offset not a number: '" + part + "'");
        entry.offset = std::stoull(off);
        entries.push_back(std::move(entry));
    }
    if (entries.empty()) throw ProtocolError("empty Encapsulated header");
    if (entries.front().offset != 0)
        throw ProtocolError("first Encapsulated offset must be 0");
    for (size_t i = 1; i < entries.size(); ++i) {
        if (entries[i].offset < entries[i - 1].offset)
            throw ProtocolError("Encapsulated offsets must be non-decreasing");
    }
    const std::string& last = entries.back().name;
    if (last != "res-body" && last != "req-body" && last != "null-body" &&
        last != "opt-body")
        throw ProtocolError("Encapsulated list must end with a body entry, got '" + last +
                            "'");
    for (size_t i = 0; i + 1 < entries.size(); ++i) {
        const std::string& name = entries[i].name;
        if (name != "req-hdr" && name != "res-hdr")
            throw ProtocolError("unexpected Encapsulated entry '" + name + "'");
    }
    return entries;
}

std::string format_encapsulated(const std::vector<EncapsulatedEntry>& entries) {
    std::string out;
    for (size_t i = 0; i < entries.size(); ++i) {
        if (i) out += ", ";
        out += entries[i].name + "=" + std::to_string(entries[i].offset);
    }
    return out;
}

std::string chunk_encode(std::string_view body) {
    std::string out;
    if (!body.empty()) {
        char size_line[32];
        std::snprintf(size_line, sizeof(size_line), "%zx\r\n", body.size());
        out += size_line;
        out.append(body.data(), body.size());
        out += "\r\n";
    }
    out += "0\r\n\r\n";
    return out;
}

bool BufferedReader::fill() {
    if (eof_) return false;
    char chunk[8192];
    long n = fn_(chunk, sizeof(chunk));
    if (n < 0) throw ProtocolError("read error");
    if (n == 0) {
        eof_ = true;
        return false;
    }
    buf_.append(chunk, static_cast<size_t>(n));
    return true;
}

bool BufferedReader::read_line(std::string& line) {
    size_t eol;
    while ((eol = buf_.find('\n', pos_)) == std::string::npos) {
        if (!fill()) {
            if (pos_ >= buf_.size()) return false;
            throw ProtocolError("EOF inside a line");
        }
    }
    line.assign(buf_, pos_, eol - pos_);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    pos_ = eol + 1;
    if (pos_ > 1 << 20) {
        buf_.erase(0, pos_);
        pos_ = 0;
    }
    return true;
}

bool BufferedReader::read_exact(char* out, size_t n) {
    bool any = pos_ < buf_.size();
    while (buf_.size() - pos_ < n) {
        if (!fill()) {
            if (!any && pos_ >= buf_.size()) return false;
            throw ProtocolError("EOF inside a fixed-length read");
        }
        any = true;
    }
    buf_.copy(out, n, pos_);
    pos_ += n;
    if (pos_ > 1 << 20) {
        buf_.erase(0, pos_);
        pos_ = 0;
    }
    return true;
}

bool BufferedReader::read_head(std::string& head) {
    head.clear();
    std::string line;
    bool first = true;
    while (true) {
        if (!read_line(line)) {
            if (first) return false;
            throw ProtocolError("EOF inside a message head");
        }
        first = false;
        if (line.empty()) return true;
        head += line;
        head += "\r\n";
    }
}

ChunkedBody read_chunked(BufferedReader& in, size_t max_bytes) {
    ChunkedBody body;
    std::string line;
    while (true) {
        if (!in.read_line(line)) throw ProtocolError("EOF before chunk size");
        std::string size_part = line;
        bool ieof = false;
        if (size_t ext = line.find(';'); ext != std::string::npos) {
            size_part = trim(std::string_view(line).substr(0, ext));
            std::string rest = line.substr(ext + 1);
            std::transform(rest.begin(), rest.end(), rest.begin(),
                           [](unsigned char c) { return std::tolower(c); });
            ieof = rest.find("ieof") != std::string::npos;
        }
        size_part = trim(size_part);
        if (size_part.empty() ||
            size_part.find_first_not_of("0123456789abcdefABCDEF") != std::string::npos)
            throw ProtocolError("bad chunk size line: '" + line + "'");
        const size_t size = std::stoull(size_part, nullptr, 16);

        if (size == 0) {
            body.ieof = ieof;
            // Trailers until the blank line.
            while (true) {
                if (!in.read_line(line)) throw ProtocolError("EOF inside chunk trailers");
                if (line.empty()) break;
            }
            return body;
        }
        if (max_bytes && body.data.size() + size > max_bytes)
            throw ProtocolError("chunked body exceeds limit");
        const size_t at = body.data.size();
        body.data.resize(at + size);
        if (!in.read_exact(body.data.data() + at, size))
            throw ProtocolError("EOF inside chunk data");
        if (!in.read_line(line) || !line.empty())
            throw ProtocolError("missing CRLF after chunk data");
    }
}

}  // namespace jsguard::icap
