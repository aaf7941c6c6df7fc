#include "jsguard/types.hpp"

#include <array>
#include <cctype>
#include <cstdio>

namespace jsguard {

namespace {

const std::array<std::string, 7> kTypeNames = {
    "HashDoS",        "XhrObjectDoS",   "NetworkScan", "PortScan",
    "GeolocationLeak", "WebSocketAbuse", "WebWorkerDDoS",
};

}  // namespace

const std::string& to_string(MaliciousType type) {
    return kTypeNames[static_cast<size_t>(type)];
}

std::optional<MaliciousType> malicious_type_from_string(const std::string& name) {
    for (size_t i = 0; i < kTypeNames.size(); ++i) {
        if (kTypeNames[i] == name) return static_cast<MaliciousType>(i);
    }
    return std::nullopt;
}

bool is_ipv4_literal(std::string_view text) {
    int octets = 0;
    size_t i = 0;
    while (i < text.size()) {
        size_t start = i;
        int value = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            value = value * 10 + (text[i] - '0');
            ++i;
            if (i - start > 3) return false;
        }
        if (i == start || value > 255) return false;
        ++octets;
        if (i == text.size()) break;
        if (text[i] != '.' || octets == 4) return false;
        ++i;
        if (i == text.size()) return false;  // trailing dot
    }
    return octets == 4;
}

std::optional<std::time_t> parse_rfc3339(const std::string& text) {
    std::tm tm{};
    int consumed = 0;
    if (std::sscanf(text.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%n", &tm.tm_year,
                    &tm.tm_mon, &tm.tm_mday, &tm.tm_hour, &tm.tm_min,
                    &tm.tm_sec, &consumed) != 6 ||
        consumed != 19) {
        return std::nullopt;
    }
    if (tm.tm_mon < 1 || tm.tm_mon > 12 || tm.tm_mday < 1 || tm.tm_mday > 31 ||
        tm.tm_hour > 23 || tm.tm_min > 59 || tm.tm_sec > 60) {
        return std::nullopt;
    }
    tm.tm_year -= 1900;
    tm.tm_mon -= 1;

    size_t i = static_cast<size_t>(consumed);
    if (i < text.size() && text[i] == '.') {  // drop fractional seconds
        ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    }
    long offset = 0;
    if (i >= text.size()) return std::nullopt;
    if (text[i] == 'Z' || text[i] == 'z') {
        ++i;
    } else if (text[i] == '+' || text[i] == '-') {
        int oh = 0, om = 0, n = 0;
        if (std::sscanf(text.c_str() + i + 1, "%2d:%2d%n", &oh, &om, &n) != 2 || n != 5) {
            return std::nullopt;
        }
        offset = (oh * 3600L + om * 60L) * (text[i] == '-' ? -1 : 1);
        i += 6;
    } else {
        return std::nullopt;
    }
    if (i != text.size()) return std::nullopt;

    std::time_t utc = timegm(&tm);
    return utc - offset;
}

std::string format_rfc3339(std::time_t t) {
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ",
                  tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                  tm.tm_min, tm.tm_sec);
    return buf;
}

}  // namespace jsguard
