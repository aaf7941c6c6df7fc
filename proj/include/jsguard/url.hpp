#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace jsguard {

struct Url {
    std::string scheme;  // lowercase
    std::string host;    // lowercase
    int port = 0;        // resolved (default applied when absent)
    std::string target;  // path + query, always starts with '/'

    std::string origin() const;  // "scheme://host:port"
    std::string str() const;
};

int default_port(std::string_view scheme);

// Absolute URLs only ("http://h:8080/a?q"). No userinfo, no IPv6 hosts.
std::optional<Url> parse_url(std::string_view text);

// RFC 3986-style reference resolution, enough for crawling page links:
// absolute refs pass through, scheme-relative ("//h/x"), absolute-path,
// relative-path, query and fragment refs resolve against base. Dot segments
// are removed. Returns empty when base is unusable.
std::string resolve_url(std::string_view base, std::string_view ref);

}  // namespace jsguard
