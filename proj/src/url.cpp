#include "jsguard/url.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace jsguard {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
}

bool is_scheme_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.';
}

// Splits off a leading "scheme:" when present.
std::optional<size_t> scheme_end(std::string_view text) {
    if (text.empty() || !std::isalpha(static_cast<unsigned char>(text[0]))) return std::nullopt;
    for (size_t i = 1; i < text.size(); ++i) {
        if (text[i] == ':') return i;
        if (!is_scheme_char(text[i])) return std::nullopt;
    }
    return std::nullopt;
}

std::string remove_dot_segments(std::string_view path) {
    std::vector<std::string> out;
    size_t i = 0;
    bool trailing_slash = !path.empty() && path.back() == '/';
    while (i < path.size()) {
        size_t j = path.find('/', i);
        std::string seg(path.substr(i, j == std::string_view::npos ? j : j - i));
        i = j == std::string_view::npos ? path.size() : j + 1;
        if (seg == "." || seg.empty()) continue;
        if (seg == "..") {
            if (!out.empty()) out.pop_back();
            continue;
        }
        out.push_back(std::move(seg));
    }
    std::string result;
    for (const auto& seg : out) {
        result += '/';
        result += seg;
    }
    if (result.empty()) result = "/";
    if (trailing_slash && result.back() != '/') result += '/';
    return result;
}

}  // namespace

int default_port(std::string_view scheme) {
    if (scheme == "http") return 80;
    if (scheme == "https") return 443;
    if (scheme == "ftp") return 21;
    return 0;
}

std::string Url::origin() const {
    return scheme + "://" + host + ":" + std::to_string(port);
}

std::string Url::str() const {
    std::string out = scheme + "://" + host;
    if (port != default_port(scheme)) out += ":" + std::to_string(port);
    out += target;
    return out;
}

std::optional<Url> parse_url(std::string_view text) {
    auto colon = scheme_end(text);
    if (!colon) return std::nullopt;
    Url url;
    url.scheme = lower(text.substr(0, *colon));
    std::string_view rest = text.substr(*colon + 1);
    if (rest.substr(0, 2) != "//") return std::nullopt;
    rest.remove_prefix(2);

    size_t host_end = rest.find_first_of("/?#");
    std::string_view authority = rest.substr(0, host_end);
    std::string_view target = host_end == std::string_view::npos ? "" : rest.substr(host_end);

    size_t port_sep = authority.rfind(':');
    if (port_sep != std::string_view::npos) {
        std::string_view port_text = authority.substr(port_sep + 1);
        int port = 0;
        for (char c : port_text) {
            if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
            port = port * 10 + (c - '0');
        }
        if (port_text.empty() || port > 65535) return std::nullopt;
        url.port = port;
        authority = authority.substr(0, port_sep);
    } else {
        url.port = default_port(url.scheme);
    }
    if (authority.empty()) return std::nullopt;
    url.host = lower(authority);

    if (target.empty() || target[0] == '#') {
        url.target = "/";
    } else {
        size_t frag = target.find('#');
        if (frag != std::string_view::npos) target = target.substr(0, frag);
        url.target = target[0] == '/' ? std::string(target) : "/" + std::string(target);
    }
    // normalize path, keep query untouched
    size_t query = url.target.find('?');
    std::string path = url.target.substr(0, query);
    std::string suffix = query == std::string::npos ? "" : url.target.substr(query);
    url.target = remove_dot_segments(path) + suffix;
    return url;
}

std::string resolve_url(std::string_view base, std::string_view ref) {
    // strip whitespace around the reference, as found in markup
    while (!ref.empty() && std::isspace(static_cast<unsigned char>(ref.front()))) ref.remove_prefix(1);
    while (!ref.empty() && std::isspace(static_cast<unsigned char>(ref.back()))) ref.remove_suffix(1);

    if (scheme_end(ref)) {
        auto parsed = parse_url(ref);
        return parsed ? parsed->str() : std::string();
    }
    auto base_url = parse_url(base);
    if (!base_url) return {};
    if (ref.empty()) return base_url->str();

    if (ref.substr(0, 2) == "//") {
        auto parsed = parse_url(base_url->scheme + ":" + std::string(ref));
        return parsed ? parsed->str() : std::string();
    }

    Url out = *base_url;
    if (ref[0] == '/') {
        out.target = std::string(ref);
    } else if (ref[0] == '?') {
        size_t query = out.target.find('?');
        out.target = out.target.substr(0, query) + std::string(ref);
    } else if (ref[0] == '#') {
        // fragment never reaches the server
    } else {
        size_t query = out.target.find('?');
        std::string path = out.target.substr(0, query);
        size_t last_slash = path.rfind('/');
        path = path.substr(0, last_slash + 1) + std::string(ref);
        out.target = path;
    }
    size_t frag = out.target.find('#');
    if (frag != std::string::npos) out.target = out.target.substr(0, frag);
    size_t query = out.target.find('?');
    std::string path = out.target.substr(0, query);
    std::string suffix = query == std::string::npos ? "" : out.target.substr(query);
    out.target = remove_dot_segments(path) + suffix;
    return out.str();
}

}  // namespace jsguard
