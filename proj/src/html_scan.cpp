#include "jsguard/html_scan.hpp"

#include <algorithm>
#include <cctype>

namespace jsguard {

namespace {

char lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

bool iequal_at(std::string_view text, size_t pos, std::string_view needle) {
    if (pos + needle.size() > text.size()) return false;
    for (size_t i = 0; i < needle.size(); ++i) {
        if (lower(text[pos + i]) != lower(needle[i])) return false;
    }
    return true;
}

// Finds needle case-insensitively at or after pos; npos when absent.
size_t ifind(std::string_view text, size_t pos, std::string_view needle) {
    if (needle.empty()) return pos;
    for (size_t i = pos; i + needle.size() <= text.size(); ++i) {
        if (iequal_at(text, i, needle)) return i;
    }
    return std::string_view::npos;
}

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == ':';
}

struct Attr {
    std::string name;   // lowercased
    std::string value;
    size_t span_begin = 0;  // preceding whitespace included
    size_t span_end = 0;    // one past the value
};

// Parses attributes from `pos` (just past the tag name) to the closing '>'.
// Returns one past '>', or text.size() when the tag is unterminated.
size_t parse_attrs(std::string_view text, size_t pos, std::vector<Attr>& attrs,
                   bool& self_closing) {
    self_closing = false;
    while (pos < text.size()) {
        size_t ws_start = pos;
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos >= text.size()) return text.size();
        if (text[pos] == '>') return pos + 1;
        if (text[pos] == '/') {
            if (pos + 1 < text.size() && text[pos + 1] == '>') {
                self_closing = true;
                return pos + 2;
            }
            ++pos;
            continue;
        }
        Attr attr;
        attr.span_begin = ws_start;
        size_t name_start = pos;
        while (pos < text.size() && text[pos] != '=' && text[pos] != '>' && text[pos] != '/' &&
               !std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
        attr.name.resize(pos - name_start);
        std::transform(text.begin() + name_start, text.begin() + pos, attr.name.begin(), lower);
        size_t after_name = pos;
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos < text.size() && text[pos] == '=') {
            ++pos;
            while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos < text.size() && (text[pos] == '"' || text[pos] == '\'')) {
                char quote = text[pos];
                size_t value_start = ++pos;
                while (pos < text.size() && text[pos] != quote) ++pos;
                attr.value = std::string(text.substr(value_start, pos - value_start));
                if (pos < text.size()) ++pos;  // closing quote
            } else {
                size_t value_start = pos;
                while (pos < text.size() && text[pos] != '>' &&
                       !std::isspace(static_cast<unsigned char>(text[pos]))) {
                    ++pos;
                }
                attr.value = std::string(text.substr(value_start, pos - value_start));
            }
            attr.span_end = pos;
        } else {
            attr.span_end = after_name;
            pos = after_name;
        }
        if (!attr.name.empty()) attrs.push_back(std::move(attr));
    }
    return text.size();
}

}  // namespace

HtmlScanResult scan_html(std::string_view html) {
    HtmlScanResult result;
    size_t pos = 0;
    while (pos < html.size()) {
        size_t lt = html.find('<', pos);
        if (lt == std::string_view::npos) break;
        pos = lt;

        if (iequal_at(html, pos, "<!--")) {
            size_t end = html.find("-->", pos + 4);
            pos = end == std::string_view::npos ? html.size() : end + 3;
            continue;
        }
        if (pos + 1 < html.size() && (html[pos + 1] == '!' || html[pos + 1] == '?')) {
            size_t end = html.find('>', pos);
            pos = end == std::string_view::npos ? html.size() : end + 1;
            continue;
        }
        if (pos + 1 < html.size() && html[pos + 1] == '/') {
            size_t end = html.find('>', pos);
            pos = end == std::string_view::npos ? html.size() : end + 1;
            continue;
        }
        if (pos + 1 >= html.size() ||
            !std::isalpha(static_cast<unsigned char>(html[pos + 1]))) {
            ++pos;
            continue;
        }

        size_t name_start = pos + 1;
        size_t name_end = name_start;
        while (name_end < html.size() && is_name_char(html[name_end])) ++name_end;
        std::string name(html.substr(name_start, name_end - name_start));
        std::transform(name.begin(), name.end(), name.begin(), lower);

        std::vector<Attr> attrs;
        bool self_closing = false;
        size_t tag_close = parse_attrs(html, name_end, attrs, self_closing);

        ++result.element_count;
        ++result.tag_counts[name];

        if (name == "script") {
            ScriptTagInfo info;
            info.elem_begin = pos;
            for (const auto& attr : attrs) {
                if (attr.name == "src" && !info.has_src) {
                    info.has_src = true;
                    info.src_value = attr.value;
                    info.src_span = {attr.span_begin, attr.span_end};
                }
            }
            if (self_closing) {
                info.content_begin = info.content_end = tag_close;
                info.elem_end = tag_close;
                pos = tag_close;
            } else {
                info.content_begin = tag_close;
                size_t closer = ifind(html, tag_close, "</script");
                if (closer == std::string_view::npos) {
                    info.content_end = html.size();
                    info.elem_end = html.size();
                    pos = html.size();
                } else {
                    info.content_end = closer;
                    size_t gt = html.find('>', closer);
                    info.elem_end = gt == std::string_view::npos ? html.size() : gt + 1;
                    pos = info.elem_end;
                }
            }
            result.scripts.push_back(std::move(info));
            continue;
        }
        if (name == "style" && !self_closing) {
            size_t closer = ifind(html, tag_close, "</style");
            if (closer == std::string_view::npos) {
                pos = html.size();
            } else {
                size_t gt = html.find('>', closer);
                pos = gt == std::string_view::npos ? html.size() : gt + 1;
            }
            continue;
        }
        pos = tag_close;
    }
    return result;
}

}  // namespace jsguard
