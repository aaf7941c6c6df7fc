#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace jsguard {

// Byte spans of one <script> element inside a document.
struct ScriptTagInfo {
    size_t elem_begin = 0;     // '<' of the open tag
    size_t elem_end = 0;       // one past the closing "</script...>"
    size_t content_begin = 0;  // inline body span [content_begin, content_end)
    size_t content_end = 0;
    std::optional<std::pair<size_t, size_t>> src_span;  // bytes covering the src attribute
    std::string src_value;                              // raw attribute value
    bool has_src = false;
};

struct HtmlScanResult {
    std::vector<ScriptTagInfo> scripts;                   // document order
    size_t element_count = 0;                             // all open tags
    std::unordered_map<std::string, size_t> tag_counts;   // lowercased name -> count
};

// Single forgiving pass over markup: counts elements, records every script
// element with exact byte spans, skips comments and raw-text (script/style)
// content so nothing inside them is mistaken for markup. Unparsable regions
// are stepped over, never fatal.
HtmlScanResult scan_html(std::string_view html);

}  // namespace jsguard
