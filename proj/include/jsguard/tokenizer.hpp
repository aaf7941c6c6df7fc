#pragma once

#include <string_view>
#include <vector>

#include "jsguard/types.hpp"

namespace jsguard {

// Lexical scan of script source. This is a scanner, not a grammar: obfuscated
// input routinely breaks real parsers, and keyword/signature matching only
// needs tokens. Behavior:
//   - identifiers and numeric literals become tokens; comments are skipped
//   - dotted member access emits the full dotted name plus each component
//     ("a.b.c" -> a.b.c, a, b, c), so both bare keywords and dotted API names
//     are matchable
//   - string-literal contents become one token each and are scanned once more
//     (one level) so tokens hidden inside strings surface
//   - any token whose text is a dotted-quad IPv4 is classed IpLiteral
//   - unlexable byte runs are skipped, never fatal
// Deterministic and pure: same input yields the same token list.
std::vector<Token> tokenize_script(std::string_view body);

// Raw lexical regions, shared with the obfuscation heuristics: the contents
// of every string literal (escape sequences kept verbatim) and the text of
// every identifier run, in document order.
struct LexicalRegions {
    std::vector<std::string> string_contents;
    std::vector<std::string> identifiers;
};

LexicalRegions scan_lexical_regions(std::string_view body);

}  // namespace jsguard
