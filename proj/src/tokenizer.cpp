#include "jsguard/tokenizer.hpp"

#include <cctype>

namespace jsguard {

namespace {

bool is_ident_start(unsigned char c) {
    return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80;
}

bool is_ident_part(unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '$' || c >= 0x80;
}

bool is_hex_digit(unsigned char c) { return std::isxdigit(c); }

struct Scanner {
    std::string_view src;
    size_t pos = 0;

    bool done() const { return pos >= src.size(); }
    char peek(size_t ahead = 0) const {
        return pos + ahead < src.size() ? src[pos + ahead] : '\0';
    }

    // Consumes an identifier run starting at pos.
    std::string read_identifier() {
        size_t start = pos;
        ++pos;
        while (!done() && is_ident_part(static_cast<unsigned char>(src[pos]))) ++pos;
        return std::string(src.substr(start, pos - start));
    }

    // Consumes a numeric run. Dotted runs like 192.168.159.133 stay one
    // token; a trailing dot is left to the surrounding text.
    std::string read_number() {
        size_t start = pos;
        if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X') &&
            is_hex_digit(static_cast<unsigned char>(peek(2)))) {
            pos += 2;
            while (!done() && is_hex_digit(static_cast<unsigned char>(src[pos]))) ++pos;
            return std::string(src.substr(start, pos - start));
        }
        while (!done() && (std::isdigit(static_cast<unsigned char>(src[pos])) ||
                           src[pos] == '.')) {
            ++pos;
        }
        while (pos > start && src[pos - 1] == '.') --pos;  // give back trailing dots
        // optional exponent
        if (!done() && (src[pos] == 'e' || src[pos] == 'E')) {
            size_t e = pos + 1;
            if (e < src.size() && (src[e] == '+' || src[e] == '-')) ++e;
            if (e < src.size() && std::isdigit(static_cast<unsigned char>(src[e]))) {
                pos = e;
                while (!done() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
            }
        }
        return std::string(src.substr(start, pos - start));
    }

    // Consumes a quoted string starting at pos (which holds the quote).
    // Escaped quotes do not terminate; a raw newline ends '...' and "..."
    // strings early; backtick templates may span lines. The returned content
    // is verbatim, escapes included.
    std::string read_string() {
        const char quote = src[pos];
        ++pos;
        size_t start = pos;
        while (!done()) {
            char c = src[pos];
            if (c == '\\' && pos + 1 < src.size()) {
                pos += 2;
                continue;
            }
            if (c == quote) break;
            if (c == '\n' && quote != '`') break;
            ++pos;
        }
        std::string content(src.substr(start, pos - start));
        if (!done() && src[pos] == quote) ++pos;  // closing quote
        return content;
    }

    // Skips a comment if one starts at pos; returns whether it did.
    bool skip_comment() {
        if (peek() != '/') return false;
        if (peek(1) == '/') {
            pos += 2;
            while (!done() && src[pos] != '\n') ++pos;
            return true;
        }
        if (peek(1) == '*') {
            pos += 2;
            while (!done() && !(src[pos] == '*' && peek(1) == '/')) ++pos;
            if (!done()) pos += 2;
            return true;
        }
        return false;
    }
};

TokenClass classify_text(const std::string& text, TokenClass fallback) {
    return is_ipv4_literal(text) ? TokenClass::IpLiteral : fallback;
}

void emit_identifier_chain(Scanner& sc, std::vector<Token>& out) {
    std::vector<std::string> parts;
    parts.push_back(sc.read_identifier());
    while (sc.peek() == '.' &&
           is_ident_start(static_cast<unsigned char>(sc.peek(1)))) {
        ++sc.pos;
        parts.push_back(sc.read_identifier());
    }
    if (parts.size() == 1) {
        out.push_back({parts[0], classify_text(parts[0], TokenClass::Identifier)});
        return;
    }
    std::string dotted = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) {
        dotted += '.';
        dotted += parts[i];
    }
    out.push_back({dotted, classify_text(dotted, TokenClass::MemberName)});
    out.push_back({parts[0], classify_text(parts[0], TokenClass::Identifier)});
    for (size_t i = 1; i < parts.size(); ++i) {
        out.push_back({parts[i], classify_text(parts[i], TokenClass::MemberName)});
    }
}

// depth 0 scans the script; depth 1 rescans string contents (strings are not
// recursed into again at depth 1 -- quotes become plain punctuation there).
void lex(std::string_view body, int depth, std::vector<Token>& out) {
    Scanner sc{body};
    while (!sc.done()) {
        unsigned char c = static_cast<unsigned char>(sc.peek());
        if (sc.skip_comment()) continue;
        if (is_ident_start(c)) {
            emit_identifier_chain(sc, out);
            continue;
        }
        if (std::isdigit(c)) {
            std::string text = sc.read_number();
            out.push_back({text, classify_text(text, TokenClass::NumericLiteral)});
            continue;
        }
        if ((c == '"' || c == '\'' || c == '`') && depth == 0) {
            std::string content = sc.read_string();
            if (content.empty()) continue;
            out.push_back({content, classify_text(content, TokenClass::StringLiteral)});
            std::vector<Token> inner;
            lex(content, 1, inner);
            // Re-emitting a lone token identical to the whole content would
            // just duplicate it.
            if (inner.size() == 1 && inner[0].text == content) continue;
            for (auto& tok : inner) out.push_back(std::move(tok));
            continue;
        }
        ++sc.pos;  // punctuation, whitespace, or an unlexable byte
    }
}

}  // namespace

std::vector<Token> tokenize_script(std::string_view body) {
    std::vector<Token> out;
    lex(body, 0, out);
    return out;
}

LexicalRegions scan_lexical_regions(std::string_view body) {
    LexicalRegions regions;
    Scanner sc{body};
    while (!sc.done()) {
        unsigned char c = static_cast<unsigned char>(sc.peek());
        if (sc.skip_comment()) continue;
        if (is_ident_start(c)) {
            regions.identifiers.push_back(sc.read_identifier());
            continue;
        }
        if (std::isdigit(c)) {
            sc.read_number();
            continue;
        }
        if (c == '"' || c == '\'' || c == '`') {
            regions.string_contents.push_back(sc.read_string());
            continue;
        }
        ++sc.pos;
    }
    return regions;
}

}  // namespace jsguard
