#include "jsguard/heuristics.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "jsguard/html_scan.hpp"
#include "jsguard/tokenizer.hpp"

namespace jsguard {

namespace {

constexpr std::string_view kSpecialChars = "%\\xu+|^~";

bool is_special(char c) { return kSpecialChars.find(c) != std::string_view::npos; }

bool is_escape_pair(char a, char b) {
    return (a == '\\' || a == '%') && (b == 'x' || b == 'u');
}

void require_nonempty(std::string_view body) {
    if (body.empty()) throw std::invalid_argument("empty script body");
}

}  // namespace

Html5Weights Html5Weights::defaults() {
    Html5Weights w;
    w.tag_weights = {{"canvas", 1.0}, {"audio", 1.0}, {"video", 1.0}};
    w.cutoff = 0.3;
    return w;
}

double ngram_special_char_score(std::string_view body) {
    require_nonempty(body);
    const auto regions = scan_lexical_regions(body);
    size_t chars = 0;
    size_t weight = 0;
    for (const auto& content : regions.string_contents) {
        chars += content.size();
        for (size_t i = 0; i < content.size(); ++i) {
            if (is_special(content[i])) ++weight;
            if (i + 1 < content.size() && is_escape_pair(content[i], content[i + 1])) ++weight;
        }
    }
    if (chars == 0) return 0.0;
    return std::min(1.0, static_cast<double>(weight) / static_cast<double>(chars));
}

double max_word_size_score(std::string_view body, double word_cap) {
    require_nonempty(body);
    const auto regions = scan_lexical_regions(body);
    size_t longest = 0;
    for (const auto& content : regions.string_contents) {
        size_t run = 0;
        for (char c : content) {
            if (std::isspace(static_cast<unsigned char>(c))) {
                run = 0;
            } else {
                longest = std::max(longest, ++run);
            }
        }
    }
    return std::min(1.0, static_cast<double>(longest) / word_cap);
}

double entropy_score(std::string_view body, double band_low, double band_high,
                     double falloff) {
    require_nonempty(body);
    const auto regions = scan_lexical_regions(body);
    std::array<size_t, 256> histogram{};
    size_t total = 0;
    auto tally = [&](const std::string& text) {
        for (unsigned char c : text) ++histogram[c];
        total += text.size();
    };
    for (const auto& ident : regions.identifiers) tally(ident);
    for (const auto& content : regions.string_contents) tally(content);
    if (total == 0) return 0.0;

    double bits = 0.0;
    for (size_t count : histogram) {
        if (count == 0) continue;
        const double p = static_cast<double>(count) / static_cast<double>(total);
        bits -= p * std::log2(p);
    }
    if (bits >= band_low && bits <= band_high) return 0.0;
    const double deviation = bits < band_low ? band_low - bits : bits - band_high;
    return std::min(1.0, deviation / falloff);
}

ObfuscationReport obfuscation_score(std::string_view body, const ObfuscationWeights& w) {
    ObfuscationReport report;
    report.ngram_score = ngram_special_char_score(body);
    report.entropy_score =
        entropy_score(body, w.entropy_band_low, w.entropy_band_high, w.entropy_falloff);
    report.wordsize_score = max_word_size_score(body, w.word_cap);
    report.total = w.ngram * report.ngram_score + w.entropy * report.entropy_score +
                   w.wordsize * report.wordsize_score;
    report.obfuscated = report.total >= w.cutoff;
    return report;
}

double html5_tag_score(std::string_view html, const Html5Weights& w) {
    const auto scan = scan_html(html);
    if (scan.element_count == 0) return 0.0;
    double score = 0.0;
    for (const auto& [tag, weight] : w.tag_weights) {
        auto it = scan.tag_counts.find(tag);
        if (it == scan.tag_counts.end()) continue;
        score += weight * static_cast<double>(it->second) /
                 static_cast<double>(scan.element_count);
    }
    return score;
}

bool should_escalate(const ObfuscationReport& report, double html5_score,
                     const Html5Weights& w5) {
    return report.obfuscated || html5_score >= w5.cutoff;
}

}  // namespace jsguard
