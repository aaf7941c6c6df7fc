#pragma once

#include <map>
#include <string>
#include <string_view>

namespace jsguard {

// Knobs for the obfuscation scorer. The three factor weights sum into the
// escalation total; the remaining fields are the scaling constants each
// factor uses, kept configurable because packers vary.
struct ObfuscationWeights {
    double ngram = 1.0;
    double entropy = 1.0;
    double wordsize = 1.0;
    double cutoff = 1.2;

    double word_cap = 200.0;       // string word length that saturates the score
    double entropy_band_low = 3.2;   // bits/char considered ordinary code
    double entropy_band_high = 4.8;
    double entropy_falloff = 2.0;  // bits of deviation that saturate the score
};

struct Html5Weights {
    std::map<std::string, double> tag_weights;  // lowercased tag -> weight
    double cutoff = 0.3;

    static Html5Weights defaults();  // canvas/audio/video at 1.0
};

struct ObfuscationReport {
    double ngram_score = 0.0;
    double entropy_score = 0.0;
    double wordsize_score = 0.0;
    double total = 0.0;
    bool obfuscated = false;
};

// Density of escape-machinery characters ({% \ x u + | ^ ~}) inside string
// literals, with escape-style bigrams (\x, \u, %u, %x) counted doubly.
// Returns [0,1]; 0 when the script has no string literals.
// Throws std::invalid_argument on empty body.
double ngram_special_char_score(std::string_view body);

// Longest whitespace-free run inside any string literal, scaled by word_cap
// and clamped to [0,1].
double max_word_size_score(std::string_view body, double word_cap = 200.0);

// Shannon entropy (bits/char) over the characters of identifier and
// string-literal regions, scored by distance from the ordinary-code band:
// 0 inside [band_low, band_high], min(1, distance/falloff) outside.
double entropy_score(std::string_view body, double band_low = 3.2,
                     double band_high = 4.8, double falloff = 2.0);

ObfuscationReport obfuscation_score(std::string_view body, const ObfuscationWeights& w);

// Weighted density of the configured tags over all elements in the document;
// 0 for element-free documents.
double html5_tag_score(std::string_view html, const Html5Weights& w);

bool should_escalate(const ObfuscationReport& report, double html5_score,
                     const Html5Weights& w5);

}  // namespace jsguard
