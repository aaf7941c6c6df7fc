#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>

#include "jsguard/heuristics.hpp"

using namespace jsguard;

TEST_SUITE("ngram_special_chars") {
    // "\x41\x42\x43\x44" holds 16 chars: 4 backslashes + 4 'x' specials = 8,
    // plus 4 "\x" escape pairs counted again = 12. 12/16 = 0.75.
    TEST_CASE("hex escape runs score by density") {
        CHECK(ngram_special_char_score("s = \"\\x41\\x42\\x43\\x44\";") ==
              doctest::Approx(0.75));
    }

    TEST_CASE("plain strings score zero") {
        CHECK(ngram_special_char_score("s = \"hello world\";") == doctest::Approx(0.0));
    }

    TEST_CASE("scriptless string content scores zero") {
        CHECK(ngram_special_char_score("var a = 1;") == doctest::Approx(0.0));
    }

    TEST_CASE("score saturates at one") {
        // Every char special, every pair an escape pair.
        CHECK(ngram_special_char_score("s = \"\\u\\u\\u\\u\";") == doctest::Approx(1.0));
    }

    TEST_CASE("empty body throws") {
        CHECK_THROWS_AS(ngram_special_char_score(""), std::invalid_argument);
    }
}

TEST_SUITE("word_size") {
    TEST_CASE("longest unbroken run scaled by cap") {
        const std::string word(100, 'a');
        CHECK(max_word_size_score("s = \"" + word + "\";", 200.0) == doctest::Approx(0.5));
        const std::string big(400, 'b');
        CHECK(max_word_size_score("s = \"" + big + "\";", 200.0) == doctest::Approx(1.0));
    }

    TEST_CASE("whitespace resets the run") {
        const std::string spaced = "s = \"" + std::string(150, 'a') + " " +
                                   std::string(40, 'b') + "\";";
        CHECK(max_word_size_score(spaced, 200.0) == doctest::Approx(0.75));
    }

    TEST_CASE("no strings scores zero") {
        CHECK(max_word_size_score("var abc = call();", 200.0) == doctest::Approx(0.0));
    }
}

TEST_SUITE("entropy") {
    TEST_CASE("single-character content maxes the score") {
        // 0 bits, 3.2 below the band, falloff 2.0 -> clamped to 1.
        CHECK(entropy_score("aaaa = \"aaaaaaaaaaaa\"") == doctest::Approx(1.0));
    }

    TEST_CASE("ordinary-uniformity content scores zero") {
        // 16 distinct equiprobable chars = 4.0 bits, inside [3.2, 4.8].
        CHECK(entropy_score("abcdefghijklmnop") == doctest::Approx(0.0));
    }

    TEST_CASE("very mixed content scores above zero") {
        // 64 distinct equiprobable chars = 6.0 bits -> (6.0-4.8)/2.0 = 0.6.
        const std::string body =
            "(\"ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789!#\")";
        CHECK(entropy_score(body) == doctest::Approx(0.6));
    }

    TEST_CASE("no lexical regions scores zero") {
        CHECK(entropy_score("+-*/ ()") == doctest::Approx(0.0));
    }

    TEST_CASE("empty body throws") {
        CHECK_THROWS_AS(entropy_score(""), std::invalid_argument);
    }
}

TEST_SUITE("obfuscation_total") {
    TEST_CASE("weighted sum against cutoff") {
        ObfuscationWeights w;  // 1/1/1, cutoff 1.2
        // ngram 0.75 + entropy (below band: content \x41.. has few distinct
        // chars) + wordsize small; compute via the report itself and check
        // internal consistency rather than re-deriving each term.
        auto report = obfuscation_score("s = \"\\x41\\x42\\x43\\x44\";", w);
        CHECK(report.ngram_score == doctest::Approx(0.75));
        CHECK(report.total == doctest::Approx(report.ngram_score + report.entropy_score +
                                              report.wordsize_score));
        CHECK(report.obfuscated == (report.total >= w.cutoff));
    }

    TEST_CASE("weights scale the factors") {
        ObfuscationWeights heavy;
        heavy.ngram = 2.0;
        heavy.entropy = 0.0;
        heavy.wordsize = 0.0;
        auto report = obfuscation_score("s = \"\\x41\\x42\\x43\\x44\";", heavy);
        CHECK(report.total == doctest::Approx(1.5));
        CHECK(report.obfuscated);  // 1.5 >= 1.2
    }

    TEST_CASE("benign code stays under the cutoff") {
        const std::string body =
            "function add(first, second) {\n"
            "  var sum = first + second;\n"
            "  return sum;\n"
            "}\n"
            "var answer = add(2, 3);\n";
        auto report = obfuscation_score(body, ObfuscationWeights{});
        CHECK_FALSE(report.obfuscated);
    }

    TEST_CASE("cutoff boundary is inclusive") {
        ObfuscationWeights w;
        w.ngram = 1.6;  // 1.6 * 0.75 = 1.2 exactly
        w.entropy = 0.0;
        w.wordsize = 0.0;
        auto report = obfuscation_score("s = \"\\x41\\x42\\x43\\x44\";", w);
        CHECK(report.total == doctest::Approx(1.2));
        CHECK(report.obfuscated);
    }
}

TEST_SUITE("html5_score") {
    TEST_CASE("weighted tag density") {
        Html5Weights w = Html5Weights::defaults();
        // 4 elements: html, body, canvas, video -> (1 + 1) / 4 = 0.5.
        CHECK(html5_tag_score("<html><body><canvas></canvas><video></video></body></html>",
                              w) == doctest::Approx(0.5));
    }

    TEST_CASE("no configured tags scores zero") {
        CHECK(html5_tag_score("<html><body><p>x</p></body></html>",
                              Html5Weights::defaults()) == doctest::Approx(0.0));
    }

    TEST_CASE("element-free document scores zero") {
        CHECK(html5_tag_score("plain text, no markup", Html5Weights::defaults()) ==
              doctest::Approx(0.0));
    }

    TEST_CASE("custom weights") {
        Html5Weights w;
        w.tag_weights = {{"iframe", 2.0}};
        // 2 elements, 1 iframe -> 2.0 * 1/2 = 1.0.
        CHECK(html5_tag_score("<div><iframe></iframe></div>", w) == doctest::Approx(1.0));
    }
}

TEST_SUITE("escalation") {
    TEST_CASE("either signal escalates, boundary inclusive") {
        Html5Weights w5 = Html5Weights::defaults();  // cutoff 0.3
        ObfuscationReport clean;
        CHECK_FALSE(should_escalate(clean, 0.0, w5));
        CHECK(should_escalate(clean, 0.3, w5));
        CHECK(should_escalate(clean, 0.9, w5));

        ObfuscationReport packed;
        packed.obfuscated = true;
        CHECK(should_escalate(packed, 0.0, w5));
    }
}
