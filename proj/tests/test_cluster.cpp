#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "jsguard/cluster.hpp"
#include "jsguard/tfidf.hpp"

using namespace jsguard;

namespace {

TokenDocument doc(std::string id, std::map<std::string, uint64_t> counts) {
    return {std::move(id), std::move(counts)};
}

// Brute-force two-pass reference: count document frequencies, then weigh
// every token of every document independently of the production code.
std::vector<TfIdfVector> naive_tfidf(const std::vector<TokenDocument>& corpus) {
    std::map<std::string, size_t> df;
    for (const auto& d : corpus) {
        for (const auto& [token, n] : d.counts) {
            (void)n;
            df[token] += 1;
        }
    }
    std::vector<TfIdfVector> out;
    for (const auto& d : corpus) {
        uint64_t total = 0;
        for (const auto& [token, n] : d.counts) total += n;
        TfIdfVector vec;
        vec.sample_id = d.sample_id;
        for (const auto& [token, n] : d.counts) {
            const double tf = static_cast<double>(n) / static_cast<double>(total);
            const double idf = std::log(static_cast<double>(corpus.size()) /
                                        static_cast<double>(df[token]));
            const double w = tf * idf;
            if (w != 0.0) vec.weights[token] = w;
        }
        out.push_back(std::move(vec));
    }
    return out;
}

ContentMeta meta(std::string ip, int port, std::string protocol, std::time_t at) {
    ContentMeta m;
    m.source_ip = std::move(ip);
    m.port = port;
    m.protocol = std::move(protocol);
    m.observed_at = at;
    return m;
}

TfIdfVector vec(std::string id, std::map<std::string, double> weights) {
    return {std::move(id), std::move(weights)};
}

double max_intra_modified_distance(const ClusterView& cluster, double coeff) {
    double worst = 0.0;
    for (size_t i = 0; i < cluster.members.size(); ++i) {
        for (size_t j = i + 1; j < cluster.members.size(); ++j) {
            const auto& a = cluster.members[i];
            const auto& b = cluster.members[j];
            worst = std::max(worst, modified_distance(a.vector, b.vector,
                                                      meta_similarity(a.meta, b.meta),
                                                      coeff));
        }
    }
    return worst;
}

}  // namespace

TEST_SUITE("tfidf") {
    TEST_CASE("hand-computed two-document corpus") {
        auto vectors = tfidf_vectors({doc("d1", {{"a", 1}, {"b", 1}, {"c", 1}}),
                                      doc("d2", {{"a", 1}, {"d", 2}})});
        REQUIRE(vectors.size() == 2);
        // "a" appears in both documents: idf = ln(2/2) = 0, weight omitted.
        CHECK(vectors[0].weights.count("a") == 0);
        CHECK(vectors[1].weights.count("a") == 0);
        // "b": tf 1/3, idf ln 2.
        CHECK(vectors[0].weights.at("b") ==
              doctest::Approx(std::log(2.0) / 3.0).epsilon(1e-12));
        CHECK(vectors[0].weights.at("c") ==
              doctest::Approx(std::log(2.0) / 3.0).epsilon(1e-12));
        // "d": tf 2/3, idf ln 2.
        CHECK(vectors[1].weights.at("d") ==
              doctest::Approx(2.0 * std::log(2.0) / 3.0).epsilon(1e-12));
    }

    TEST_CASE("errors name the problem") {
        CHECK_THROWS_AS(tfidf_vectors({}), std::invalid_argument);
        try {
            tfidf_vectors({doc("ok", {{"a", 1}}), doc("hollow", {})});
            FAIL("expected invalid_argument");
        } catch (const std::invalid_argument& e) {
            CHECK(std::string(e.what()).find("hollow") != std::string::npos);
        }
    }

    TEST_CASE("matches the naive oracle on random corpora") {
        std::mt19937 rng(20260817);
        const std::vector<std::string> vocab = [] {
            std::vector<std::string> v;
            for (int i = 0; i < 60; ++i) v.push_back("tok" + std::to_string(i));
            return v;
        }();
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<TokenDocument> corpus;
            const size_t docs = 1 + rng() % 20;
            for (size_t d = 0; d < docs; ++d) {
                TokenDocument td;
                td.sample_id = "d" + std::to_string(d);
                const size_t tokens = 1 + rng() % 50;
                for (size_t t = 0; t < tokens; ++t) td.counts[vocab[rng() % vocab.size()]] += 1;
                corpus.push_back(std::move(td));
            }
            auto got = tfidf_vectors(corpus);
            auto want = naive_tfidf(corpus);
            REQUIRE(got.size() == want.size());
            for (size_t i = 0; i < got.size(); ++i) {
                CHECK(got[i].sample_id == want[i].sample_id);
                REQUIRE(got[i].weights.size() == want[i].weights.size());
                for (const auto& [token, w] : want[i].weights) {
                    REQUIRE(got[i].weights.count(token));
                    const double g = got[i].weights.at(token);
                    CHECK(std::fabs(g - w) <= 1e-12 * std::max(1.0, std::fabs(w)));
                }
            }
        }
    }

    TEST_CASE("euclidean distance over sparse union") {
        auto a = vec("a", {{"x", 3.0}, {"y", 1.0}});
        auto b = vec("b", {{"x", 0.0}, {"z", 4.0}});
        // sqrt(9 + 1 + 16) = sqrt(26)
        CHECK(euclidean_distance(a, b) == doctest::Approx(std::sqrt(26.0)));
        CHECK(euclidean_distance(a, a) == doctest::Approx(0.0));
        CHECK(euclidean_distance(a, b) == doctest::Approx(euclidean_distance(b, a)));
    }
}

TEST_SUITE("meta_similarity") {
    TEST_CASE("identical context scores one") {
        auto m = meta("10.1.2.3", 80, "http", 1000);
        CHECK(meta_similarity(m, m).value == doctest::Approx(1.0));
    }

    TEST_CASE("partial agreement averages the four cues") {
        // 3 shared octets (0.75), equal port (1), equal protocol (1),
        // same second (1) -> mean 0.9375.
        auto a = meta("192.168.159.133", 8080, "http", 1000);
        auto b = meta("192.168.159.200", 8080, "http", 1000);
        CHECK(meta_similarity(a, b).value == doctest::Approx(0.9375));
    }

    TEST_CASE("time closeness decays exponentially") {
        auto a = meta("10.0.0.1", 80, "http", 0);
        auto b = meta("10.0.0.1", 80, "http", 3600);
        // 1 + 1 + 1 + e^-1, over 4.
        CHECK(meta_similarity(a, b).value ==
              doctest::Approx((3.0 + std::exp(-1.0)) / 4.0));
    }

    TEST_CASE("nothing shared scores near zero") {
        auto a = meta("10.0.0.1", 80, "http", 0);
        auto b = meta("172.16.0.9", 443, "https", 0);
        // Only the time cue agrees.
        CHECK(meta_similarity(a, b).value == doctest::Approx(0.25));
    }

    TEST_CASE("symmetric and bounded") {
        std::mt19937 rng(5);
        auto random_meta = [&] {
            return meta(std::to_string(rng() % 256) + "." + std::to_string(rng() % 256) +
                            ".0." + std::to_string(rng() % 256),
                        static_cast<int>(rng() % 65536), rng() % 2 ? "http" : "https",
                        static_cast<std::time_t>(rng() % 100000));
        };
        for (int i = 0; i < 200; ++i) {
            auto a = random_meta();
            auto b = random_meta();
            auto ab = meta_similarity(a, b).value;
            auto ba = meta_similarity(b, a).value;
            CHECK(ab == doctest::Approx(ba));
            CHECK(ab >= 0.0);
            CHECK(ab <= 1.0);
        }
    }
}

TEST_SUITE("modified_distance") {
    TEST_CASE("published arithmetic: 1.5 at similarity 0.742") {
        const double got = modified_distance(1.5, MetaSimilarity{0.742});
        CHECK(std::fabs(got - 1.1661) <= 1e-9);
        CHECK(got < 1.3);
    }

    TEST_CASE("zero similarity leaves the distance alone") {
        CHECK(modified_distance(2.0, MetaSimilarity{0.0}) == doctest::Approx(2.0));
    }

    TEST_CASE("full similarity discounts by the coefficient") {
        CHECK(modified_distance(2.0, MetaSimilarity{1.0}, 0.3) == doctest::Approx(1.4));
        CHECK(modified_distance(2.0, MetaSimilarity{1.0}, 0.5) == doctest::Approx(1.0));
    }

    TEST_CASE("vector overload composes euclidean and discount") {
        auto a = vec("a", {{"x", 1.5}});
        auto b = vec("b", {});
        CHECK(modified_distance(a, b, MetaSimilarity{0.742}) ==
              doctest::Approx(1.1661).epsilon(1e-9));
    }
}

TEST_SUITE("cluster_tree") {
    TEST_CASE("near pair shares a cluster, far point does not") {
        ClusterTree tree;
        auto m = meta("10.0.0.1", 80, "http", 1000);
        int c1 = tree.insert(vec("s1", {{"x", 1.0}}), m);
        int c2 = tree.insert(vec("s2", {{"x", 1.2}}), m);
        int c3 = tree.insert(vec("s3", {{"x", 9.0}}), m);
        CHECK(c1 == c2);
        CHECK(c1 != c3);
        CHECK(tree.sample_count() == 3);
        CHECK(tree.cluster_count() == 2);

        auto clusters = tree.clusters();
        REQUIRE(clusters.size() == 2);
        CHECK(clusters[0].id < clusters[1].id);
        CHECK(clusters[0].members.size() == 2);
        CHECK(clusters[0].centroid.at("x") == doctest::Approx(1.1));
    }

    TEST_CASE("meta similarity pulls a borderline pair together") {
        // Base distance 1.5 exceeds T = 1.3 outright; the near-identical
        // context discounts it to ~1.166 and admits the pair.
        auto a = meta("192.168.159.133", 8080, "http", 1433937600);
        auto b = meta("192.168.159.200", 8080, "http", 1433937600 + 5485);
        const double ms = meta_similarity(a, b).value;
        CHECK(ms == doctest::Approx(0.742).epsilon(0.001));

        ClusterTree tree;
        int c1 = tree.insert(vec("s1", {{"x", 1.5}}), a);
        int c2 = tree.insert(vec("s2", {}), b);
        CHECK(c1 == c2);

        // The same pair with disjoint context stays apart.
        ClusterTree cold;
        int d1 = cold.insert(vec("s1", {{"x", 1.5}}), meta("10.0.0.1", 80, "http", 0));
        int d2 = cold.insert(vec("s2", {}), meta("172.16.3.9", 443, "https", 900000));
        CHECK(d1 != d2);
    }

    TEST_CASE("admission is complete linkage, not centroid distance") {
        // s1 at 0 and s2 at 1.2 cluster (distance 1.2 <= 1.3) with centroid
        // 0.6. s3 at 1.9 is 1.3 from the centroid but 1.9 from s1, so
        // complete linkage must reject it even though a centroid rule would
        // admit it.
        ClusterTree tree;
        auto m = meta("10.0.0.1", 80, "http", 0);
        auto far = meta("172.99.1.2", 9999, "other", 500000);
        int c1 = tree.insert(vec("s1", {{"x", 0.0}, {"pad", 0.0}}), m);
        int c2 = tree.insert(vec("s2", {{"x", 1.2}}), far);
        // distinct metas: discount for s1/s2 is small; 1.2 * (1 - 0.3*ms)
        // stays under 1.3 for any ms, so they cluster.
        CHECK(c1 == c2);
        int c3 = tree.insert(vec("s3", {{"x", 1.9}}), far);
        CHECK(c3 != c1);
    }

    TEST_CASE("cluster ids are stable across splits") {
        ClusterTree::Options opts;
        opts.branching = 3;  // force splits early
        ClusterTree tree(opts);
        auto m = meta("10.0.0.1", 80, "http", 0);
        std::map<int, int> id_to_count;
        for (int i = 0; i < 12; ++i) {
            // Spread far apart so every insert founds a new cluster.
            int id = tree.insert(vec("s" + std::to_string(i),
                                     {{"x", static_cast<double>(i * 10)}}),
                                 m);
            id_to_count[id] += 1;
        }
        CHECK(tree.cluster_count() == 12);
        CHECK(id_to_count.size() == 12);
        auto clusters = tree.clusters();
        REQUIRE(clusters.size() == 12);
        for (size_t i = 1; i < clusters.size(); ++i) {
            CHECK(clusters[i - 1].id < clusters[i].id);
        }
        CHECK(tree.sample_count() == 12);
    }

    TEST_CASE("every leaf cluster satisfies the distance bound after random insertions") {
        std::mt19937 rng(31337);
        std::uniform_real_distribution<double> coord(0.0, 3.0);
        for (int trial = 0; trial < 20; ++trial) {
            ClusterTree tree;
            for (int i = 0; i < 50; ++i) {
                TfIdfVector v;
                v.sample_id = "p" + std::to_string(i);
                v.weights["x"] = coord(rng);
                v.weights["y"] = coord(rng);
                auto m = meta("10.0." + std::to_string(rng() % 4) + ".1",
                              static_cast<int>(80 + rng() % 2), "http",
                              static_cast<std::time_t>(rng() % 7200));
                tree.insert(v, m);
            }
            for (const auto& cluster : tree.clusters()) {
                CHECK(max_intra_modified_distance(cluster, 0.3) <= 1.3 + 1e-9);
            }
            CHECK(tree.sample_count() == 50);
        }
    }

    TEST_CASE("options validate") {
        ClusterTree::Options bad;
        bad.branching = 1;
        CHECK_THROWS_AS(ClusterTree{bad}, std::invalid_argument);
        ClusterTree::Options negative;
        negative.threshold = 0.0;
        CHECK_THROWS_AS(ClusterTree{negative}, std::invalid_argument);
    }
}
