#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "jsguard/tfidf.hpp"
#include "jsguard/types.hpp"

namespace jsguard {

// Fraction in [0,1] describing how alike two delivery contexts are.
struct MetaSimilarity {
    double value = 0.0;
};

// Mean of four context cues: shared leading IPv4 octets (in quarters), port
// equality, protocol equality, and exp(-|dt|/3600) closeness of the
// observation times.
MetaSimilarity meta_similarity(const ContentMeta& a, const ContentMeta& b);

// Content distance discounted by context similarity:
//     euclidean * (1 - coeff * similarity)
// so samples served from near-identical origins pull together.
double modified_distance(double euclidean, MetaSimilarity similarity, double coeff = 0.3);
double modified_distance(const TfIdfVector& a, const TfIdfVector& b, MetaSimilarity similarity,
                         double coeff = 0.3);

struct ClusterMember {
    TfIdfVector vector;
    ContentMeta meta;
};

struct ClusterView {
    int id = 0;
    std::vector<ClusterMember> members;
    std::map<std::string, double> centroid;
};

// Incremental clustering feature tree. A sample descends to the leaf with
// the nearest centroid and joins the closest cluster there only if its
// context-modified distance to every current member stays within the
// threshold; otherwise it seeds a new cluster. Leaves and interior nodes
// that exceed the branching factor split on their farthest pair.
class ClusterTree {
public:
    struct Options {
        size_t branching = 8;
        double threshold = 1.3;
        double meta_coeff = 0.3;
    };

    ClusterTree();
    explicit ClusterTree(Options opts);
    ClusterTree(ClusterTree&&) noexcept;
    ClusterTree& operator=(ClusterTree&&) noexcept;
    ~ClusterTree();

    // Returns the id of the cluster the sample landed in. Ids are assigned
    // at cluster creation and never change, splits included.
    int insert(const TfIdfVector& vector, const ContentMeta& meta);

    std::vector<ClusterView> clusters() const;  // ordered by id
    size_t sample_count() const { return sample_count_; }
    size_t cluster_count() const;

private:
    struct Entry;
    struct Node;

    Node* choose_leaf(const std::map<std::string, double>& point) const;
    void split_upward(Node* node);

    Options opts_;
    std::unique_ptr<Node> root_;
    int next_cluster_id_ = 0;
    size_t sample_count_ = 0;
};

}  // namespace jsguard
