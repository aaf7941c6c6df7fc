#include "jsguard/cluster.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace jsguard {

namespace {

std::array<int, 4> ip_octets(const std::string& ip) {
    std::array<int, 4> out{};
    std::istringstream in(ip);
    std::string part;
    for (int i = 0; i < 4 && std::getline(in, part, '.'); ++i) out[i] = std::atoi(part.c_str());
    return out;
}

double sparse_euclid(const std::map<std::string, double>& a,
                     const std::map<std::string, double>& b) {
    double sum = 0.0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
            sum += ia->second * ia->second;
            ++ia;
        } else if (ia == a.end() || ib->first < ia->first) {
            sum += ib->second * ib->second;
            ++ib;
        } else {
            double d = ia->second - ib->second;
            sum += d * d;
            ++ia;
            ++ib;
        }
    }
    return std::sqrt(sum);
}

void sparse_add(std::map<std::string, double>& acc, const std::map<std::string, double>& v) {
    for (const auto& [k, w] : v) acc[k] += w;
}

}  // namespace

MetaSimilarity meta_similarity(const ContentMeta& a, const ContentMeta& b) {
    double ip_score;
    if (is_ipv4_literal(a.source_ip) && is_ipv4_literal(b.source_ip)) {
        auto oa = ip_octets(a.source_ip);
        auto ob = ip_octets(b.source_ip);
        int shared = 0;
        while (shared < 4 && oa[shared] == ob[shared]) ++shared;
        ip_score = shared / 4.0;
    } else {
        ip_score = a.source_ip == b.source_ip ? 1.0 : 0.0;
    }
    double port_score = a.port == b.port ? 1.0 : 0.0;
    double proto_score = a.protocol == b.protocol ? 1.0 : 0.0;
    double dt = std::fabs(std::difftime(a.observed_at, b.observed_at));
    double time_score = std::exp(-dt / 3600.0);
    return {(ip_score + port_score + proto_score + time_score) / 4.0};
}

double modified_distance(double euclidean, MetaSimilarity similarity, double coeff) {
    return euclidean * (1.0 - coeff * similarity.value);
}

double modified_distance(const TfIdfVector& a, const TfIdfVector& b, MetaSimilarity similarity,
                         double coeff) {
    return modified_distance(euclidean_distance(a, b), similarity, coeff);
}

struct ClusterTree::Entry {
    int id = 0;
    uint64_t n = 0;
    std::map<std::string, double> ls;  // linear sum of member vectors
    double ss = 0.0;                   // sum of squared norms
    std::vector<ClusterMember> members;

    std::map<std::string, double> centroid() const {
        std::map<std::string, double> c = ls;
        if (n > 0)
            for (auto& [k, w] : c) w /= static_cast<double>(n);
        return c;
    }

    void add(const TfIdfVector& v, const ContentMeta& m) {
        ++n;
        sparse_add(ls, v.weights);
        for (const auto& [k, w] : v.weights) ss += w * w;
        members.push_back({v, m});
    }
};

struct ClusterTree::Node {
    Node* parent = nullptr;
    bool leaf = true;
    std::vector<std::unique_ptr<Node>> children;  // interior nodes
    std::vector<std::unique_ptr<Entry>> entries;  // leaves

    void accumulate(uint64_t& n, std::map<std::string, double>& ls) const {
        if (leaf) {
            for (const auto& e : entries) {
                n += e->n;
                sparse_add(ls, e->ls);
            }
        } else {
            for (const auto& c : children) c->accumulate(n, ls);
        }
    }

    std::map<std::string, double> centroid() const {
        uint64_t n = 0;
        std::map<std::string, double> ls;
        accumulate(n, ls);
        if (n > 0)
            for (auto& [k, w] : ls) w /= static_cast<double>(n);
        return ls;
    }

    size_t fanout() const { return leaf ? entries.size() : children.size(); }
};

ClusterTree::ClusterTree() : ClusterTree(Options{}) {}

ClusterTree::ClusterTree(Options opts) : opts_(opts), root_(std::make_unique<Node>()) {
    if (opts_.branching < 2) throw std::invalid_argument("ClusterTree: branching must be >= 2");
    if (opts_.threshold <= 0.0) throw std::invalid_argument("ClusterTree: threshold must be > 0");
}

ClusterTree::ClusterTree(ClusterTree&&) noexcept = default;
ClusterTree& ClusterTree::operator=(ClusterTree&&) noexcept = default;
ClusterTree::~ClusterTree() = default;

ClusterTree::Node* ClusterTree::choose_leaf(const std::map<std::string, double>& point) const {
    Node* node = root_.get();
    while (!node->leaf) {
        Node* best = nullptr;
        double best_d = std::numeric_limits<double>::infinity();
        for (const auto& child : node->children) {
            double d = sparse_euclid(point, child->centroid());
            if (d < best_d) {
                best_d = d;
                best = child.get();
            }
        }
        node = best;
    }
    return node;
}

int ClusterTree::insert(const TfIdfVector& vector, const ContentMeta& meta) {
    Node* leaf = choose_leaf(vector.weights);

    Entry* nearest = nullptr;
    double nearest_d = std::numeric_limits<double>::infinity();
    for (const auto& e : leaf->entries) {
        double d = sparse_euclid(vector.weights, e->centroid());
        if (d < nearest_d) {
            nearest_d = d;
            nearest = e.get();
        }
    }

    bool admitted = nearest != nullptr;
    if (nearest) {
        for (const auto& member : nearest->members) {
            double d = euclidean_distance(vector, member.vector);
            double md = modified_distance(d, meta_similarity(meta, member.meta),
                                          opts_.meta_coeff);
            if (md > opts_.threshold) {
                admitted = false;
                break;
            }
        }
    }

    Entry* target;
    if (admitted) {
        target = nearest;
    } else {
        leaf->entries.push_back(std::make_unique<Entry>());
        target = leaf->entries.back().get();
        target->id = next_cluster_id_++;
    }
    target->add(vector, meta);
    ++sample_count_;

    split_upward(leaf);
    return target->id;
}

namespace {

// Splits an overfull node's items across two fresh nodes seeded by the
// farthest pair; remaining items join the nearer seed.
template <typename Item, typename CentroidFn>
void farthest_pair_split(std::vector<Item>& items, CentroidFn centroid_of,
                         std::vector<Item>& out_a, std::vector<Item>& out_b) {
    std::vector<std::map<std::string, double>> cents;
    cents.reserve(items.size());
    for (const auto& item : items) cents.push_back(centroid_of(item));

    size_t seed_a = 0, seed_b = 1;
    double far_d = -1.0;
    for (size_t i = 0; i < items.size(); ++i) {
        for (size_t j = i + 1; j < items.size(); ++j) {
            double d = sparse_euclid(cents[i], cents[j]);
            if (d > far_d) {
                far_d = d;
                seed_a = i;
                seed_b = j;
            }
        }
    }

    for (size_t i = 0; i < items.size(); ++i) {
        if (i == seed_a) {
            out_a.push_back(std::move(items[i]));
        } else if (i == seed_b) {
            out_b.push_back(std::move(items[i]));
        } else {
            double da = sparse_euclid(cents[i], cents[seed_a]);
            double db = sparse_euclid(cents[i], cents[seed_b]);
            (da <= db ? out_a : out_b).push_back(std::move(items[i]));
        }
    }
    items.clear();
}

}  // namespace

void ClusterTree::split_upward(Node* node) {
    while (node && node->fanout() > opts_.branching) {
        Node* parent = node->parent;
        auto side_a = std::make_unique<Node>();
        auto side_b = std::make_unique<Node>();
        side_a->leaf = node->leaf;
        side_b->leaf = node->leaf;

        if (node->leaf) {
            farthest_pair_split(
                node->entries, [](const std::unique_ptr<Entry>& e) { return e->centroid(); },
                side_a->entries, side_b->entries);
        } else {
            farthest_pair_split(
                node->children, [](const std::unique_ptr<Node>& n) { return n->centroid(); },
                side_a->children, side_b->children);
            for (auto& c : side_a->children) c->parent = side_a.get();
            for (auto& c : side_b->children) c->parent = side_b.get();
        }

        if (!parent) {
            auto new_root = std::make_unique<Node>();
            new_root->leaf = false;
            side_a->parent = new_root.get();
            side_b->parent = new_root.get();
            new_root->children.push_back(std::move(side_a));
            new_root->children.push_back(std::move(side_b));
            root_ = std::move(new_root);
            return;
        }

        for (auto it = parent->children.begin(); it != parent->children.end(); ++it) {
            if (it->get() == node) {
                side_a->parent = parent;
                side_b->parent = parent;
                *it = std::move(side_a);
                parent->children.insert(std::next(it), std::move(side_b));
                break;
            }
        }
        node = parent;
    }
}

std::vector<ClusterView> ClusterTree::clusters() const {
    std::vector<ClusterView> out;
    std::vector<const Node*> stack{root_.get()};
    while (!stack.empty()) {
        const Node* node = stack.back();
        stack.pop_back();
        if (node->leaf) {
            for (const auto& e : node->entries)
                out.push_back({e->id, e->members, e->centroid()});
        } else {
            for (const auto& c : node->children) stack.push_back(c.get());
        }
    }
    std::sort(out.begin(), out.end(),
              [](const ClusterView& a, const ClusterView& b) { return a.id < b.id; });
    return out;
}

size_t ClusterTree::cluster_count() const {
    size_t count = 0;
    std::vector<const Node*> stack{root_.get()};
    while (!stack.empty()) {
        const Node* node = stack.back();
        stack.pop_back();
        if (node->leaf) {
            count += node->entries.size();
        } else {
            for (const auto& c : node->children) stack.push_back(c.get());
        }
    }
    return count;
}

}  // namespace jsguard
