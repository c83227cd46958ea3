#pragma once

// Incremental decision tree (VFDT). Leaves accumulate class counts plus
// per-(attribute, class) Gaussian summaries; every `grace_period` samples a
// leaf compares the two best candidate information gains against the
// Hoeffding bound
//
//     eps = sqrt( R^2 * ln(1/delta) / (2n) ),   R = log2(#classes),
//
// and splits when the gap exceeds eps (or eps has shrunk under the tie
// threshold). Numeric attributes are handled with a fixed number of
// equal-width candidate thresholds between the observed min and max.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "grfstream/learners/learner.hpp"
#include "grfstream/learners/naive_bayes.hpp" // detail::RunningMoments

namespace grfstream {

class HoeffdingTreeLearner final : public OnlineLearner {
public:
    explicit HoeffdingTreeLearner(const LearnerParams& params)
        : grace_(static_cast<double>(params.ht_grace_period)),
          delta_(params.ht_split_confidence),
          tie_(params.ht_tie_threshold),
          bins_(params.ht_split_candidates),
          leaf_mode_(params.ht_leaf) {
        root_ = std::make_unique<Node>();
    }

    std::size_t node_count() const { return count_nodes(*root_); }
    std::size_t depth() const { return depth_of(*root_); }

protected:
    int do_predict(std::span<const double> x) const override {
        return predict_at(route(x), x);
    }

    void do_train(std::span<const double> x, int label) override {
        if (label >= num_classes_) num_classes_ = label + 1;
        Node* node = route(x);

        if (leaf_mode_ == HtLeafPrediction::nb_adaptive && !node->class_counts.empty()) {
            if (majority_at(*node) == label) node->mc_correct += 1.0;
            if (naive_bayes_at(*node, x) == label) node->nb_correct += 1.0;
        }

        const auto c = static_cast<std::size_t>(label);
        if (node->class_counts.size() <= c) node->class_counts.resize(c + 1, 0.0);
        node->class_counts[c] += 1.0;
        if (node->observers.size() < x.size()) node->observers.resize(x.size());
        for (std::size_t f = 0; f < x.size(); ++f) node->observers[f].add(x[f], c);

        node->since_attempt += 1.0;
        if (node->since_attempt >= grace_) {
            node->since_attempt = 0.0;
            attempt_split(*node);
        }
    }

    void do_reset() override {
        root_ = std::make_unique<Node>();
        num_classes_ = 0;
    }

private:
    struct AttributeObserver {
        std::vector<detail::RunningMoments> per_class;
        double min_seen = std::numeric_limits<double>::infinity();
        double max_seen = -std::numeric_limits<double>::infinity();

        void add(double v, std::size_t cls) {
            if (per_class.size() <= cls) per_class.resize(cls + 1);
            per_class[cls].add(v);
            min_seen = std::min(min_seen, v);
            max_seen = std::max(max_seen, v);
        }
    };

    struct Node {
        int split_attr = -1; // < 0 marks a leaf
        double threshold = 0.0;
        std::unique_ptr<Node> left, right;

        std::vector<double> class_counts;
        std::vector<AttributeObserver> observers;
        double since_attempt = 0.0;
        double mc_correct = 0.0; // adaptive-leaf scoreboard
        double nb_correct = 0.0;

        bool is_leaf() const { return split_attr < 0; }
    };

    const Node* route(std::span<const double> x) const {
        const Node* node = root_.get();
        while (!node->is_leaf())
            node = x[static_cast<std::size_t>(node->split_attr)] <= node->threshold
                       ? node->left.get()
                       : node->right.get();
        return node;
    }

    Node* route(std::span<const double> x) {
        return const_cast<Node*>(std::as_const(*this).route(x));
    }

    static int majority_at(const Node& leaf) {
        int best = 0;
        for (std::size_t c = 1; c < leaf.class_counts.size(); ++c)
            if (leaf.class_counts[c] > leaf.class_counts[static_cast<std::size_t>(best)])
                best = static_cast<int>(c);
        return best;
    }

    // Per-leaf naive Bayes over the stored Gaussian summaries. Unobserved
    // (class, attribute) cells contribute nothing; a zero-variance cell acts
    // as a point mass.
    int naive_bayes_at(const Node& leaf, std::span<const double> x) const {
        double total = 0.0;
        for (double n : leaf.class_counts) total += n;
        if (total <= 0.0) return majority_at(leaf);
        int best = 0;
        double best_ll = -std::numeric_limits<double>::infinity();
        bool first = true;
        for (std::size_t c = 0; c < leaf.class_counts.size(); ++c) {
            if (leaf.class_counts[c] <= 0.0) continue;
            double ll = std::log(leaf.class_counts[c] / total);
            for (std::size_t f = 0; f < x.size() && f < leaf.observers.size(); ++f) {
                const AttributeObserver& obs = leaf.observers[f];
                if (c >= obs.per_class.size() || obs.per_class[c].n == 0.0) continue;
                const detail::RunningMoments& m = obs.per_class[c];
                const double var = m.variance();
                if (var > 0.0) {
                    const double diff = x[f] - m.mean;
                    ll += -0.5 * std::log(2.0 * kPi * var) - diff * diff / (2.0 * var);
                } else {
                    ll += x[f] == m.mean ? 0.0 : kLogNegligible;
                }
            }
            if (first || ll > best_ll) {
                best_ll = ll;
                best = static_cast<int>(c);
                first = false;
            }
        }
        return best;
    }

    int predict_at(const Node* leaf, std::span<const double> x) const {
        switch (leaf_mode_) {
            case HtLeafPrediction::majority_class: return majority_at(*leaf);
            case HtLeafPrediction::naive_bayes: return naive_bayes_at(*leaf, x);
            case HtLeafPrediction::nb_adaptive:
                return leaf->mc_correct > leaf->nb_correct ? majority_at(*leaf)
                                                           : naive_bayes_at(*leaf, x);
        }
        return majority_at(*leaf);
    }

    struct Candidate {
        double gain = 0.0;
        int attr = -1;
        double threshold = 0.0;
        std::vector<double> left_counts;
    };

    static double entropy(std::span<const double> counts, double total) {
        if (total <= 0.0) return 0.0;
        double h = 0.0;
        for (double n : counts)
            if (n > 0.0) {
                const double p = n / total;
                h -= p * std::log2(p);
            }
        return h;
    }

    // Estimated class mass at or below t under the per-class Gaussian
    // summary; a zero-variance class is a point mass at its mean.
    static double mass_below(const detail::RunningMoments& m, double t) {
        if (m.n == 0.0) return 0.0;
        const double var = m.variance();
        if (var <= 0.0) return m.mean <= t ? m.n : 0.0;
        const double z = (m.mean - t) / std::sqrt(2.0 * var);
        return m.n * 0.5 * std::erfc(z);
    }

    void attempt_split(Node& leaf) {
        const double total =
            std::accumulate(leaf.class_counts.begin(), leaf.class_counts.end(), 0.0);
        const double h0 = entropy(leaf.class_counts, total);
        if (h0 == 0.0 || total <= 0.0) return;

        Candidate best, second;
        std::vector<double> left(leaf.class_counts.size());
        for (std::size_t a = 0; a < leaf.observers.size(); ++a) {
            const AttributeObserver& obs = leaf.observers[a];
            if (!(obs.max_seen > obs.min_seen)) continue;
            Candidate attr_best;
            for (int j = 1; j <= bins_; ++j) {
                const double t = obs.min_seen + static_cast<double>(j) *
                                                    (obs.max_seen - obs.min_seen) /
                                                    static_cast<double>(bins_ + 1);
                double n_left = 0.0;
                for (std::size_t c = 0; c < leaf.class_counts.size(); ++c) {
                    left[c] = c < obs.per_class.size() ? mass_below(obs.per_class[c], t) : 0.0;
                    n_left += left[c];
                }
                const double n_right = total - n_left;
                double h_right = 0.0;
                if (n_right > 0.0) {
                    double acc = 0.0;
                    for (std::size_t c = 0; c < leaf.class_counts.size(); ++c) {
                        const double r = std::max(leaf.class_counts[c] - left[c], 0.0);
                        if (r > 0.0) acc -= r / n_right * std::log2(r / n_right);
                    }
                    h_right = acc;
                }
                const double gain = h0 - (n_left / total * entropy(left, n_left) +
                                          n_right / total * h_right);
                if (gain > attr_best.gain) {
                    attr_best.gain = gain;
                    attr_best.attr = static_cast<int>(a);
                    attr_best.threshold = t;
                    attr_best.left_counts = left;
                }
            }
            if (attr_best.attr < 0) continue;
            if (attr_best.gain > best.gain) {
                second = std::move(best);
                best = std::move(attr_best);
            } else if (attr_best.gain > second.gain) {
                second = std::move(attr_best);
            }
        }
        if (best.attr < 0 || best.gain <= 0.0) return;

        const double r_bound = std::log2(static_cast<double>(std::max(num_classes_, 2)));
        const double eps =
            std::sqrt(r_bound * r_bound * std::log(1.0 / delta_) / (2.0 * total));
        if (best.gain - second.gain > eps || eps < tie_) split(leaf, best);
    }

    void split(Node& leaf, const Candidate& chosen) {
        auto left = std::make_unique<Node>();
        auto right = std::make_unique<Node>();
        left->class_counts.resize(leaf.class_counts.size(), 0.0);
        right->class_counts.resize(leaf.class_counts.size(), 0.0);
        for (std::size_t c = 0; c < leaf.class_counts.size(); ++c) {
            left->class_counts[c] = chosen.left_counts[c];
            right->class_counts[c] =
                std::max(leaf.class_counts[c] - chosen.left_counts[c], 0.0);
        }
        leaf.split_attr = chosen.attr;
        leaf.threshold = chosen.threshold;
        leaf.left = std::move(left);
        leaf.right = std::move(right);
        leaf.class_counts.clear();
        leaf.observers.clear();
        leaf.since_attempt = 0.0;
        leaf.mc_correct = 0.0;
        leaf.nb_correct = 0.0;
    }

    static std::size_t count_nodes(const Node& n) {
        if (n.is_leaf()) return 1;
        return 1 + count_nodes(*n.left) + count_nodes(*n.right);
    }

    static std::size_t depth_of(const Node& n) {
        if (n.is_leaf()) return 0;
        return 1 + std::max(depth_of(*n.left), depth_of(*n.right));
    }

    static constexpr double kPi = 3.141592653589793238462643383279502884;
    static constexpr double kLogNegligible = -690.0; // log of the smallest normal

    double grace_;
    double delta_;
    double tie_;
    int bins_;
    HtLeafPrediction leaf_mode_;
    int num_classes_ = 0;
    std::unique_ptr<Node> root_;
};

} // namespace grfstream
