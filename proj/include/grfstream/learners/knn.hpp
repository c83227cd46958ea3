#pragma once

// k-nearest-neighbours over a bounded FIFO window of the most recent
// training samples. Search is brute force; the windows used in streaming
// setups (tens of samples) make an index structure pointless.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "grfstream/learners/learner.hpp"

namespace grfstream {

class KnnLearner final : public OnlineLearner {
public:
    explicit KnnLearner(const LearnerParams& params)
        : k_(static_cast<std::size_t>(params.knn_k)),
          window_(static_cast<std::size_t>(params.knn_window)) {}

    /// Window contents (insertion order, oldest first).
    std::size_t window_size() const { return features_.size(); }

protected:
    int do_predict(std::span<const double> x) const override {
        const std::size_t n = features_.size();
        std::vector<double> dist(n);
        for (std::size_t i = 0; i < n; ++i) {
            double d2 = 0.0;
            for (std::size_t f = 0; f < x.size(); ++f) {
                const double diff = features_[i][f] - x[f];
                d2 += diff * diff;
            }
            dist[i] = d2;
        }
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        // Stable on distance ties: earlier window entries win.
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
        const std::size_t use = std::min(k_, n);
        std::vector<int> votes;
        for (std::size_t i = 0; i < use; ++i) {
            const int label = labels_[order[i]];
            if (votes.size() <= static_cast<std::size_t>(label))
                votes.resize(static_cast<std::size_t>(label) + 1, 0);
            ++votes[static_cast<std::size_t>(label)];
        }
        int best = 0;
        for (std::size_t c = 1; c < votes.size(); ++c)
            if (votes[c] > votes[static_cast<std::size_t>(best)]) best = static_cast<int>(c);
        return best;
    }

    void do_train(std::span<const double> x, int label) override {
        if (features_.size() == window_) {
            features_.erase(features_.begin());
            labels_.erase(labels_.begin());
        }
        features_.emplace_back(x.begin(), x.end());
        labels_.push_back(label);
    }

    void do_reset() override {
        features_.clear();
        labels_.clear();
    }

private:
    std::size_t k_;
    std::size_t window_;
    std::vector<std::vector<double>> features_;
    std::vector<int> labels_;
};

} // namespace grfstream
