#pragma once

// Incremental naive Bayes variants: Gaussian (per-class running moments via
// Welford's one-pass update) and multinomial (per-class feature accumulators
// with additive smoothing applied at predict time).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "grfstream/learners/learner.hpp"

namespace grfstream {

namespace detail {

/// Numerically stable running mean / population variance.
struct RunningMoments {
    double n = 0.0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        n += 1.0;
        const double delta = x - mean;
        mean += delta / n;
        m2 += delta * (x - mean);
    }

    double variance() const { return n > 0.0 ? m2 / n : 0.0; }
};

} // namespace detail

class GaussianNbLearner final : public OnlineLearner {
public:
    explicit GaussianNbLearner(const LearnerParams& params)
        : var_smoothing_(params.gnb_var_smoothing) {}

    double class_mean(int c, std::size_t f) const { return moments_[c][f].mean; }
    double class_variance(int c, std::size_t f) const { return moments_[c][f].variance(); }
    double class_count(int c) const { return class_counts_[c]; }

protected:
    int do_predict(std::span<const double> x) const override {
        // Smoothing follows the usual convention: a fixed fraction of the
        // largest per-feature variance over all data seen so far.
        double max_var = 0.0;
        for (const auto& g : global_) max_var = std::max(max_var, g.variance());
        const double eps = max_var > 0.0 ? var_smoothing_ * max_var : var_smoothing_;

        int best = -1;
        double best_ll = -std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < class_counts_.size(); ++c) {
            if (class_counts_[c] == 0.0) continue;
            double ll = std::log(class_counts_[c] / total_);
            for (std::size_t f = 0; f < x.size(); ++f) {
                const auto& m = moments_[c][f];
                const double var = m.variance() + eps;
                const double diff = x[f] - m.mean;
                ll += -0.5 * std::log(2.0 * kPi * var) - diff * diff / (2.0 * var);
            }
            if (ll > best_ll) {
                best_ll = ll;
                best = static_cast<int>(c);
            }
        }
        return best;
    }

    void do_train(std::span<const double> x, int label) override {
        const auto c = static_cast<std::size_t>(label);
        if (class_counts_.size() <= c) {
            class_counts_.resize(c + 1, 0.0);
            moments_.resize(c + 1);
        }
        if (moments_[c].size() < x.size()) moments_[c].resize(x.size());
        if (global_.size() < x.size()) global_.resize(x.size());
        for (std::size_t f = 0; f < x.size(); ++f) {
            moments_[c][f].add(x[f]);
            global_[f].add(x[f]);
        }
        class_counts_[c] += 1.0;
        total_ += 1.0;
    }

    void do_reset() override {
        moments_.clear();
        global_.clear();
        class_counts_.clear();
        total_ = 0.0;
    }

private:
    static constexpr double kPi = 3.141592653589793238462643383279502884;

    double var_smoothing_;
    std::vector<std::vector<detail::RunningMoments>> moments_; // [class][feature]
    std::vector<detail::RunningMoments> global_;               // over all classes
    std::vector<double> class_counts_;
    double total_ = 0.0;
};

class MultinomialNbLearner final : public OnlineLearner {
public:
    explicit MultinomialNbLearner(const LearnerParams& params)
        : alpha_(params.mnb_alpha), fit_prior_(params.mnb_fit_prior) {}

protected:
    int do_predict(std::span<const double> x) const override {
        const double d = static_cast<double>(x.size());
        double seen = 0.0;
        for (double n : class_counts_)
            if (n > 0.0) seen += 1.0;

        int best = -1;
        double best_ll = -std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < class_counts_.size(); ++c) {
            if (class_counts_[c] == 0.0) continue;
            double ll = fit_prior_ ? std::log(class_counts_[c] / total_)
                                   : -std::log(seen);
            const double denom = feature_totals_[c] + alpha_ * d;
            for (std::size_t f = 0; f < x.size(); ++f)
                ll += x[f] * (std::log(feature_counts_[c][f] + alpha_) - std::log(denom));
            if (ll > best_ll) {
                best_ll = ll;
                best = static_cast<int>(c);
            }
        }
        return best;
    }

    void do_train(std::span<const double> x, int label) override {
        for (std::size_t f = 0; f < x.size(); ++f)
            if (x[f] < 0.0)
                throw std::invalid_argument(
                    "MultinomialNbLearner: negative value at feature " + std::to_string(f));
        const auto c = static_cast<std::size_t>(label);
        if (class_counts_.size() <= c) {
            feature_counts_.resize(c + 1);
            feature_totals_.resize(c + 1, 0.0);
            class_counts_.resize(c + 1, 0.0);
        }
        if (feature_counts_[c].size() < x.size()) feature_counts_[c].resize(x.size(), 0.0);
        for (std::size_t f = 0; f < x.size(); ++f) {
            feature_counts_[c][f] += x[f];
            feature_totals_[c] += x[f];
        }
        class_counts_[c] += 1.0;
        total_ += 1.0;
    }

    void do_reset() override {
        feature_counts_.clear();
        feature_totals_.clear();
        class_counts_.clear();
        total_ = 0.0;
    }

private:
    double alpha_;
    bool fit_prior_;
    std::vector<std::vector<double>> feature_counts_; // [class][feature]
    std::vector<double> feature_totals_;              // [class]
    std::vector<double> class_counts_;                // [class]
    double total_ = 0.0;
};

} // namespace grfstream
