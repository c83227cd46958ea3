#pragma once

// One-vs-rest linear classifiers sharing per-class weight vectors and an
// argmax decision (lowest class id on ties). Each head is trained as an
// independent binary problem with +/-1 targets:
//
//   perceptron            w += t*x on its own mistakes (t*s <= 0), unit rate
//   passive-aggressive    PA-I: tau = min(C, hinge/||x||^2), w += tau*t*x
//   sgd                   hinge subgradient step, eta_t = eta0 / t^power

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "grfstream/learners/learner.hpp"

namespace grfstream {

class LinearOvrLearner : public OnlineLearner {
public:
    std::span<const double> class_weights(int c) const { return weights_[c]; }
    double class_bias(int c) const { return biases_[c]; }
    std::size_t num_classes() const { return weights_.size(); }

protected:
    int do_predict(std::span<const double> x) const override {
        int best = -1;
        double best_score = 0.0;
        for (std::size_t c = 0; c < weights_.size(); ++c) {
            const double s = score(c, x);
            if (best < 0 || s > best_score) {
                best = static_cast<int>(c);
                best_score = s;
            }
        }
        return best;
    }

    void do_train(std::span<const double> x, int label) override {
        const auto c = static_cast<std::size_t>(label);
        if (weights_.size() <= c) {
            weights_.resize(c + 1);
            biases_.resize(c + 1, 0.0);
        }
        for (auto& w : weights_)
            if (w.size() < x.size()) w.resize(x.size(), 0.0);
        ++step_;
        for (std::size_t k = 0; k < weights_.size(); ++k)
            update_head(k, x, k == c ? 1.0 : -1.0);
    }

    void do_reset() override {
        weights_.clear();
        biases_.clear();
        step_ = 0;
    }

    double score(std::size_t c, std::span<const double> x) const {
        double s = biases_[c];
        const auto& w = weights_[c];
        for (std::size_t f = 0; f < x.size(); ++f) s += w[f] * x[f];
        return s;
    }

    static double squared_norm(std::span<const double> x) {
        double n = 0.0;
        for (double v : x) n += v * v;
        return n;
    }

    void add_scaled(std::size_t c, std::span<const double> x, double scale) {
        auto& w = weights_[c];
        for (std::size_t f = 0; f < x.size(); ++f) w[f] += scale * x[f];
        biases_[c] += scale;
    }

    /// Binary update of head `c` against target t in {-1, +1}.
    virtual void update_head(std::size_t c, std::span<const double> x, double t) = 0;

    std::size_t step_ = 0; // training samples seen, drives the sgd schedule

private:
    std::vector<std::vector<double>> weights_;
    std::vector<double> biases_;
};

class PerceptronLearner final : public LinearOvrLearner {
public:
    explicit PerceptronLearner(const LearnerParams&) {}

protected:
    void update_head(std::size_t c, std::span<const double> x, double t) override {
        if (t * score(c, x) <= 0.0) add_scaled(c, x, t);
    }
};

class PassiveAggressiveLearner final : public LinearOvrLearner {
public:
    explicit PassiveAggressiveLearner(const LearnerParams& params) : c_(params.pa_c) {}

protected:
    void update_head(std::size_t c, std::span<const double> x, double t) override {
        const double loss = std::max(0.0, 1.0 - t * score(c, x));
        if (loss == 0.0) return;
        const double sq = squared_norm(x);
        if (sq == 0.0) return;
        add_scaled(c, x, std::min(c_, loss / sq) * t);
    }

private:
    double c_;
};

class SgdLinearLearner final : public LinearOvrLearner {
public:
    explicit SgdLinearLearner(const LearnerParams& params)
        : eta0_(params.sgd_eta0), power_t_(params.sgd_power_t) {}

protected:
    void update_head(std::size_t c, std::span<const double> x, double t) override {
        if (t * score(c, x) <= 1.0) {
            const double eta = eta0_ / std::pow(static_cast<double>(step_), power_t_);
            add_scaled(c, x, eta * t);
        }
    }

private:
    double eta0_;
    double power_t_;
};

} // namespace grfstream
