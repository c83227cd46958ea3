#pragma once

// Uniform train-one/predict-one contract over all incremental classifiers,
// so the harness can run any learner on raw or GRF-encoded vectors
// interchangeably. All ties (score or vote) break toward the lowest class id
// and nothing here is randomized, so a fixed sample sequence gives a fixed
// prediction sequence.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>

namespace grfstream {

class OnlineLearner {
public:
    virtual ~OnlineLearner() = default;

    /// Deterministic class prediction; state is not modified.
    /// Calling this before any training is a harness bug and throws.
    int predict(std::span<const double> x) const {
        if (trained_ == 0)
            throw std::logic_error("OnlineLearner: predict before any training");
        check_dim(x.size());
        return do_predict(x);
    }

    /// One incremental update with a labelled sample.
    void train(std::span<const double> x, int label) {
        if (label < 0)
            throw std::invalid_argument("OnlineLearner: negative class id");
        if (trained_ == 0)
            dim_ = x.size();
        else
            check_dim(x.size());
        do_train(x, label);
        ++trained_;
    }

    /// Restores the exact post-construction state (same hyperparameters).
    void reset() {
        trained_ = 0;
        dim_ = 0;
        do_reset();
    }

    std::size_t samples_trained() const { return trained_; }

protected:
    virtual int do_predict(std::span<const double> x) const = 0;
    virtual void do_train(std::span<const double> x, int label) = 0;
    virtual void do_reset() = 0;

private:
    void check_dim(std::size_t got) const {
        if (got != dim_)
            throw std::invalid_argument(
                "OnlineLearner: expected " + std::to_string(dim_) +
                " features, got " + std::to_string(got));
    }

    std::size_t trained_ = 0;
    std::size_t dim_ = 0;
};

enum class LearnerKind {
    knn,
    gaussian_nb,
    multinomial_nb,
    perceptron,
    passive_aggressive,
    sgd_linear,
    hoeffding_tree,
};

/// Leaf prediction strategy for the Hoeffding tree. Adaptive naive Bayes
/// (each leaf tracks whether majority-class or naive-Bayes answers have been
/// more accurate on its own samples and uses the winner) is the usual
/// streaming-framework default and matters when correlated attributes starve
/// the split bound.
enum class HtLeafPrediction { majority_class, naive_bayes, nb_adaptive };

/// Kind plus every per-kind hyperparameter, all harness-configurable.
struct LearnerParams {
    LearnerKind kind = LearnerKind::gaussian_nb;

    int knn_k = 3;
    int knn_window = 10;
    int knn_leaf_size = 2; // accepted for config compatibility; brute-force
                           // search gives identical predictions

    double mnb_alpha = 1.0;
    bool mnb_fit_prior = true;

    double gnb_var_smoothing = 1e-9;

    double pa_c = 1.0;

    double sgd_eta0 = 0.01;
    double sgd_power_t = 0.5;

    int ht_grace_period = 200;
    double ht_split_confidence = 1e-7;
    double ht_tie_threshold = 0.05;
    int ht_split_candidates = 10;
    HtLeafPrediction ht_leaf = HtLeafPrediction::nb_adaptive;

    void validate() const {
        if (knn_k < 1 || knn_window < 1 || knn_leaf_size < 1)
            throw std::invalid_argument("LearnerParams: knn settings must be >= 1");
        if (knn_k > knn_window)
            throw std::invalid_argument("LearnerParams: knn k must be <= window size");
        if (!(mnb_alpha > 0.0))
            throw std::invalid_argument("LearnerParams: mnb alpha must be > 0");
        if (!(gnb_var_smoothing > 0.0))
            throw std::invalid_argument("LearnerParams: gnb var smoothing must be > 0");
        if (!(pa_c > 0.0))
            throw std::invalid_argument("LearnerParams: pa C must be > 0");
        if (!(sgd_eta0 > 0.0) || sgd_power_t < 0.0)
            throw std::invalid_argument("LearnerParams: invalid sgd schedule");
        if (ht_grace_period < 1 || !(ht_split_confidence > 0.0 && ht_split_confidence < 1.0) ||
            ht_tie_threshold < 0.0 || ht_split_candidates < 1)
            throw std::invalid_argument("LearnerParams: invalid hoeffding tree settings");
    }
};

} // namespace grfstream
