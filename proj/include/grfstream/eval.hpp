#pragma once

// Prequential bookkeeping: incremental Kappa over confusion-matrix marginals
// and the sliding-window McNemar paired test.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace grfstream {

/// Chi-squared(1) critical value at 0.95 confidence.
inline constexpr double kMcNemarThreshold = 3.841459;

/// Confusion-matrix marginals of a test-then-train run, accumulated from the
/// first post-warm-start sample onward.
class EvalLedger {
public:
    void record(int predicted, int actual) {
        grow(std::max(predicted, actual));
        ++pred_counts_[static_cast<std::size_t>(predicted)];
        ++true_counts_[static_cast<std::size_t>(actual)];
        if (predicted == actual) ++correct_;
        ++total_;
    }

    std::size_t total() const { return total_; }
    std::size_t correct() const { return correct_; }
    const std::vector<std::size_t>& true_counts() const { return true_counts_; }
    const std::vector<std::size_t>& pred_counts() const { return pred_counts_; }

    double accuracy() const {
        if (total_ == 0) throw std::logic_error("EvalLedger: no samples recorded");
        return static_cast<double>(correct_) / static_cast<double>(total_);
    }

    /// K = (p_o - p_c) / (1 - p_c) with p_c from the marginal products.
    /// Returns 0 in the degenerate p_c = 1 case (single class, always
    /// predicted), where the formula is 0/0.
    double kappa() const {
        const double p_o = accuracy();
        const double n = static_cast<double>(total_);
        double p_c = 0.0;
        for (std::size_t k = 0; k < true_counts_.size(); ++k)
            p_c += (static_cast<double>(true_counts_[k]) / n) *
                   (static_cast<double>(pred_counts_[k]) / n);
        if (1.0 - p_c <= 0.0) return 0.0;
        return (p_o - p_c) / (1.0 - p_c);
    }

private:
    void grow(int label) {
        if (label < 0) throw std::invalid_argument("EvalLedger: negative class id");
        const auto need = static_cast<std::size_t>(label) + 1;
        if (true_counts_.size() < need) {
            true_counts_.resize(need, 0);
            pred_counts_.resize(need, 0);
        }
    }

    std::vector<std::size_t> true_counts_;
    std::vector<std::size_t> pred_counts_;
    std::size_t correct_ = 0;
    std::size_t total_ = 0;
};

/// Paired outcome of one sample under two classifiers.
enum class PairedOutcome : std::uint8_t {
    both_correct = 0,
    only_a_wrong = 1,
    only_b_wrong = 2,
    both_wrong = 3,
};

/// Ring buffer of the last `window` paired outcomes with running discordant
/// counts a (only A wrong) and b (only B wrong). M = (a-b)^2/(a+b) is defined
/// as 0 when a+b = 0; rejection decisions are emitted from the very first
/// (partial-window) sample so the rejection percentage covers the whole
/// evaluated stream.
class McNemarWindow {
public:
    explicit McNemarWindow(std::size_t window = 500) : ring_(window) {
        if (window == 0)
            throw std::invalid_argument("McNemarWindow: window must be >= 1");
    }

    struct Step {
        double statistic;
        bool reject;
    };

    Step push(bool a_wrong, bool b_wrong) {
        const auto outcome = static_cast<PairedOutcome>(
            (a_wrong && !b_wrong)   ? 1
            : (!a_wrong && b_wrong) ? 2
            : (a_wrong && b_wrong)  ? 3
                                    : 0);
        if (filled_ == ring_.size()) {
            forget(static_cast<PairedOutcome>(ring_[head_]));
        } else {
            ++filled_;
        }
        ring_[head_] = static_cast<std::uint8_t>(outcome);
        head_ = (head_ + 1) % ring_.size();
        if (outcome == PairedOutcome::only_a_wrong) ++a_;
        if (outcome == PairedOutcome::only_b_wrong) ++b_;

        const double m = statistic();
        const bool reject = m > kMcNemarThreshold;
        ++steps_;
        if (reject) ++rejections_;
        return {m, reject};
    }

    double statistic() const {
        const double discordant = static_cast<double>(a_ + b_);
        if (discordant == 0.0) return 0.0;
        const double diff = static_cast<double>(a_) - static_cast<double>(b_);
        return diff * diff / discordant;
    }

    std::size_t window() const { return ring_.size(); }
    std::size_t size() const { return filled_; }
    std::size_t a_count() const { return a_; }
    std::size_t b_count() const { return b_; }
    std::size_t steps() const { return steps_; }
    std::size_t rejections() const { return rejections_; }

    double rejection_percentage() const {
        if (steps_ == 0)
            throw std::logic_error("McNemarWindow: no steps recorded");
        return 100.0 * static_cast<double>(rejections_) /
               static_cast<double>(steps_);
    }

private:
    void forget(PairedOutcome outcome) {
        if (outcome == PairedOutcome::only_a_wrong) --a_;
        if (outcome == PairedOutcome::only_b_wrong) --b_;
    }

    std::vector<std::uint8_t> ring_;
    std::size_t head_ = 0;
    std::size_t filled_ = 0;
    std::size_t a_ = 0;
    std::size_t b_ = 0;
    std::size_t steps_ = 0;
    std::size_t rejections_ = 0;
};

/// Runs the McNemar window over two per-sample correctness sequences from the
/// same stream and returns the rejection percentage.
inline double mcnemar_rejection_pct(const std::vector<std::uint8_t>& correct_a,
                                    const std::vector<std::uint8_t>& correct_b,
                                    std::size_t window) {
    if (correct_a.size() != correct_b.size())
        throw std::invalid_argument("mcnemar_rejection_pct: length mismatch");
    McNemarWindow win(window);
    for (std::size_t i = 0; i < correct_a.size(); ++i)
        win.push(correct_a[i] == 0, correct_b[i] == 0);
    return win.steps() == 0 ? 0.0 : win.rejection_percentage();
}

/// Monotonic wall-clock timer for the processing-time cost measure.
class Stopwatch {
public:
    Stopwatch() : start_(clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(clock::now() - start_).count();
    }

private:
    using clock = std::chrono::steady_clock;
    clock::time_point start_;
};

/// Result of one prequential run (post-warm-start stream only).
struct RunReport {
    double kappa = 0.0;
    double processing_time_s = 0.0;
    std::size_t evaluated = 0;
    std::size_t drift_count = 0;
    std::size_t learner_resets = 0;
    std::size_t detector_resets = 0;
    std::optional<double> mcnemar_rejection_pct; // paired runs only
    /// (sample index, cumulative kappa) pairs, downsampled; empty when off.
    std::vector<std::pair<std::size_t, double>> kappa_trajectory;
};

} // namespace grfstream
