#pragma once

// ADWIN change detector over a bounded real stream (here: the learner's 0/1
// error indicators). The window is an exponential histogram: row r holds up
// to `max_buckets` buckets of 2^r elements each; overflowing a row merges its
// two oldest buckets into the next row. On every insertion each bucket
// boundary is tested as a split W0*W1 of the window; when the sub-window
// means differ by at least
//
//     eps_cut = sqrt( (1/(2m)) * ln(4*W/delta) ),   m = 1/(1/|W0| + 1/|W1|),
//
// the older portion W0 is dropped and drift is signalled.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace grfstream {

class AdwinDetector {
public:
    explicit AdwinDetector(double delta = 0.002, int max_buckets = 32)
        : delta_(delta), max_buckets_(static_cast<std::size_t>(max_buckets)) {
        if (!(delta > 0.0 && delta < 1.0))
            throw std::invalid_argument("AdwinDetector: delta must be in (0,1)");
        if (max_buckets < 1)
            throw std::invalid_argument("AdwinDetector: max buckets per row must be >= 1");
    }

    /// Appends one value and reports whether the window was cut.
    bool add_element(double value) {
        if (!(value >= 0.0 && value <= 1.0))
            throw std::invalid_argument("AdwinDetector: value outside [0,1]");
        insert(value);
        return detect_and_shrink();
    }

    /// Empties the window; delta and row capacity are kept.
    void reset() {
        rows_.clear();
        width_ = 0.0;
        sum_ = 0.0;
    }

    double delta() const { return delta_; }
    std::size_t max_buckets_per_row() const { return max_buckets_; }
    std::size_t width() const { return static_cast<std::size_t>(width_); }
    double sum() const { return sum_; }
    double mean() const { return width_ > 0.0 ? sum_ / width_ : 0.0; }

    std::size_t bucket_count() const {
        std::size_t n = 0;
        for (const Row& row : rows_) n += row.size();
        return n;
    }

private:
    // Fixed-capacity ring of bucket sums, age-ordered (index 0 = oldest).
    // Capacity max_buckets+1 so a row can briefly hold the overflowing bucket
    // before the merge cascade runs.
    class Row {
    public:
        explicit Row(std::size_t capacity) : sums_(capacity) {}
        std::size_t size() const { return size_; }
        bool empty() const { return size_ == 0; }
        double at(std::size_t i) const { return sums_[(head_ + i) % sums_.size()]; }
        double front() const { return sums_[head_]; }
        void push_back(double s) {
            sums_[(head_ + size_) % sums_.size()] = s;
            ++size_;
        }
        double pop_front() {
            const double s = sums_[head_];
            head_ = (head_ + 1) % sums_.size();
            --size_;
            return s;
        }

    private:
        std::vector<double> sums_;
        std::size_t head_ = 0;
        std::size_t size_ = 0;
    };

    void insert(double value) {
        if (rows_.empty()) rows_.emplace_back(max_buckets_ + 1);
        rows_[0].push_back(value);
        width_ += 1.0;
        sum_ += value;
        // Merge cascade: two oldest buckets of an overflowing row become one
        // bucket of the next row.
        for (std::size_t r = 0; rows_[r].size() > max_buckets_; ++r) {
            if (r + 1 == rows_.size()) rows_.emplace_back(max_buckets_ + 1);
            const double merged = rows_[r].pop_front() + rows_[r].pop_front();
            rows_[r + 1].push_back(merged);
        }
    }

    bool detect_and_shrink() {
        bool drift = false;
        while (width_ >= 2.0 && scan_once()) drift = true;
        return drift;
    }

    // One pass over all splits, oldest boundary first. On a triggering split
    // the whole older sub-window is dropped and the caller rescans what is
    // left. The cut test is evaluated in product form,
    //   (s0*n1 - s1*n0)^2 >= 0.5 * ln(4W/delta) * W * n0 * n1,
    // which is division- and sqrt-free.
    bool scan_once() {
        const double ln_term = std::log(4.0 * width_ / delta_);
        const double rhs_scale = 0.5 * ln_term * width_;
        double n0 = 0.0;
        double s0 = 0.0;
        std::size_t buckets_seen = 0;
        for (std::size_t ri = rows_.size(); ri-- > 0;) {
            const Row& row = rows_[ri];
            const double cap = static_cast<double>(1ULL << ri);
            for (std::size_t i = 0; i < row.size(); ++i) {
                n0 += cap;
                s0 += row.at(i);
                ++buckets_seen;
                const double n1 = width_ - n0;
                if (n1 <= 0.0) return false; // newest boundary: empty suffix
                const double s1 = sum_ - s0;
                const double diff = s0 * n1 - s1 * n0;
                if (diff * diff >= rhs_scale * n0 * n1) {
                    drop_oldest(buckets_seen);
                    return true;
                }
            }
        }
        return false;
    }

    void drop_oldest(std::size_t buckets) {
        for (std::size_t ri = rows_.size(); ri-- > 0 && buckets > 0;) {
            Row& row = rows_[ri];
            const double cap = static_cast<double>(1ULL << ri);
            while (buckets > 0 && !row.empty()) {
                sum_ -= row.pop_front();
                width_ -= cap;
                --buckets;
            }
        }
        while (!rows_.empty() && rows_.back().empty()) rows_.pop_back();
    }

    double delta_;
    std::size_t max_buckets_;
    std::vector<Row> rows_; // rows_[r] holds buckets of 2^r elements
    double width_ = 0.0;
    double sum_ = 0.0;
};

} // namespace grfstream
