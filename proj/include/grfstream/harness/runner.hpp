#pragma once

// Test-then-train orchestration: warm start (limits + pre-training), the
// prequential loop with ADWIN-triggered resets, and the paired
// baseline-vs-GRF experiment with McNemar significance.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "grfstream/adwin.hpp"
#include "grfstream/encoding.hpp"
#include "grfstream/eval.hpp"
#include "grfstream/harness/config.hpp"
#include "grfstream/learners.hpp"

namespace grfstream {

namespace detail {

/// Per-sample feature transform in front of the learner. GRF arms encode;
/// raw multinomial NB gets a min-max rescale into [0,1] from the warm-start
/// limits (clamped, so later out-of-range values stay legal inputs);
/// everything else passes through.
class SampleTransform {
public:
    SampleTransform(const ExperimentConfig& cfg, bool grf_on, const FeatureLimits& limits)
        : mode_(grf_on ? Mode::grf
                       : cfg.learner.kind == LearnerKind::multinomial_nb ? Mode::minmax
                                                                         : Mode::identity) {
        if (mode_ == Mode::grf)
            encoder_.emplace(limits, GrfConfig(cfg.n_grfs, cfg.gamma));
        else if (mode_ == Mode::minmax)
            limits_ = limits;
    }

    void update_limits(std::span<const double> x) {
        if (mode_ == Mode::grf) encoder_->update_limits(x);
    }

    std::span<const double> apply(const Sample& s) {
        switch (mode_) {
            case Mode::identity: return s.features;
            case Mode::grf:
                encoder_->encode_into(s.features, buffer_);
                return buffer_;
            case Mode::minmax: {
                buffer_.resize(s.features.size());
                for (std::size_t f = 0; f < s.features.size(); ++f) {
                    const double range = limits_.max[f] - limits_.min[f];
                    buffer_[f] = range > 0.0
                                     ? std::clamp((s.features[f] - limits_.min[f]) / range,
                                                  0.0, 1.0)
                                     : 0.0;
                }
                return buffer_;
            }
        }
        return s.features;
    }

private:
    enum class Mode { identity, grf, minmax };
    Mode mode_;
    std::optional<GrfEncoder> encoder_;
    FeatureLimits limits_;
    std::vector<double> buffer_;
};

} // namespace detail

struct RunOutcome {
    RunReport report;
    std::vector<std::uint8_t> correct; // per evaluated sample, for pairing
};

/// One prequential pass over a materialized stream. Warm-start samples fix
/// the limits and pre-train the learner; they are excluded from Kappa,
/// McNemar and timing. Drift resets learner and detector but keeps the
/// encoder limits.
inline RunOutcome run_single_on(const MaterializedStream& stream,
                                const ExperimentConfig& cfg, bool grf_on) {
    cfg.validate();
    const std::size_t n = stream.samples.size();
    if (n <= cfg.pretrain_size)
        throw std::invalid_argument(
            "stream of " + std::to_string(n) + " samples is too short for pretrain_size " +
            std::to_string(cfg.pretrain_size));

    const std::span<const Sample> warm(stream.samples.data(), cfg.pretrain_size);
    const FeatureLimits limits = FeatureLimits::from_samples(warm);
    detail::SampleTransform transform(cfg, grf_on, limits);
    auto learner = make_learner(cfg.learner);

    for (const Sample& s : warm) learner->train(transform.apply(s), s.label);

    RunOutcome out;
    out.correct.reserve(n - cfg.pretrain_size);
    EvalLedger ledger;
    AdwinDetector detector(cfg.adwin_delta, cfg.adwin_f);
    const bool online_limits = grf_on && cfg.limit_strategy == LimitStrategy::online_update;

    Stopwatch watch;
    for (std::size_t i = cfg.pretrain_size; i < n; ++i) {
        const Sample& s = stream.samples[i];
        try {
            if (online_limits) transform.update_limits(s.features);
            const auto x = transform.apply(s);
            const int predicted = learner->predict(x);
            ledger.record(predicted, s.label);
            const bool wrong = predicted != s.label;
            out.correct.push_back(wrong ? 0 : 1);
            if (cfg.trajectory_stride != 0 &&
                (i - cfg.pretrain_size) % cfg.trajectory_stride == 0)
                out.report.kappa_trajectory.emplace_back(i - cfg.pretrain_size,
                                                         ledger.kappa());
            if (detector.add_element(wrong ? 1.0 : 0.0)) {
                ++out.report.drift_count;
                learner->reset();
                ++out.report.learner_resets;
                detector.reset();
                ++out.report.detector_resets;
            }
            learner->train(x, s.label);
        } catch (const std::exception& e) {
            throw std::runtime_error("sample " + std::to_string(i) + ": " + e.what());
        }
    }
    out.report.processing_time_s = watch.seconds();
    out.report.evaluated = ledger.total();
    out.report.kappa = ledger.kappa();
    return out;
}

/// Materializes the configured stream with the config seed and runs one arm
/// (cfg.grf selects it).
inline RunOutcome run_single(const ExperimentConfig& cfg) {
    const MaterializedStream stream = make_stream(cfg, cfg.seed);
    return run_single_on(stream, cfg, cfg.grf);
}

struct PairedRep {
    std::uint64_t seed = 0;
    RunReport baseline;
    RunReport grf;
    double mcnemar_pct = 0.0;
};

struct MeanStd {
    double mean = 0.0;
    double stddev = 0.0; // sample stddev; 0 with a single repetition
};

struct PairedResult {
    std::vector<PairedRep> reps;
    MeanStd kappa_base, kappa_grf;
    MeanStd time_base, time_grf;
    double mcnemar_pct_mean = 0.0;
};

/// Both arms over the identical materialized sequence, so the per-sample
/// correctness pairs feeding McNemar are validly paired.
inline PairedRep run_paired_rep(const ExperimentConfig& cfg, std::uint64_t rep_seed) {
    const MaterializedStream stream = make_stream(cfg, rep_seed);
    RunOutcome baseline = run_single_on(stream, cfg, false);
    RunOutcome grf = run_single_on(stream, cfg, true);
    PairedRep rep;
    rep.seed = rep_seed;
    rep.mcnemar_pct =
        mcnemar_rejection_pct(baseline.correct, grf.correct, cfg.mcnemar_window);
    baseline.report.mcnemar_rejection_pct = rep.mcnemar_pct;
    grf.report.mcnemar_rejection_pct = rep.mcnemar_pct;
    rep.baseline = std::move(baseline.report);
    rep.grf = std::move(grf.report);
    return rep;
}

namespace detail {

template <typename Getter>
inline MeanStd mean_std(const std::vector<PairedRep>& reps, Getter get) {
    MeanStd out;
    const double n = static_cast<double>(reps.size());
    for (const PairedRep& r : reps) out.mean += get(r);
    out.mean /= n;
    if (reps.size() > 1) {
        double acc = 0.0;
        for (const PairedRep& r : reps) {
            const double d = get(r) - out.mean;
            acc += d * d;
        }
        out.stddev = std::sqrt(acc / (n - 1.0));
    }
    return out;
}

} // namespace detail

inline PairedResult aggregate_reps(std::vector<PairedRep> reps) {
    if (reps.empty()) throw std::invalid_argument("aggregate_reps: no repetitions");
    PairedResult res;
    res.kappa_base = detail::mean_std(reps, [](const PairedRep& r) { return r.baseline.kappa; });
    res.kappa_grf = detail::mean_std(reps, [](const PairedRep& r) { return r.grf.kappa; });
    res.time_base = detail::mean_std(
        reps, [](const PairedRep& r) { return r.baseline.processing_time_s; });
    res.time_grf =
        detail::mean_std(reps, [](const PairedRep& r) { return r.grf.processing_time_s; });
    res.mcnemar_pct_mean =
        detail::mean_std(reps, [](const PairedRep& r) { return r.mcnemar_pct; }).mean;
    res.reps = std::move(reps);
    return res;
}

/// The full paired comparison: `repetitions` independent seeds
/// (cfg.seed, cfg.seed+1, ...), aggregated as mean +/- sample stddev.
inline PairedResult run_paired(const ExperimentConfig& cfg) {
    cfg.validate();
    std::vector<PairedRep> reps;
    reps.reserve(cfg.repetitions);
    for (std::size_t r = 0; r < cfg.repetitions; ++r)
        reps.push_back(run_paired_rep(cfg, cfg.seed + r));
    return aggregate_reps(std::move(reps));
}

} // namespace grfstream
