#pragma once

// Suite execution and report rendering. A suite is a list of experiment
// configs; each row runs the paired comparison. Output is a per-experiment
// table, a per-learner summary of means across experiments, and flat
// key=value per-repetition records.
// Repetitions may run on several worker threads; each run is still timed on
// its own worker, but timing comparisons are best taken with jobs=1.

#include <atomic>
#include <cstdio>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "grfstream/harness/runner.hpp"

namespace grfstream {

struct SuiteEntry {
    ExperimentConfig config;
    PairedResult result;
    bool failed = false;
    std::string error;
};

struct SuiteResult {
    std::vector<SuiteEntry> entries;
    bool any_failed = false;
};

inline SuiteResult run_suite(const std::vector<ExperimentConfig>& configs,
                             unsigned jobs = 1) {
    SuiteResult suite;
    suite.entries.resize(configs.size());
    for (std::size_t i = 0; i < configs.size(); ++i)
        suite.entries[i].config = configs[i];

    struct Task {
        std::size_t row;
        std::size_t rep;
    };
    std::vector<Task> tasks;
    std::vector<std::vector<PairedRep>> reps(configs.size());
    std::vector<std::string> errors(configs.size());
    for (std::size_t row = 0; row < configs.size(); ++row) {
        try {
            configs[row].validate();
        } catch (const std::exception& e) {
            errors[row] = e.what();
            continue;
        }
        reps[row].resize(configs[row].repetitions);
        for (std::size_t rep = 0; rep < configs[row].repetitions; ++rep)
            tasks.push_back({row, rep});
    }

    std::atomic<std::size_t> cursor{0};
    std::vector<std::string> task_errors(tasks.size()); // one slot per task
    auto worker = [&] {
        while (true) {
            const std::size_t t = cursor.fetch_add(1);
            if (t >= tasks.size()) return;
            const auto [row, rep] = tasks[t];
            try {
                reps[row][rep] =
                    run_paired_rep(configs[row], configs[row].seed + rep);
            } catch (const std::exception& e) {
                task_errors[t] = e.what();
            }
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    for (std::size_t t = 0; t < tasks.size(); ++t)
        if (!task_errors[t].empty() && errors[tasks[t].row].empty())
            errors[tasks[t].row] = task_errors[t];

    for (std::size_t row = 0; row < configs.size(); ++row) {
        SuiteEntry& entry = suite.entries[row];
        if (!errors[row].empty()) {
            entry.error = errors[row];
            entry.failed = true;
            suite.any_failed = true;
            continue;
        }
        entry.result = aggregate_reps(std::move(reps[row]));
    }
    return suite;
}

namespace detail {

inline std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

} // namespace detail

/// Per-experiment table plus the per-learner summary, tab-separated. All
/// timing columns carry a time_ prefix so deterministic comparisons can
/// strip them.
inline std::string render_table(const SuiteResult& suite) {
    std::string out =
        "# per-experiment\n"
        "dataset\tlearner\treps\tkappa_base\tkappa_base_std\tkappa_grf\t"
        "kappa_grf_std\tmcnemar_pct\ttime_base_s\ttime_base_std\ttime_grf_s\t"
        "time_grf_std\n";
    for (const SuiteEntry& e : suite.entries) {
        if (e.failed) continue;
        const PairedResult& r = e.result;
        out += e.config.row_label() + '\t' + learner_name(e.config.learner.kind) + '\t' +
               std::to_string(r.reps.size()) + '\t' +
               detail::fmt("%.4f", r.kappa_base.mean) + '\t' +
               detail::fmt("%.4f", r.kappa_base.stddev) + '\t' +
               detail::fmt("%.4f", r.kappa_grf.mean) + '\t' +
               detail::fmt("%.4f", r.kappa_grf.stddev) + '\t' +
               detail::fmt("%.2f", r.mcnemar_pct_mean) + '\t' +
               detail::fmt("%.4f", r.time_base.mean) + '\t' +
               detail::fmt("%.4f", r.time_base.stddev) + '\t' +
               detail::fmt("%.4f", r.time_grf.mean) + '\t' +
               detail::fmt("%.4f", r.time_grf.stddev) + '\n';
    }

    struct LearnerAcc {
        double kappa_base = 0, kappa_grf = 0, pct = 0, time_base = 0, time_grf = 0;
        std::size_t rows = 0;
    };
    std::map<std::string, LearnerAcc> by_learner;
    for (const SuiteEntry& e : suite.entries) {
        if (e.failed) continue;
        LearnerAcc& acc = by_learner[learner_name(e.config.learner.kind)];
        acc.kappa_base += e.result.kappa_base.mean;
        acc.kappa_grf += e.result.kappa_grf.mean;
        acc.pct += e.result.mcnemar_pct_mean;
        acc.time_base += e.result.time_base.mean;
        acc.time_grf += e.result.time_grf.mean;
        ++acc.rows;
    }
    out +=
        "# per-learner summary\n"
        "learner\texperiments\tkappa_base\tkappa_grf\tmcnemar_pct\ttime_base_s\t"
        "time_grf_s\n";
    for (const auto& [name, acc] : by_learner) {
        const double n = static_cast<double>(acc.rows);
        out += name + '\t' + std::to_string(acc.rows) + '\t' +
               detail::fmt("%.4f", acc.kappa_base / n) + '\t' +
               detail::fmt("%.4f", acc.kappa_grf / n) + '\t' +
               detail::fmt("%.2f", acc.pct / n) + '\t' +
               detail::fmt("%.4f", acc.time_base / n) + '\t' +
               detail::fmt("%.4f", acc.time_grf / n) + '\n';
    }
    return out;
}

/// One key=value line per repetition (timing keys carry a time_ prefix),
/// plus one error line per failed row.
inline std::string render_records(const SuiteResult& suite) {
    std::string out;
    for (std::size_t row = 0; row < suite.entries.size(); ++row) {
        const SuiteEntry& e = suite.entries[row];
        if (e.failed) {
            out += "row=" + std::to_string(row) + " dataset=" + e.config.row_label() +
                   " error=\"" + e.error + "\"\n";
            continue;
        }
        for (std::size_t i = 0; i < e.result.reps.size(); ++i) {
            const PairedRep& rep = e.result.reps[i];
            out += "row=" + std::to_string(row) + " rep=" + std::to_string(i) +
                   " dataset=" + e.config.row_label() +
                   " learner=" + learner_name(e.config.learner.kind) +
                   " seed=" + std::to_string(rep.seed) +
                   " evaluated=" + std::to_string(rep.baseline.evaluated) +
                   " kappa_base=" + detail::fmt("%.6f", rep.baseline.kappa) +
                   " kappa_grf=" + detail::fmt("%.6f", rep.grf.kappa) +
                   " mcnemar_pct=" + detail::fmt("%.4f", rep.mcnemar_pct) +
                   " drifts_base=" + std::to_string(rep.baseline.drift_count) +
                   " drifts_grf=" + std::to_string(rep.grf.drift_count) +
                   " time_base_s=" + detail::fmt("%.6f", rep.baseline.processing_time_s) +
                   " time_grf_s=" + detail::fmt("%.6f", rep.grf.processing_time_s) + '\n';
        }
    }
    return out;
}

/// Record line for a standalone single run.
inline std::string render_run_record(const ExperimentConfig& cfg, const RunReport& report) {
    std::string out = "dataset=" + cfg.row_label() +
                      " learner=" + std::string(learner_name(cfg.learner.kind)) +
                      " grf=" + (cfg.grf ? std::string("1") : std::string("0")) +
                      " seed=" + std::to_string(cfg.seed) +
                      " evaluated=" + std::to_string(report.evaluated) +
                      " kappa=" + detail::fmt("%.6f", report.kappa) +
                      " drifts=" + std::to_string(report.drift_count) +
                      " time_s=" + detail::fmt("%.6f", report.processing_time_s);
    if (report.mcnemar_rejection_pct)
        out += " mcnemar_pct=" + detail::fmt("%.4f", *report.mcnemar_rejection_pct);
    return out + "\n";
}

} // namespace grfstream
