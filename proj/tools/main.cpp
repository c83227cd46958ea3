// grfstream command line: single runs, paired baseline-vs-GRF comparisons,
// suite execution from a JSON file, and the encoding-grid dump for external
// plotting.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "grfstream/grfstream.hpp"

namespace {

using grfstream::ExperimentConfig;

struct ConfigFlags {
    std::string config_file;
    std::optional<std::string> dataset, learner, limit_strategy, delimiter, label;
    std::optional<int> concept_id, sea_function, adwin_f, n_grfs;
    std::optional<std::size_t> base_size, replications, pretrain, mcnemar_window,
        repetitions, trajectory_stride, limit;
    std::optional<std::uint64_t> seed;
    std::optional<bool> redraw, grf, header, mnb_fit_prior;
    std::optional<double> gamma, adwin_delta;
    std::optional<double> circle_cx, circle_cy, circle_r, line_a, line_b, sine_amp,
        sine_omega, sea_theta;
    std::optional<std::string> file;
    std::optional<int> label_col;
    std::vector<int> feature_cols, nominal_cols;
    std::optional<int> knn_k, knn_window, knn_leaf_size, ht_grace, ht_bins;
    std::optional<double> mnb_alpha, gnb_var_smoothing, pa_c, sgd_eta0, sgd_power_t,
        ht_delta, ht_tie;
    std::optional<std::string> ht_leaf;
};

void add_config_flags(CLI::App& cmd, ConfigFlags& f) {
    cmd.add_option("--config", f.config_file, "JSON config file (flags override it)");
    cmd.add_option("--dataset", f.dataset, "circle|line|sine|sineh|sea|file");
    cmd.add_option("--concept", f.concept_id, "concept 1 or 2 (synthetic pairs)");
    cmd.add_option("--sea-function", f.sea_function, "SEA function id 1..4");
    cmd.add_option("--base-size", f.base_size, "samples per generated block");
    cmd.add_option("--replications", f.replications, "verbatim block repetitions");
    cmd.add_option("--redraw-replications", f.redraw, "redraw each block instead of repeating");
    cmd.add_option("--circle-cx", f.circle_cx, "circle boundary override");
    cmd.add_option("--circle-cy", f.circle_cy, "circle boundary override");
    cmd.add_option("--circle-r", f.circle_r, "circle boundary override");
    cmd.add_option("--line-a", f.line_a, "line boundary override");
    cmd.add_option("--line-b", f.line_b, "line boundary override");
    cmd.add_option("--sine-amp", f.sine_amp, "sine boundary override");
    cmd.add_option("--sine-omega", f.sine_omega, "sine boundary override");
    cmd.add_option("--sea-theta", f.sea_theta, "SEA threshold override");
    cmd.add_option("--file", f.file, "dataset file path (dataset=file)");
    cmd.add_option("--label-col", f.label_col, "label column (0-based)");
    cmd.add_option("--feature-cols", f.feature_cols, "feature columns (0-based)")
        ->delimiter(',');
    cmd.add_option("--nominal-cols", f.nominal_cols, "ordinally coded feature columns")
        ->delimiter(',');
    cmd.add_option("--delimiter", f.delimiter, "field delimiter (one character)");
    cmd.add_option("--header", f.header, "skip a header row");
    cmd.add_option("--limit", f.limit, "truncate the file stream to N samples");
    cmd.add_option("--learner", f.learner, "knn|gnb|mnb|perceptron|pa|sgd|ht");
    cmd.add_option("--knn-k", f.knn_k, "neighbours");
    cmd.add_option("--knn-window", f.knn_window, "FIFO window size");
    cmd.add_option("--knn-leaf-size", f.knn_leaf_size, "accepted for compatibility");
    cmd.add_option("--mnb-alpha", f.mnb_alpha, "additive smoothing");
    cmd.add_option("--mnb-fit-prior", f.mnb_fit_prior, "class prior from counts");
    cmd.add_option("--gnb-var-smoothing", f.gnb_var_smoothing, "variance smoothing");
    cmd.add_option("--pa-c", f.pa_c, "PA-I aggressiveness C");
    cmd.add_option("--sgd-eta0", f.sgd_eta0, "initial learning rate");
    cmd.add_option("--sgd-power-t", f.sgd_power_t, "inverse-scaling exponent");
    cmd.add_option("--ht-grace", f.ht_grace, "samples between split attempts");
    cmd.add_option("--ht-delta", f.ht_delta, "split confidence");
    cmd.add_option("--ht-tie", f.ht_tie, "tie threshold");
    cmd.add_option("--ht-bins", f.ht_bins, "candidate thresholds per attribute");
    cmd.add_option("--ht-leaf", f.ht_leaf, "leaf prediction: nba|nb|mc");
    cmd.add_option("--gamma", f.gamma, "GRF overlap factor");
    cmd.add_option("--n-grfs", f.n_grfs, "Gaussian fields per feature (>= 3)");
    cmd.add_option("--limit-strategy", f.limit_strategy, "warm-start-fixed|online-update");
    cmd.add_option("--pretrain", f.pretrain, "warm-start portion size");
    cmd.add_option("--mcnemar-window", f.mcnemar_window, "McNemar sliding window");
    cmd.add_option("--repetitions", f.repetitions, "independent repetitions");
    cmd.add_option("--seed", f.seed, "base generator seed");
    cmd.add_option("--adwin-delta", f.adwin_delta, "ADWIN confidence");
    cmd.add_option("--adwin-f", f.adwin_f, "ADWIN max buckets per row");
    cmd.add_option("--trajectory-stride", f.trajectory_stride,
                   "record kappa every N evaluated samples (0 = off)");
    cmd.add_option("--label", f.label, "table row label");
}

ExperimentConfig build_config(const ConfigFlags& f) {
    ExperimentConfig cfg;
    if (!f.config_file.empty()) cfg = grfstream::load_config_file(f.config_file);
    auto set = [](auto& dst, const auto& src) {
        if (src) dst = *src;
    };
    set(cfg.dataset, f.dataset);
    set(cfg.concept_id, f.concept_id);
    set(cfg.sea_function, f.sea_function);
    if (f.base_size) cfg.base_size = *f.base_size;
    if (f.replications) cfg.replications = *f.replications;
    set(cfg.redraw_replications, f.redraw);
    if (f.circle_cx) cfg.circle_cx = *f.circle_cx;
    if (f.circle_cy) cfg.circle_cy = *f.circle_cy;
    if (f.circle_r) cfg.circle_r = *f.circle_r;
    if (f.line_a) cfg.line_a = *f.line_a;
    if (f.line_b) cfg.line_b = *f.line_b;
    if (f.sine_amp) cfg.sine_amp = *f.sine_amp;
    if (f.sine_omega) cfg.sine_omega = *f.sine_omega;
    if (f.sea_theta) cfg.sea_theta = *f.sea_theta;
    set(cfg.file_schema.path, f.file);
    set(cfg.file_schema.label_col, f.label_col);
    if (!f.feature_cols.empty()) cfg.file_schema.feature_cols = f.feature_cols;
    if (!f.nominal_cols.empty()) cfg.file_schema.nominal_cols = f.nominal_cols;
    if (f.delimiter) {
        if (f.delimiter->size() != 1)
            throw std::invalid_argument("--delimiter must be one character");
        cfg.file_schema.delimiter = (*f.delimiter)[0];
    }
    set(cfg.file_schema.has_header, f.header);
    set(cfg.file_schema.limit, f.limit);
    if (f.learner) cfg.learner.kind = grfstream::learner_kind_from_name(*f.learner);
    set(cfg.learner.knn_k, f.knn_k);
    set(cfg.learner.knn_window, f.knn_window);
    set(cfg.learner.knn_leaf_size, f.knn_leaf_size);
    set(cfg.learner.mnb_alpha, f.mnb_alpha);
    set(cfg.learner.mnb_fit_prior, f.mnb_fit_prior);
    set(cfg.learner.gnb_var_smoothing, f.gnb_var_smoothing);
    set(cfg.learner.pa_c, f.pa_c);
    set(cfg.learner.sgd_eta0, f.sgd_eta0);
    set(cfg.learner.sgd_power_t, f.sgd_power_t);
    set(cfg.learner.ht_grace_period, f.ht_grace);
    set(cfg.learner.ht_split_confidence, f.ht_delta);
    set(cfg.learner.ht_tie_threshold, f.ht_tie);
    set(cfg.learner.ht_split_candidates, f.ht_bins);
    if (f.ht_leaf) cfg.learner.ht_leaf = grfstream::ht_leaf_from_name(*f.ht_leaf);
    set(cfg.grf, f.grf);
    set(cfg.gamma, f.gamma);
    set(cfg.n_grfs, f.n_grfs);
    if (f.limit_strategy)
        cfg.limit_strategy = grfstream::limit_strategy_from_name(*f.limit_strategy);
    set(cfg.pretrain_size, f.pretrain);
    set(cfg.mcnemar_window, f.mcnemar_window);
    set(cfg.repetitions, f.repetitions);
    set(cfg.seed, f.seed);
    set(cfg.adwin_delta, f.adwin_delta);
    set(cfg.adwin_f, f.adwin_f);
    set(cfg.trajectory_stride, f.trajectory_stride);
    set(cfg.label, f.label);
    cfg.validate();
    return cfg;
}

void write_or_print(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"GRF population encoding for stream learners: prequential "
                 "evaluation harness"};
    app.require_subcommand(1);

    ConfigFlags run_flags, pair_flags;
    bool run_grf = false;
    std::string run_trajectory_out;

    CLI::App* run = app.add_subcommand("run", "single test-then-train run");
    add_config_flags(*run, run_flags);
    run->add_flag("--grf", run_grf, "encode samples with GRFs");
    run->add_option("--trajectory-out", run_trajectory_out,
                    "write the kappa trajectory CSV here");

    CLI::App* pair = app.add_subcommand("pair", "paired baseline-vs-GRF comparison");
    add_config_flags(*pair, pair_flags);
    std::string pair_records, pair_out;
    pair->add_option("--records", pair_records, "per-repetition record file");
    pair->add_option("--out", pair_out, "table output file (default stdout)");

    CLI::App* suite = app.add_subcommand("suite", "run a JSON suite file");
    std::string suite_file, suite_records, suite_out;
    unsigned suite_jobs = 1;
    suite->add_option("suite-file", suite_file, "JSON suite file")->required();
    suite->add_option("--records", suite_records, "per-repetition record file");
    suite->add_option("--out", suite_out, "table output file (default stdout)");
    suite->add_option("--jobs", suite_jobs, "worker threads (timing is fairest at 1)");

    CLI::App* dump = app.add_subcommand("dump-grf", "encoding grid for one feature");
    double dump_min = 0.0, dump_max = 1.0, dump_gamma = 2.0;
    int dump_n = 3, dump_resolution = 101;
    std::string dump_out;
    dump->add_option("--min", dump_min, "feature range lower limit");
    dump->add_option("--max", dump_max, "feature range upper limit");
    dump->add_option("--gamma", dump_gamma, "overlap factor");
    dump->add_option("--n-grfs", dump_n, "fields per feature");
    dump->add_option("--resolution", dump_resolution, "grid points (>= 2)");
    dump->add_option("--out", dump_out, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            ExperimentConfig cfg = build_config(run_flags);
            if (run_grf) cfg.grf = true;
            const grfstream::RunOutcome outcome = grfstream::run_single(cfg);
            std::cout << grfstream::render_run_record(cfg, outcome.report);
            if (!run_trajectory_out.empty()) {
                std::string csv = "sample,kappa\n";
                for (const auto& [idx, kappa] : outcome.report.kappa_trajectory) {
                    char buf[64];
                    std::snprintf(buf, sizeof(buf), "%zu,%.6f\n", idx, kappa);
                    csv += buf;
                }
                write_or_print(run_trajectory_out, csv);
            }
        } else if (pair->parsed()) {
            ExperimentConfig cfg = build_config(pair_flags);
            grfstream::SuiteResult one;
            one.entries.resize(1);
            one.entries[0].config = cfg;
            one.entries[0].result = grfstream::run_paired(cfg);
            write_or_print(pair_out, grfstream::render_table(one));
            if (!pair_records.empty())
                write_or_print(pair_records, grfstream::render_records(one));
        } else if (suite->parsed()) {
            const auto configs = grfstream::load_suite_file(suite_file);
            const grfstream::SuiteResult result = grfstream::run_suite(configs, suite_jobs);
            write_or_print(suite_out, grfstream::render_table(result));
            if (!suite_records.empty())
                write_or_print(suite_records, grfstream::render_records(result));
            for (const auto& entry : result.entries)
                if (entry.failed)
                    std::cerr << "failed: " << entry.config.row_label() << ": "
                              << entry.error << "\n";
            if (result.any_failed) return 2;
        } else if (dump->parsed()) {
            const auto grid = grfstream::dump_encoding_grid(
                dump_min, dump_max, grfstream::GrfConfig(dump_n, dump_gamma),
                dump_resolution);
            std::string csv = "x,field_index,value\n";
            for (const auto& p : grid) {
                char buf[96];
                std::snprintf(buf, sizeof(buf), "%.9g,%d,%.9g\n", p.x, p.field_index,
                              p.value);
                csv += buf;
            }
            write_or_print(dump_out, csv);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
