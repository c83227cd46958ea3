#pragma once

// Experiment configuration: dataset choice (synthetic spec or file schema),
// learner kind and hyperparameters, GRF settings, and the evaluation knobs.
// Configs load from flat JSON objects; a suite file is a list of such
// objects, optionally sharing a "defaults" object.

#include <cstdint>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "grfstream/data/dsv.hpp"
#include "grfstream/data/synthetic.hpp"
#include "grfstream/encoding.hpp"
#include "grfstream/learners.hpp"

namespace grfstream {

enum class LimitStrategy { warm_start_fixed, online_update };

inline LimitStrategy limit_strategy_from_name(const std::string& name) {
    if (name == "warm-start-fixed") return LimitStrategy::warm_start_fixed;
    if (name == "online-update") return LimitStrategy::online_update;
    throw std::invalid_argument("unknown limit strategy: " + name);
}

inline const char* limit_strategy_name(LimitStrategy s) {
    return s == LimitStrategy::warm_start_fixed ? "warm-start-fixed" : "online-update";
}

struct ExperimentConfig {
    // dataset
    std::string dataset = "circle"; // circle|line|sine|sineh|sea|file
    int concept_id = 1;
    int sea_function = 1;
    std::optional<std::size_t> base_size;    // default 1000 (sea: 50000)
    std::optional<std::size_t> replications; // default 50 (sea: 1)
    bool redraw_replications = false;
    // boundary overrides on top of the shipped defaults
    std::optional<double> circle_cx, circle_cy, circle_r;
    std::optional<double> line_a, line_b;
    std::optional<double> sine_amp, sine_omega;
    std::optional<double> sea_theta;
    DsvSchema file_schema; // dataset == "file"

    // learner
    LearnerParams learner;

    // encoding
    bool grf = false; // run_single arm selector; pair/suite run both arms
    double gamma = 2.0;
    int n_grfs = 3;
    LimitStrategy limit_strategy = LimitStrategy::warm_start_fixed;

    // harness
    std::size_t pretrain_size = 12500;
    std::size_t mcnemar_window = 500;
    std::size_t repetitions = 25;
    std::uint64_t seed = 1;
    double adwin_delta = 0.002;
    int adwin_f = 32;
    std::size_t trajectory_stride = 0; // 0 = no kappa trajectory
    std::string label;                 // table row label; derived when empty

    std::size_t resolved_base_size() const {
        if (base_size) return *base_size;
        return dataset == "sea" ? 50000 : 1000;
    }
    std::size_t resolved_replications() const {
        if (replications) return *replications;
        return dataset == "sea" ? 1 : 50;
    }

    std::string row_label() const {
        if (!label.empty()) return label;
        if (dataset == "sea") return "sea_f" + std::to_string(sea_function);
        if (dataset == "file") {
            const std::string& p = file_schema.path;
            const auto slash = p.find_last_of('/');
            const std::string base = slash == std::string::npos ? p : p.substr(slash + 1);
            const auto dot = base.find_last_of('.');
            return dot == std::string::npos || dot == 0 ? base : base.substr(0, dot);
        }
        return dataset + "_concept" + std::to_string(concept_id);
    }

    void validate() const {
        if (dataset != "circle" && dataset != "line" && dataset != "sine" &&
            dataset != "sineh" && dataset != "sea" && dataset != "file")
            throw std::invalid_argument("unknown dataset: " + dataset);
        if (dataset == "file") file_schema.validate();
        if (pretrain_size < 1)
            throw std::invalid_argument("pretrain_size must be >= 1");
        if (mcnemar_window < 1)
            throw std::invalid_argument("mcnemar_window must be >= 1");
        if (repetitions < 1)
            throw std::invalid_argument("repetitions must be >= 1");
        learner.validate();
        GrfConfig(n_grfs, gamma); // throws on bad values
    }
};

/// Boundary for a synthetic config: shipped defaults with any per-field
/// overrides applied.
inline Boundary resolve_boundary(const ExperimentConfig& cfg) {
    const Family family = family_from_name(cfg.dataset);
    Boundary b = family == Family::sea
                     ? Boundary{SeaBoundary{sea_threshold(cfg.sea_function)}}
                     : default_boundary(family, cfg.concept_id);
    if (auto* circle = std::get_if<CircleBoundary>(&b)) {
        if (cfg.circle_cx) circle->cx = *cfg.circle_cx;
        if (cfg.circle_cy) circle->cy = *cfg.circle_cy;
        if (cfg.circle_r) circle->r = *cfg.circle_r;
    } else if (auto* line = std::get_if<LineBoundary>(&b)) {
        if (cfg.line_a) line->a = *cfg.line_a;
        if (cfg.line_b) line->b = *cfg.line_b;
    } else if (auto* sine = std::get_if<SineBoundary>(&b)) {
        if (cfg.sine_amp) sine->amp = *cfg.sine_amp;
        if (cfg.sine_omega) sine->omega = *cfg.sine_omega;
    } else if (auto* sea = std::get_if<SeaBoundary>(&b)) {
        if (cfg.sea_theta) sea->theta = *cfg.sea_theta;
    }
    return b;
}

/// Materializes the sample sequence for one run. `seed` overrides the config
/// seed so repetitions can vary only the generator seed.
inline MaterializedStream make_stream(const ExperimentConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    if (cfg.dataset == "file") {
        DsvSource source(cfg.file_schema);
        return materialize(source);
    }
    SyntheticSpec spec;
    spec.family = family_from_name(cfg.dataset);
    spec.concept_id = spec.family == Family::sea ? cfg.sea_function : cfg.concept_id;
    spec.base_size = cfg.resolved_base_size();
    spec.replications = cfg.resolved_replications();
    spec.seed = seed;
    spec.redraw_replications = cfg.redraw_replications;
    spec.boundary = resolve_boundary(cfg);
    SyntheticSource source(spec);
    return materialize(source);
}

namespace detail {

inline void apply_config_key(ExperimentConfig& cfg, const std::string& key,
                             const nlohmann::json& value) {
    using nlohmann::json;
    if (key == "dataset") cfg.dataset = value.get<std::string>();
    else if (key == "concept") cfg.concept_id = value.get<int>();
    else if (key == "sea_function") cfg.sea_function = value.get<int>();
    else if (key == "base_size") cfg.base_size = value.get<std::size_t>();
    else if (key == "replications") cfg.replications = value.get<std::size_t>();
    else if (key == "redraw_replications") cfg.redraw_replications = value.get<bool>();
    else if (key == "circle_cx") cfg.circle_cx = value.get<double>();
    else if (key == "circle_cy") cfg.circle_cy = value.get<double>();
    else if (key == "circle_r") cfg.circle_r = value.get<double>();
    else if (key == "line_a") cfg.line_a = value.get<double>();
    else if (key == "line_b") cfg.line_b = value.get<double>();
    else if (key == "sine_amp") cfg.sine_amp = value.get<double>();
    else if (key == "sine_omega") cfg.sine_omega = value.get<double>();
    else if (key == "sea_theta") cfg.sea_theta = value.get<double>();
    else if (key == "file") cfg.file_schema.path = value.get<std::string>();
    else if (key == "label_col") cfg.file_schema.label_col = value.get<int>();
    else if (key == "feature_cols") cfg.file_schema.feature_cols = value.get<std::vector<int>>();
    else if (key == "nominal_cols") cfg.file_schema.nominal_cols = value.get<std::vector<int>>();
    else if (key == "delimiter") {
        const auto s = value.get<std::string>();
        if (s.size() != 1) throw std::invalid_argument("delimiter must be one character");
        cfg.file_schema.delimiter = s[0];
    }
    else if (key == "header") cfg.file_schema.has_header = value.get<bool>();
    else if (key == "limit") cfg.file_schema.limit = value.get<std::size_t>();
    else if (key == "learner") cfg.learner.kind = learner_kind_from_name(value.get<std::string>());
    else if (key == "knn_k") cfg.learner.knn_k = value.get<int>();
    else if (key == "knn_window") cfg.learner.knn_window = value.get<int>();
    else if (key == "knn_leaf_size") cfg.learner.knn_leaf_size = value.get<int>();
    else if (key == "mnb_alpha") cfg.learner.mnb_alpha = value.get<double>();
    else if (key == "mnb_fit_prior") cfg.learner.mnb_fit_prior = value.get<bool>();
    else if (key == "gnb_var_smoothing") cfg.learner.gnb_var_smoothing = value.get<double>();
    else if (key == "pa_c") cfg.learner.pa_c = value.get<double>();
    else if (key == "sgd_eta0") cfg.learner.sgd_eta0 = value.get<double>();
    else if (key == "sgd_power_t") cfg.learner.sgd_power_t = value.get<double>();
    else if (key == "ht_grace") cfg.learner.ht_grace_period = value.get<int>();
    else if (key == "ht_delta") cfg.learner.ht_split_confidence = value.get<double>();
    else if (key == "ht_tie") cfg.learner.ht_tie_threshold = value.get<double>();
    else if (key == "ht_bins") cfg.learner.ht_split_candidates = value.get<int>();
    else if (key == "ht_leaf") cfg.learner.ht_leaf = ht_leaf_from_name(value.get<std::string>());
    else if (key == "grf") cfg.grf = value.get<bool>();
    else if (key == "gamma") cfg.gamma = value.get<double>();
    else if (key == "n_grfs") cfg.n_grfs = value.get<int>();
    else if (key == "limit_strategy")
        cfg.limit_strategy = limit_strategy_from_name(value.get<std::string>());
    else if (key == "pretrain_size") cfg.pretrain_size = value.get<std::size_t>();
    else if (key == "mcnemar_window") cfg.mcnemar_window = value.get<std::size_t>();
    else if (key == "repetitions") cfg.repetitions = value.get<std::size_t>();
    else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
    else if (key == "adwin_delta") cfg.adwin_delta = value.get<double>();
    else if (key == "adwin_f") cfg.adwin_f = value.get<int>();
    else if (key == "trajectory_stride") cfg.trajectory_stride = value.get<std::size_t>();
    else if (key == "label") cfg.label = value.get<std::string>();
    else throw std::invalid_argument("unknown config key: " + key);
}

inline void apply_config_object(ExperimentConfig& cfg, const nlohmann::json& obj) {
    if (!obj.is_object())
        throw std::invalid_argument("config must be a JSON object");
    for (const auto& [key, value] : obj.items()) apply_config_key(cfg, key, value);
}

} // namespace detail

inline ExperimentConfig config_from_json(const nlohmann::json& obj,
                                         const ExperimentConfig& base = {}) {
    ExperimentConfig cfg = base;
    detail::apply_config_object(cfg, obj);
    cfg.validate();
    return cfg;
}

inline ExperimentConfig load_config_file(const std::string& path,
                                         const ExperimentConfig& base = {}) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    return config_from_json(nlohmann::json::parse(in), base);
}

/// Suite file: either a JSON array of config objects, or an object with an
/// optional "defaults" object and an "experiments" array.
inline std::vector<ExperimentConfig> load_suite_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open suite file: " + path);
    const nlohmann::json doc = nlohmann::json::parse(in);

    ExperimentConfig defaults;
    const nlohmann::json* experiments = nullptr;
    if (doc.is_array()) {
        experiments = &doc;
    } else if (doc.is_object()) {
        if (doc.contains("defaults")) detail::apply_config_object(defaults, doc.at("defaults"));
        if (!doc.contains("experiments"))
            throw std::invalid_argument("suite file has no \"experiments\" array");
        experiments = &doc.at("experiments");
    } else {
        throw std::invalid_argument("suite file must be a JSON array or object");
    }
    if (!experiments->is_array())
        throw std::invalid_argument("\"experiments\" must be a JSON array");

    std::vector<ExperimentConfig> configs;
    configs.reserve(experiments->size());
    for (const auto& entry : *experiments) configs.push_back(config_from_json(entry, defaults));
    return configs;
}

} // namespace grfstream
