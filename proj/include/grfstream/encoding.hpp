#pragma once

// Gaussian receptive field (GRF) population encoding.
//
// Each scalar feature with range [i_min, i_max] is covered by n_grfs equally
// spaced Gaussian curves; the feature value is replaced by its height on every
// curve, enlarging a d-dimensional sample to d * n_grfs values in (0, 1].

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "grfstream/sample.hpp"

namespace grfstream {

/// Per-feature value range. Established from a warm-start portion of the
/// stream (or kept as a running min/max when updated online).
struct FeatureLimits {
    std::vector<double> min;
    std::vector<double> max;

    FeatureLimits() = default;
    FeatureLimits(std::vector<double> lo, std::vector<double> hi)
        : min(std::move(lo)), max(std::move(hi)) {
        if (min.size() != max.size())
            throw std::invalid_argument("FeatureLimits: min/max size mismatch");
        for (std::size_t f = 0; f < min.size(); ++f)
            if (!(min[f] <= max[f]))
                throw std::invalid_argument(
                    "FeatureLimits: min > max at feature " + std::to_string(f));
    }

    std::size_t dim() const { return min.size(); }

    /// Running min/max over a warm-start block.
    static FeatureLimits from_samples(std::span<const Sample> block) {
        if (block.empty())
            throw std::invalid_argument("FeatureLimits: empty warm-start block");
        std::vector<double> lo = block[0].features;
        std::vector<double> hi = block[0].features;
        for (const Sample& s : block) {
            if (s.features.size() != lo.size())
                throw std::invalid_argument("FeatureLimits: ragged sample block");
            for (std::size_t f = 0; f < lo.size(); ++f) {
                lo[f] = std::min(lo[f], s.features[f]);
                hi[f] = std::max(hi[f], s.features[f]);
            }
        }
        return FeatureLimits(std::move(lo), std::move(hi));
    }
};

/// Encoder parameters: number of curves per feature and the overlap factor.
/// n_grfs = 2 makes the spacing formula singular, so anything below 3 is
/// rejected here and never reaches the field builder.
struct GrfConfig {
    int n_grfs = 3;
    double gamma = 2.0;

    GrfConfig() = default;
    GrfConfig(int n, double g) : n_grfs(n), gamma(g) { validate(); }

    void validate() const {
        if (n_grfs < 3)
            throw std::invalid_argument("GrfConfig: n_grfs must be >= 3");
        if (!(gamma > 0.0))
            throw std::invalid_argument("GrfConfig: gamma must be > 0");
    }
};

/// One Gaussian curve: center and width in feature units.
struct GrfField {
    double center = 0.0;
    double width = 1.0;
};

/// Width floor for zero-range (constant) features, in feature units. Keeps
/// the response function total instead of crashing mid-stream.
inline constexpr double kMinFieldWidth = 1e-9;

/// Centers C_i = i_min + ((2i-3)/2) * (i_max-i_min)/(n_grfs-2) for i = 1..n,
/// all with width (1/gamma) * (i_max-i_min)/(n_grfs-2).
inline std::vector<GrfField> build_fields(double i_min, double i_max,
                                          const GrfConfig& cfg) {
    cfg.validate();
    if (!(i_min <= i_max))
        throw std::invalid_argument("build_fields: i_min > i_max");
    const double spacing = (i_max - i_min) / static_cast<double>(cfg.n_grfs - 2);
    const double width = std::max(spacing / cfg.gamma, kMinFieldWidth);
    std::vector<GrfField> fields(static_cast<std::size_t>(cfg.n_grfs));
    for (int i = 1; i <= cfg.n_grfs; ++i)
        fields[static_cast<std::size_t>(i - 1)] = {
            i_min + (2.0 * i - 3.0) / 2.0 * spacing, width};
    return fields;
}

/// Response of one field to input x; 1 exactly at the center, decaying but
/// never clamped for out-of-range inputs.
inline double field_response(double x, const GrfField& f) {
    const double z = (x - f.center) / f.width;
    return std::exp(-0.5 * z * z);
}

/// Appends the n_grfs responses for one feature value to `out`.
inline void encode_feature(double x, std::span<const GrfField> fields,
                           std::vector<double>& out) {
    for (const GrfField& f : fields) out.push_back(field_response(x, f));
}

inline std::vector<double> encode_feature(double x,
                                          std::span<const GrfField> fields) {
    std::vector<double> out;
    out.reserve(fields.size());
    encode_feature(x, fields, out);
    return out;
}

/// Stateful per-stream encoder. Fields are cached per feature and rebuilt
/// only when update_limits actually widens a range, so a frozen
/// (warm-start-fixed) encoder is immutable and shareable across runs.
class GrfEncoder {
public:
    GrfEncoder(FeatureLimits limits, GrfConfig cfg)
        : limits_(std::move(limits)), cfg_(cfg) {
        cfg_.validate();
        rebuild_all();
    }

    std::size_t dim() const { return limits_.dim(); }
    std::size_t encoded_dim() const {
        return limits_.dim() * static_cast<std::size_t>(cfg_.n_grfs);
    }
    const FeatureLimits& limits() const { return limits_; }
    const GrfConfig& config() const { return cfg_; }
    std::span<const GrfField> fields(std::size_t feature) const {
        return {fields_.data() + feature * static_cast<std::size_t>(cfg_.n_grfs),
                static_cast<std::size_t>(cfg_.n_grfs)};
    }

    /// Encodes all features of `x` in input order, field order within each
    /// feature, into `out` (cleared first; capacity is reused across calls).
    void encode_into(std::span<const double> x, std::vector<double>& out) const {
        check_dim(x.size());
        out.clear();
        out.reserve(encoded_dim());
        for (std::size_t f = 0; f < x.size(); ++f)
            encode_feature(x[f], fields(f), out);
    }

    std::vector<double> encode(std::span<const double> x) const {
        std::vector<double> out;
        encode_into(x, out);
        return out;
    }

    /// Expands the per-feature running min/max to include `x`. Returns true
    /// when any limit moved (fields for those features are rebuilt).
    bool update_limits(std::span<const double> x) {
        check_dim(x.size());
        bool changed = false;
        for (std::size_t f = 0; f < x.size(); ++f) {
            bool moved = false;
            if (x[f] < limits_.min[f]) { limits_.min[f] = x[f]; moved = true; }
            if (x[f] > limits_.max[f]) { limits_.max[f] = x[f]; moved = true; }
            if (moved) { rebuild_feature(f); changed = true; }
        }
        return changed;
    }

private:
    void check_dim(std::size_t got) const {
        if (got != limits_.dim())
            throw std::invalid_argument(
                "GrfEncoder: sample has " + std::to_string(got) +
                " features, limits cover " + std::to_string(limits_.dim()));
    }

    void rebuild_feature(std::size_t f) {
        auto built = build_fields(limits_.min[f], limits_.max[f], cfg_);
        std::copy(built.begin(), built.end(),
                  fields_.begin() + static_cast<std::ptrdiff_t>(
                                        f * static_cast<std::size_t>(cfg_.n_grfs)));
    }

    void rebuild_all() {
        fields_.resize(encoded_dim());
        for (std::size_t f = 0; f < limits_.dim(); ++f) rebuild_feature(f);
    }

    FeatureLimits limits_;
    GrfConfig cfg_;
    std::vector<GrfField> fields_; // feature-major, n_grfs per feature
};

/// One row of the introspection grid emitted for external plotting.
struct GridPoint {
    double x;
    int field_index; // 0-based
    double value;
};

/// Evaluates encode_feature on `resolution` equally spaced points across
/// [i_min, i_max], flattened to (x, field index, value) rows.
inline std::vector<GridPoint> dump_encoding_grid(double i_min, double i_max,
                                                 const GrfConfig& cfg,
                                                 int resolution) {
    if (resolution < 2)
        throw std::invalid_argument("dump_encoding_grid: resolution must be >= 2");
    auto fields = build_fields(i_min, i_max, cfg);
    std::vector<GridPoint> grid;
    grid.reserve(static_cast<std::size_t>(resolution) * fields.size());
    for (int i = 0; i < resolution; ++i) {
        const double t = static_cast<double>(i) / (resolution - 1);
        const double x = i_min + t * (i_max - i_min);
        for (std::size_t k = 0; k < fields.size(); ++k)
            grid.push_back({x, static_cast<int>(k), field_response(x, fields[k])});
    }
    return grid;
}

} // namespace grfstream
