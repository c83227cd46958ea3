#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "grfstream/encoding.hpp"

using namespace grfstream;

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

} // namespace

TEST_CASE("config validation rejects singular and non-positive settings", "[encoding]") {
    CHECK_THROWS_AS(GrfConfig(2, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(GrfConfig(0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(GrfConfig(3, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(GrfConfig(3, -1.0), std::invalid_argument);
    CHECK_NOTHROW(GrfConfig(3, 0.1));
}

TEST_CASE("field centers and widths", "[encoding]") {
    SECTION("three fields, unit range, gamma 1") {
        const auto fields = build_fields(0.0, 1.0, GrfConfig(3, 1.0));
        REQUIRE(fields.size() == 3);
        CHECK(fields[0].center == Catch::Approx(-0.5));
        CHECK(fields[1].center == Catch::Approx(0.5));
        CHECK(fields[2].center == Catch::Approx(1.5));
        for (const auto& f : fields) CHECK(f.width == Catch::Approx(1.0));
    }
    SECTION("four fields, unit range, gamma 2") {
        const auto fields = build_fields(0.0, 1.0, GrfConfig(4, 2.0));
        REQUIRE(fields.size() == 4);
        CHECK(fields[0].center == Catch::Approx(-0.25));
        CHECK(fields[1].center == Catch::Approx(0.25));
        CHECK(fields[2].center == Catch::Approx(0.75));
        CHECK(fields[3].center == Catch::Approx(1.25));
        for (const auto& f : fields) CHECK(f.width == Catch::Approx(0.25));
    }
    SECTION("zero-range feature: coincident centers, floored width") {
        const auto fields = build_fields(5.0, 5.0, GrfConfig(6, 2.0));
        for (const auto& f : fields) {
            CHECK(f.center == 5.0);
            CHECK(f.width == kMinFieldWidth);
        }
    }
    SECTION("consecutive centers are equally spaced") {
        const auto fields = build_fields(-2.0, 3.0, GrfConfig(7, 1.5));
        const double spacing = 5.0 / 5.0;
        for (std::size_t i = 1; i < fields.size(); ++i)
            CHECK(fields[i].center - fields[i - 1].center == Catch::Approx(spacing));
    }
}

TEST_CASE("single-feature responses", "[encoding]") {
    const auto fields = build_fields(0.0, 1.0, GrfConfig(3, 1.0));

    SECTION("exact 1 at each center") {
        for (const auto& f : fields) {
            const auto v = encode_feature(f.center, fields);
            bool saw_one = false;
            for (std::size_t i = 0; i < v.size(); ++i)
                if (fields[i].center == f.center) {
                    CHECK(v[i] == 1.0);
                    saw_one = true;
                }
            CHECK(saw_one);
        }
    }
    SECTION("midpoint value is exp(-1/2) on the flanks") {
        const auto v = encode_feature(0.5, fields);
        REQUIRE(v.size() == 3);
        CHECK(v[0] == Catch::Approx(0.6065306597126334).epsilon(1e-14));
        CHECK(v[1] == 1.0);
        CHECK(v[2] == Catch::Approx(0.6065306597126334).epsilon(1e-14));
    }
    SECTION("six-field response to 0.73 is unimodal with the peak at the nearest center") {
        const auto six = build_fields(0.0, 1.0, GrfConfig(6, 1.5));
        const auto v = encode_feature(0.73, six);
        std::size_t nearest = 0;
        for (std::size_t i = 1; i < six.size(); ++i)
            if (std::abs(0.73 - six[i].center) < std::abs(0.73 - six[nearest].center))
                nearest = i;
        std::size_t peak = 0;
        for (std::size_t i = 1; i < v.size(); ++i)
            if (v[i] > v[peak]) peak = i;
        CHECK(peak == nearest);
        for (std::size_t i = 0; i + 1 < v.size(); ++i) {
            if (i < peak) CHECK(v[i] <= v[i + 1]);
            if (i >= peak) CHECK(v[i] >= v[i + 1]);
        }
    }
}

TEST_CASE("whole-sample encoding", "[encoding]") {
    SECTION("two features with five fields give ten values") {
        FeatureLimits limits({0.0, 0.0}, {1.0, 1.0});
        GrfEncoder enc(limits, GrfConfig(5, 2.0));
        const auto v = enc.encode(std::vector<double>{0.2, 0.9});
        CHECK(v.size() == 10);
    }
    SECTION("zero-feature sample encodes to the empty vector") {
        GrfEncoder enc(FeatureLimits({}, {}), GrfConfig(3, 1.0));
        CHECK(enc.encode(std::vector<double>{}).empty());
    }
    SECTION("per-feature blocks equal the single-feature encoding") {
        FeatureLimits limits({0.0, 0.0}, {1.0, 1.0});
        GrfEncoder enc(limits, GrfConfig(3, 1.0));
        const auto v = enc.encode(std::vector<double>{0.5, 0.5});
        const auto one = encode_feature(0.5, build_fields(0.0, 1.0, GrfConfig(3, 1.0)));
        REQUIRE(v.size() == 6);
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(v[i] == one[i]);
            CHECK(v[i + 3] == one[i]);
        }
    }
    SECTION("dimension mismatch is a hard error") {
        GrfEncoder enc(FeatureLimits({0.0}, {1.0}), GrfConfig(3, 1.0));
        CHECK_THROWS_AS(enc.encode(std::vector<double>{0.1, 0.2}), std::invalid_argument);
    }
}

TEST_CASE("limit updates", "[encoding]") {
    GrfEncoder enc(FeatureLimits({0.0}, {1.0}), GrfConfig(3, 1.0));

    SECTION("max expansion") {
        CHECK(enc.update_limits(std::vector<double>{2.0}));
        CHECK(enc.limits().min[0] == 0.0);
        CHECK(enc.limits().max[0] == 2.0);
    }
    SECTION("interior point leaves limits and fields untouched") {
        const auto before = enc.encode(std::vector<double>{0.3});
        CHECK_FALSE(enc.update_limits(std::vector<double>{0.5}));
        const auto after = enc.encode(std::vector<double>{0.3});
        CHECK(before == after);
    }
    SECTION("min expansion") {
        CHECK(enc.update_limits(std::vector<double>{-3.0}));
        CHECK(enc.limits().min[0] == -3.0);
        CHECK(enc.limits().max[0] == 1.0);
    }
    SECTION("dimension mismatch is a hard error") {
        CHECK_THROWS_AS(enc.update_limits(std::vector<double>{0.0, 0.0}),
                        std::invalid_argument);
    }
}

TEST_CASE("encoding grid dump", "[encoding]") {
    SECTION("resolution two emits endpoints only") {
        const auto grid = dump_encoding_grid(2.0, 6.0, GrfConfig(3, 1.0), 2);
        REQUIRE(grid.size() == 6);
        for (std::size_t i = 0; i < 3; ++i) CHECK(grid[i].x == 2.0);
        for (std::size_t i = 3; i < 6; ++i) CHECK(grid[i].x == 6.0);
    }
    SECTION("grid values stay in (0, 1]") {
        const auto grid = dump_encoding_grid(0.0, 1.0, GrfConfig(8, 2.5), 33);
        for (const auto& p : grid) {
            CHECK(p.value > 0.0);
            CHECK(p.value <= 1.0);
        }
    }
    SECTION("wider overlap (smaller gamma) gives larger off-center values") {
        const auto narrow = build_fields(0.0, 1.0, GrfConfig(4, 2.0));
        const auto wide = build_fields(0.0, 1.0, GrfConfig(4, 0.2));
        // halfway between the two middle centers
        const double x = 0.5 * (narrow[1].center + narrow[2].center);
        const auto v_narrow = encode_feature(x, narrow);
        const auto v_wide = encode_feature(x, wide);
        for (std::size_t i = 0; i < v_narrow.size(); ++i)
            CHECK(v_wide[i] > v_narrow[i]);
    }
    SECTION("resolution below two is rejected") {
        CHECK_THROWS_AS(dump_encoding_grid(0.0, 1.0, GrfConfig(3, 1.0), 1),
                        std::invalid_argument);
    }
}

TEST_CASE("randomized encoder laws", "[encoding][property]") {
    // Affine draws stay well conditioned (offsets comparable to the range):
    // the invariance is a property of the encoding, not of catastrophic
    // cancellation in double when |beta| >> alpha*range.
    std::mt19937_64 rng(0x5eedf00dULL);
    for (int trial = 0; trial < 500; ++trial) {
        const int n_grfs = 3 + static_cast<int>(rng() % 6);
        const double gamma = uniform(rng, 0.2, 2.5);
        const double range = uniform(rng, 0.05, 50.0);
        const double i_min = uniform(rng, -2.0 * range, 2.0 * range);
        const double i_max = i_min + range;
        const GrfConfig cfg(n_grfs, gamma);
        const auto fields = build_fields(i_min, i_max, cfg);
        const double x = uniform(rng, i_min, i_max);
        const auto v = encode_feature(x, fields);

        // length and range laws
        REQUIRE(v.size() == static_cast<std::size_t>(n_grfs));
        for (double value : v) {
            CHECK(value > 0.0);
            CHECK(value <= 1.0);
        }

        // affine invariance
        const double alpha = uniform(rng, 0.5, 2.0);
        const double beta = uniform(rng, -alpha * range, alpha * range);
        const auto mapped =
            build_fields(alpha * i_min + beta, alpha * i_max + beta, cfg);
        const auto v2 = encode_feature(alpha * x + beta, mapped);
        for (std::size_t i = 0; i < v.size(); ++i)
            CHECK(std::abs(v[i] - v2[i]) <= 1e-12 * std::max(v[i], v2[i]));

        // power-of-two scaling commutes with rounding, so it must be exact
        const auto doubled = build_fields(2.0 * i_min, 2.0 * i_max, cfg);
        const auto vd = encode_feature(2.0 * x, doubled);
        for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == vd[i]);

        // unimodality around the best-responding field
        std::size_t peak = 0;
        for (std::size_t i = 1; i < v.size(); ++i)
            if (v[i] > v[peak]) peak = i;
        for (std::size_t i = 0; i + 1 < v.size(); ++i) {
            if (i < peak) CHECK(v[i] <= v[i + 1]);
            if (i >= peak) CHECK(v[i] >= v[i + 1]);
        }
    }
}

TEST_CASE("lattice translations are bit-exact", "[encoding][property]") {
    // Inputs on a coarse binary lattice, with the range chosen so the field
    // spacing lands on the lattice as well: every intermediate then computes
    // exactly and the translated encoding must match bitwise.
    std::mt19937_64 rng(0x7a771ceULL);
    const double grid = 0x1.0p-20;
    for (int trial = 0; trial < 200; ++trial) {
        const int n_grfs = 3 + static_cast<int>(rng() % 6);
        const GrfConfig cfg(n_grfs, uniform(rng, 0.2, 2.5));
        const double spacing = (1.0 + std::floor(uniform(rng, 0.0, 1.0) / grid) * grid);
        const double range = (n_grfs - 2) * spacing;
        const double i_min = std::floor(uniform(rng, -4.0, 4.0) / grid) * grid;
        const double x = i_min + std::floor(uniform(rng, 0.0, range) / grid) * grid;
        const double beta = std::floor(uniform(rng, -4.0, 4.0) / grid) * grid;
        const auto v = encode_feature(x, build_fields(i_min, i_min + range, cfg));
        const auto w = encode_feature(
            x + beta, build_fields(i_min + beta, i_min + range + beta, cfg));
        for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == w[i]);
    }
}

TEST_CASE("symmetry and overlap monotonicity", "[encoding][property]") {
    std::mt19937_64 rng(0xabcdefULL);
    for (int trial = 0; trial < 300; ++trial) {
        const int n_grfs = 3 + static_cast<int>(rng() % 6);
        const double gamma = uniform(rng, 0.2, 3.0);
        const auto fields = build_fields(0.0, 1.0, GrfConfig(n_grfs, gamma));
        const double x = uniform(rng, 0.0, 1.0);

        // reversal symmetry about the midpoint of (0,1)
        const auto v = encode_feature(x, fields);
        const auto w = encode_feature(1.0 - x, fields);
        for (std::size_t i = 0; i < v.size(); ++i) {
            const double rev = w[v.size() - 1 - i];
            CHECK(std::abs(v[i] - rev) <= 1e-12 * std::max(v[i], rev));
        }

        // strictly decreasing in gamma away from centers (x values too close
        // to a center are skipped: the responses there round to 1.0)
        double nearest = 1e9;
        for (const auto& f : fields) nearest = std::min(nearest, std::abs(x - f.center));
        if (nearest < 1e-4) continue;
        const auto tighter = build_fields(0.0, 1.0, GrfConfig(n_grfs, gamma * 1.5));
        const auto vt = encode_feature(x, tighter);
        for (std::size_t i = 0; i < v.size(); ++i) CHECK(vt[i] < v[i]);
    }
}
