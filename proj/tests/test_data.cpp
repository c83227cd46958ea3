#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "grfstream/data/dsv.hpp"
#include "grfstream/data/synthetic.hpp"

using namespace grfstream;

namespace {

struct TempFile {
    std::filesystem::path path;
    explicit TempFile(const std::string& content) {
        static int counter = 0;
        path = std::filesystem::temp_directory_path() /
               ("grfstream_test_" + std::to_string(counter++) + ".csv");
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::filesystem::remove(path); }
};

} // namespace

TEST_CASE("concept streams have the standard benchmark shape", "[data]") {
    SyntheticSpec spec;
    spec.family = Family::circle;
    spec.concept_id = 1;
    spec.seed = 5;

    SECTION("default 1000 x 50 construction yields 50,000 samples") {
        SyntheticSource source(spec);
        const auto stream = materialize(source);
        CHECK(stream.samples.size() == 50000);
        CHECK(stream.dim == 2);
        CHECK(stream.num_classes == 2);
        for (const Sample& s : stream.samples) {
            CHECK(s.features[0] >= 0.0);
            CHECK(s.features[0] < 1.0);
            CHECK(s.features[1] >= 0.0);
            CHECK(s.features[1] < 1.0);
        }
    }
    SECTION("blocks repeat verbatim") {
        SyntheticSource source(spec);
        const auto stream = materialize(source);
        for (std::size_t i = 0; i < 2000; ++i) {
            CHECK(stream.samples[i].features == stream.samples[i + 1000].features);
            CHECK(stream.samples[i].label == stream.samples[i + 1000].label);
        }
    }
    SECTION("redraw mode draws fresh blocks") {
        spec.redraw_replications = true;
        SyntheticSource source(spec);
        const auto stream = materialize(source);
        CHECK(stream.samples[0].features != stream.samples[1000].features);
    }
    SECTION("same seed gives the identical sequence, new seed differs") {
        SyntheticSource a(spec), b(spec);
        const auto sa = materialize(a), sb = materialize(b);
        for (std::size_t i = 0; i < sa.samples.size(); i += 997) {
            CHECK(sa.samples[i].features == sb.samples[i].features);
            CHECK(sa.samples[i].label == sb.samples[i].label);
        }
        spec.seed = 6;
        SyntheticSource c(spec);
        const auto sc = materialize(c);
        CHECK(sa.samples[0].features != sc.samples[0].features);
    }
}

TEST_CASE("concept boundaries", "[data]") {
    SECTION("zero-radius circle labels nothing as inside") {
        SyntheticSpec spec;
        spec.family = Family::circle;
        spec.boundary = CircleBoundary{0.5, 0.5, 0.0};
        spec.base_size = 2000;
        spec.replications = 1;
        SyntheticSource source(spec);
        const auto stream = materialize(source);
        for (const Sample& s : stream.samples) CHECK(s.label == 0);
    }
    SECTION("horizontal line at 0.5 splits the square evenly") {
        SyntheticSpec spec;
        spec.family = Family::line;
        spec.boundary = LineBoundary{0.0, 0.5};
        spec.base_size = 50000;
        spec.replications = 1;
        spec.seed = 77;
        SyntheticSource source(spec);
        const auto stream = materialize(source);
        double positives = 0.0;
        for (const Sample& s : stream.samples) positives += s.label;
        CHECK(positives / 50000.0 == Catch::Approx(0.5).margin(0.02));
    }
    SECTION("both sine variants produce both labels") {
        for (Family family : {Family::sine, Family::sineh}) {
            for (int concept_id : {1, 2}) {
                SyntheticSpec spec;
                spec.family = family;
                spec.concept_id = concept_id;
                spec.base_size = 1000;
                spec.replications = 1;
                SyntheticSource source(spec);
                const auto stream = materialize(source);
                int ones = 0;
                for (const Sample& s : stream.samples) ones += s.label;
                CHECK(ones > 100);
                CHECK(ones < 900);
            }
        }
    }
    SECTION("drifted concept pairs disagree on part of the plane") {
        for (Family family : {Family::circle, Family::line, Family::sine, Family::sineh}) {
            const Boundary b1 = default_boundary(family, 1);
            const Boundary b2 = default_boundary(family, 2);
            UniformRng rng(3);
            int disagreements = 0;
            for (int i = 0; i < 5000; ++i) {
                const double x1 = rng.next(), x2 = rng.next();
                const int l1 =
                    std::visit([&](const auto& b) { return b.label(x1, x2); }, b1);
                const int l2 =
                    std::visit([&](const auto& b) { return b.label(x1, x2); }, b2);
                if (l1 != l2) ++disagreements;
            }
            CHECK(disagreements > 0);
        }
    }
}

TEST_CASE("sea generator", "[data]") {
    SECTION("function thresholds") {
        CHECK(sea_threshold(1) == 8.0);
        CHECK(sea_threshold(2) == 9.0);
        CHECK(sea_threshold(3) == 7.0);
        CHECK(sea_threshold(4) == 9.5);
        CHECK_THROWS_AS(sea_threshold(0), std::invalid_argument);
        CHECK_THROWS_AS(sea_threshold(5), std::invalid_argument);
    }
    SECTION("corner points classify as the threshold rule demands") {
        for (int f = 1; f <= 4; ++f) {
            const SeaBoundary b{sea_threshold(f)};
            CHECK(b.label(0.0, 0.0) == 1);
            CHECK(b.label(10.0, 10.0) == 0);
        }
    }
    SECTION("positive rate matches the geometric area for theta=8") {
        auto source = gen_sea(1, 50000, 13);
        const auto stream = materialize(source);
        REQUIRE(stream.samples.size() == 50000);
        double positives = 0.0;
        for (const Sample& s : stream.samples) {
            positives += s.label;
            for (double v : s.features) {
                CHECK(v >= 0.0);
                CHECK(v < 10.0);
            }
        }
        // area of {x + y <= 8} in the 10x10 square is 32 of 100
        CHECK(positives / 50000.0 == Catch::Approx(0.32).margin(0.02));
    }
    SECTION("third attribute carries no label signal") {
        auto source = gen_sea(2, 2000, 14);
        const auto stream = materialize(source);
        for (const Sample& s : stream.samples)
            CHECK(s.label == (s.features[0] + s.features[1] <= 9.0 ? 1 : 0));
    }
}

TEST_CASE("dsv ingestion", "[data]") {
    SECTION("header plus two rows gives a length-2 source") {
        TempFile file("x,y,cls\n0.5,1.5,up\n0.25,2.5,down\n");
        DsvSchema schema;
        schema.path = file.path.string();
        schema.label_col = 2;
        schema.feature_cols = {0, 1};
        schema.has_header = true;
        DsvSource source(schema);
        const auto stream = materialize(source);
        REQUIRE(stream.samples.size() == 2);
        CHECK(stream.samples[0].features == std::vector<double>{0.5, 1.5});
        CHECK(stream.samples[1].features == std::vector<double>{0.25, 2.5});
    }
    SECTION("labels map to dense ids in first-seen order") {
        TempFile file("1,up\n2,down\n3,up\n4,flat\n");
        DsvSchema schema;
        schema.path = file.path.string();
        schema.label_col = 1;
        schema.feature_cols = {0};
        DsvSource source(schema);
        const auto stream = materialize(source);
        CHECK(stream.samples[0].label == 0);
        CHECK(stream.samples[1].label == 1);
        CHECK(stream.samples[2].label == 0);
        CHECK(stream.samples[3].label == 2);
        CHECK(stream.num_classes == 3);
    }
    SECTION("limit truncates the stream") {
        std::string big;
        for (int i = 0; i < 500; ++i) big += std::to_string(i) + ",0\n";
        TempFile file(big);
        DsvSchema schema;
        schema.path = file.path.string();
        schema.label_col = 1;
        schema.feature_cols = {0};
        schema.limit = 123;
        DsvSource source(schema);
        const auto stream = materialize(source);
        CHECK(stream.samples.size() == 123);
    }
    SECTION("nominal feature columns code ordinally") {
        TempFile file("red,1,a\nblue,2,b\nred,3,a\n");
        DsvSchema schema;
        schema.path = file.path.string();
        schema.label_col = 2;
        schema.feature_cols = {0, 1};
        schema.nominal_cols = {0};
        DsvSource source(schema);
        const auto stream = materialize(source);
        CHECK(stream.samples[0].features == std::vector<double>{0.0, 1.0});
        CHECK(stream.samples[1].features == std::vector<double>{1.0, 2.0});
        CHECK(stream.samples[2].features == std::vector<double>{0.0, 3.0});
    }
    SECTION("malformed rows report the line number") {
        TempFile file("0.5,1\nbroken\n");
        DsvSchema schema;
        schema.path = file.path.string();
        schema.label_col = 1;
        schema.feature_cols = {0};
        DsvSource source(schema);
        Sample s;
        CHECK(source.next(s));
        try {
            source.next(s);
            FAIL("expected a parse error");
        } catch (const std::runtime_error& e) {
            CHECK(std::string(e.what()).find("line 2") != std::string::npos);
        }
    }
    SECTION("non-numeric cells in numeric columns name the column") {
        TempFile file("oops,1\n");
        DsvSchema schema;
        schema.path = file.path.string();
        schema.label_col = 1;
        schema.feature_cols = {0};
        DsvSource source(schema);
        Sample s;
        try {
            source.next(s);
            FAIL("expected a parse error");
        } catch (const std::runtime_error& e) {
            CHECK(std::string(e.what()).find("column 0") != std::string::npos);
        }
    }
    SECTION("missing files fail loudly") {
        DsvSchema schema;
        schema.path = "/nonexistent/grfstream.csv";
        schema.label_col = 0;
        schema.feature_cols = {1};
        CHECK_THROWS_AS(DsvSource(schema), std::runtime_error);
    }
    SECTION("alternate delimiters") {
        TempFile file("0.5;2;yes\n");
        DsvSchema schema;
        schema.path = file.path.string();
        schema.label_col = 2;
        schema.feature_cols = {0, 1};
        schema.delimiter = ';';
        DsvSource source(schema);
        const auto stream = materialize(source);
        CHECK(stream.samples[0].features == std::vector<double>{0.5, 2.0});
    }
}
