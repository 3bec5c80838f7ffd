#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <string>

#include "framekit/errors.hpp"
#include "framekit/io.hpp"
#include "oracles.hpp"

using framekit::Complex;
using framekit::OrderedJson;
using framekit::Vector;
using framekit::VectorSequence;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(std::string name) : path(std::move(name)) {}
    ~TempFile() { std::remove(path.c_str()); }
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

VectorSequence awkward_sequence() {
    Vector a(2), b(2), c(2);
    a << Complex(1.0 / 3.0, -2.5e-13), Complex(0.0, 1.0);
    b << Complex(-7.25, 0.1), Complex(3.0, -1.0 / 7.0);
    c << Complex(0.0, 0.0), Complex(1e17, -1e-17);
    return framekit::make_sequence(2, {a, b, c});
}

} // namespace

TEST_CASE("CSV round trip preserves every bit") {
    TempFile file("io_roundtrip.csv");
    const VectorSequence seq = awkward_sequence();
    framekit::save_sequence(file.path, seq);
    const VectorSequence back = framekit::load_sequence(file.path);
    REQUIRE(back.size() == seq.size());
    REQUIRE(back.dim() == seq.dim());
    for (std::size_t i = 0; i < seq.size(); ++i) {
        CHECK((back[i] - seq[i]).norm() == 0.0);
    }
}

TEST_CASE("CSV parsing") {
    SUBCASE("blank lines and CRLF endings are tolerated") {
        TempFile file("io_crlf.csv");
        write_text(file.path, "1.0,0.0,0.0,0.0\r\n\n   \n0.0,0.0,1.0,0.0\r\n");
        const VectorSequence seq = framekit::load_sequence(file.path);
        CHECK(seq.size() == 2);
        CHECK(seq.dim() == 2);
        CHECK(seq[1](1) == Complex(1.0, 0.0));
    }
    SUBCASE("odd column counts are rejected with the line number") {
        TempFile file("io_odd.csv");
        write_text(file.path, "1.0,0.0\n0.5,0.5,0.25\n");
        try {
            framekit::load_sequence(file.path);
            FAIL("expected ValidationError");
        } catch (const framekit::ValidationError& e) {
            const std::string what = e.what();
            CHECK(what.find("line 2") != std::string::npos);
            CHECK(what.find("odd") != std::string::npos);
        }
    }
    SUBCASE("width changes are rejected with the line number") {
        TempFile file("io_width.csv");
        write_text(file.path, "1.0,0.0\n1.0,0.0,2.0,0.0\n");
        try {
            framekit::load_sequence(file.path);
            FAIL("expected ValidationError");
        } catch (const framekit::ValidationError& e) {
            CHECK(std::string(e.what()).find("line 2") != std::string::npos);
        }
    }
    SUBCASE("unparsable tokens are rejected") {
        TempFile file("io_garbage.csv");
        write_text(file.path, "1.0,zebra\n");
        try {
            framekit::load_sequence(file.path);
            FAIL("expected ValidationError");
        } catch (const framekit::ValidationError& e) {
            const std::string what = e.what();
            CHECK(what.find("line 1") != std::string::npos);
            CHECK(what.find("zebra") != std::string::npos);
        }
    }
    SUBCASE("non-finite values are rejected") {
        TempFile file("io_inf.csv");
        write_text(file.path, "inf,0.0\n");
        CHECK_THROWS_AS(framekit::load_sequence(file.path),
                        framekit::ValidationError);
    }
    SUBCASE("a file with no data lines is rejected") {
        TempFile file("io_empty.csv");
        write_text(file.path, "\n  \n");
        try {
            framekit::load_sequence(file.path);
            FAIL("expected ValidationError");
        } catch (const framekit::ValidationError& e) {
            CHECK(std::string(e.what()).find("no data lines") != std::string::npos);
        }
    }
    SUBCASE("missing files are reported by name") {
        try {
            framekit::load_sequence("no_such_file_anywhere.csv");
            FAIL("expected ValidationError");
        } catch (const framekit::ValidationError& e) {
            CHECK(std::string(e.what()).find("no_such_file_anywhere.csv") !=
                  std::string::npos);
        }
    }
}

TEST_CASE("JSON sequence round trip and validation") {
    SUBCASE("round trip through a .json file") {
        TempFile file("io_roundtrip.json");
        const VectorSequence seq = awkward_sequence();
        framekit::save_sequence(file.path, seq);
        const VectorSequence back = framekit::load_sequence(file.path);
        REQUIRE(back.size() == seq.size());
        for (std::size_t i = 0; i < seq.size(); ++i) {
            CHECK((back[i] - seq[i]).norm() == 0.0);
        }
    }
    SUBCASE("an empty sequence keeps its dimension") {
        TempFile file("io_empty_seq.json");
        framekit::save_sequence(file.path, framekit::make_sequence(4, {}));
        const VectorSequence back = framekit::load_sequence(file.path);
        CHECK(back.dim() == 4);
        CHECK(back.empty());
    }
    SUBCASE("malformed JSON text reports a parse error") {
        TempFile file("io_broken.json");
        write_text(file.path, "{\"dim\": 2, \"vectors\": [");
        try {
            framekit::load_sequence(file.path);
            FAIL("expected ValidationError");
        } catch (const framekit::ValidationError& e) {
            CHECK(std::string(e.what()).find("parse error") != std::string::npos);
        }
    }
    SUBCASE("structural mistakes are reported by field path") {
        CHECK_THROWS_WITH_AS(
            framekit::sequence_from_json(OrderedJson::parse("[1,2]")),
            "sequence document must be a JSON object", framekit::ValidationError);
        CHECK_THROWS_WITH_AS(
            framekit::sequence_from_json(OrderedJson::parse("{\"vectors\": []}")),
            "field 'dim' must be an integer", framekit::ValidationError);
        CHECK_THROWS_WITH_AS(
            framekit::sequence_from_json(
                OrderedJson::parse("{\"dim\": 0, \"vectors\": []}")),
            "field 'dim' must be positive", framekit::ValidationError);
        CHECK_THROWS_WITH_AS(
            framekit::sequence_from_json(OrderedJson::parse("{\"dim\": 2}")),
            "field 'vectors' must be an array", framekit::ValidationError);
        try {
            framekit::sequence_from_json(OrderedJson::parse(
                "{\"dim\": 2, \"vectors\": [[[1,0],[0,0]], [[1,0]]]}"));
            FAIL("expected ValidationError");
        } catch (const framekit::ValidationError& e) {
            CHECK(std::string(e.what()).find("vectors[1]") != std::string::npos);
        }
        try {
            framekit::sequence_from_json(OrderedJson::parse(
                "{\"dim\": 1, \"vectors\": [[[1,\"x\"]]]}"));
            FAIL("expected ValidationError");
        } catch (const framekit::ValidationError& e) {
            CHECK(std::string(e.what()).find("vectors[0][0][1]") != std::string::npos);
        }
    }
}

TEST_CASE("deterministic rendering") {
    SUBCASE("identical values render byte-identically") {
        const VectorSequence seq = awkward_sequence();
        const std::string once = framekit::dump_report(framekit::sequence_to_json(seq));
        const std::string twice = framekit::dump_report(framekit::sequence_to_json(seq));
        CHECK(once == twice);
    }
    SUBCASE("floats carry 17 significant digits") {
        OrderedJson doc = OrderedJson::object();
        doc["third"] = 1.0 / 3.0;
        doc["tenth"] = 0.1;
        const std::string text = framekit::dump_report(doc);
        CHECK(text.find("0.33333333333333331") != std::string::npos);
        CHECK(text.find("0.10000000000000001") != std::string::npos);
    }
    SUBCASE("objects keep insertion order with two-space indentation") {
        framekit::SequenceDiagnostics diag =
            framekit::diagnostics(awkward_sequence());
        const std::string text = framekit::dump_report(framekit::to_json(diag));
        const std::size_t p_bounds = text.find("\"bounds\"");
        const std::size_t p_rank = text.find("\"rank\"");
        const std::size_t p_deficit = text.find("\"deficit\"");
        const std::size_t p_excess = text.find("\"excess\"");
        REQUIRE(p_bounds != std::string::npos);
        CHECK(p_bounds < p_rank);
        CHECK(p_rank < p_deficit);
        CHECK(p_deficit < p_excess);
        CHECK(text.find("{\n  \"bounds\": {\n    \"lower\"") == 0);
    }
    SUBCASE("empty containers render compactly") {
        OrderedJson doc = OrderedJson::object();
        doc["a"] = OrderedJson::object();
        doc["b"] = OrderedJson::array();
        CHECK(framekit::dump_report(doc) == "{\n  \"a\": {},\n  \"b\": []\n}");
    }
}

TEST_CASE("run report rendering") {
    framekit::RunReport report;
    report.command = "analyze";
    report.inputs["file"] = "input.csv";
    report.payload = OrderedJson(nullptr);
    report.exit_code = 2;
    const std::string text = framekit::render_run_report(report);
    const std::size_t p_command = text.find("\"command\"");
    const std::size_t p_inputs = text.find("\"inputs\"");
    const std::size_t p_tol = text.find("\"tolerances\"");
    const std::size_t p_payload = text.find("\"payload\"");
    const std::size_t p_exit = text.find("\"exit_code\"");
    CHECK(p_command < p_inputs);
    CHECK(p_inputs < p_tol);
    CHECK(p_tol < p_payload);
    CHECK(p_payload < p_exit);
    CHECK(text.find("\"payload\": null") != std::string::npos);
    CHECK(text.find("\"exit_code\": 2") != std::string::npos);
    // %g trims trailing zeros, so 1e-10 renders short while atol keeps 17 digits.
    CHECK(text.find("\"rank_rtol\": 1e-10") != std::string::npos);
    CHECK(text.find("\"rank_atol\": 9.9999999999999998e-13") != std::string::npos);
}

TEST_CASE("extension serialization") {
    framekit::Extension ext;
    Vector added(2);
    added << Complex(0.0, 0.0), Complex(0.5, -0.5);
    ext.added.push_back(added);
    ext.k_minimal = 1;

    SUBCASE("JSON form carries placement and the minimal count") {
        const OrderedJson doc = framekit::extension_to_json(ext, 2);
        CHECK(doc["dim"] == 2);
        CHECK(doc["placement"] == "prepended");
        CHECK(doc["k_minimal"] == 1);
        CHECK(doc["vectors"].size() == 1);
    }
    SUBCASE("CSV form writes the bare added vectors") {
        TempFile file("io_extension.csv");
        framekit::save_extension(file.path, ext, 2);
        const VectorSequence back = framekit::load_sequence(file.path);
        REQUIRE(back.size() == 1);
        CHECK((back[0] - added).norm() == 0.0);
    }
    SUBCASE("JSON file form loads back as a plain sequence of added vectors") {
        TempFile file("io_extension.json");
        framekit::save_extension(file.path, ext, 2);
        const VectorSequence back = framekit::load_sequence(file.path);
        REQUIRE(back.size() == 1);
        CHECK((back[0] - added).norm() == 0.0);
    }
}

TEST_CASE("report payload serializers keep their documented shapes") {
    SUBCASE("defect series verdict strings") {
        framekit::DefectSeriesReport report;
        report.upper_bound = 2.0;
        report.schedule = {1, 2};
        report.partial_sums = {1.0, 2.0};
        report.growing = true;
        const OrderedJson doc = framekit::to_json(report);
        CHECK(doc["verdict"] == "growing");
        report.growing = false;
        CHECK(framekit::to_json(report)["verdict"] == "bounded");
    }
    SUBCASE("extendability verdict strings") {
        framekit::ExtendabilityReport report;
        framekit::ExtendabilityRow row;
        row.truncation = 4;
        row.sigma_min = 0.5;
        report.rows.push_back(row);
        OrderedJson doc = framekit::to_json(report);
        CHECK(doc["verdict"] == "extendable-trend");
        CHECK(doc["schedule"][0] == 4);
        CHECK(doc["per_N"][0]["N"] == 4);
        report.non_extendable_trend = true;
        CHECK(framekit::to_json(report)["verdict"] == "non-extendable-trend");
    }
    SUBCASE("duality rows pair the two defects under each truncation") {
        const framekit::DualityReport report = framekit::essential_duality_diagnostic(
            framekit::GeneratorKind::Onb, framekit::GeneratorKind::Onb, {2, 4});
        const OrderedJson doc = framekit::to_json(report);
        CHECK(doc["classification"] == "finite-rank-stable");
        REQUIRE(doc["per_N"].size() == 2);
        CHECK(doc["per_N"][1]["N"] == 4);
        CHECK(doc["per_N"][1]["left_defect"]["rank"] == 0);
        CHECK(doc["per_N"][1]["right_defect"].contains("median"));
    }
}
