#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "framekit/errors.hpp"
#include "framekit/types.hpp"
#include "oracles.hpp"

using framekit::Complex;
using framekit::Tolerances;
using framekit::ValidationError;
using framekit::Vector;
using framekit::VectorSequence;

namespace {

Vector v2(Complex a, Complex b) {
    Vector v(2);
    v << a, b;
    return v;
}

} // namespace

TEST_CASE("default tolerances are valid and expose the threshold formula") {
    Tolerances tol;
    CHECK_NOTHROW(tol.validate());
    CHECK(tol.rank_rtol == doctest::Approx(1e-10));
    CHECK(tol.rank_atol == doctest::Approx(1e-12));
    CHECK(tol.verify_tol == doctest::Approx(1e-8));
    CHECK(tol.bound_slack == doctest::Approx(1e-10));
    CHECK(tol.rank_threshold(2.0) == doctest::Approx(2e-10 + 1e-12));
}

TEST_CASE("tolerances outside (0, 1e-2] are rejected") {
    Tolerances zero;
    zero.rank_rtol = 0.0;
    CHECK_THROWS_AS(zero.validate(), ValidationError);

    Tolerances negative;
    negative.verify_tol = -1e-9;
    CHECK_THROWS_AS(negative.validate(), ValidationError);

    Tolerances huge;
    huge.bound_slack = 0.5;
    CHECK_THROWS_AS(huge.validate(), ValidationError);

    Tolerances atol_huge;
    atol_huge.rank_atol = 0.02;
    CHECK_THROWS_AS(atol_huge.validate(), ValidationError);
}

TEST_CASE("make_sequence validates dimensions and preserves order") {
    const VectorSequence seq =
        framekit::make_sequence(2, {v2(1.0, 0.0), v2(0.0, 1.0)});
    CHECK(seq.dim() == 2);
    CHECK(seq.size() == 2);
    CHECK(seq[0](0) == Complex(1.0, 0.0));
    CHECK(seq[1](1) == Complex(1.0, 0.0));
}

TEST_CASE("make_sequence names the offending index") {
    Vector wrong(3);
    wrong << 1.0, 0.0, 0.0;
    try {
        framekit::make_sequence(2, {v2(1.0, 0.0), wrong});
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        REQUIRE(e.index().has_value());
        CHECK(*e.index() == 1);
        CHECK(std::string(e.what()).find("1") != std::string::npos);
    }
}

TEST_CASE("empty sequences are legal, zero dimension is not") {
    const VectorSequence empty = framekit::make_sequence(3, {});
    CHECK(empty.empty());
    CHECK(empty.dim() == 3);
    CHECK_THROWS_AS(framekit::make_sequence(0, {}), ValidationError);
}

TEST_CASE("analysis matrix rows are conjugated vectors") {
    SUBCASE("orthonormal basis gives the identity") {
        const VectorSequence seq =
            framekit::make_sequence(2, {v2(1.0, 0.0), v2(0.0, 1.0)});
        const framekit::AnalysisMatrix u = framekit::analysis_matrix(seq);
        CHECK((u.entries - framekit::Matrix::Identity(2, 2)).norm() == 0.0);
    }
    SUBCASE("a purely imaginary coordinate is conjugated") {
        const VectorSequence seq =
            framekit::make_sequence(2, {v2(0.0, Complex(0.0, 1.0))});
        const framekit::AnalysisMatrix u = framekit::analysis_matrix(seq);
        CHECK(u.entries(0, 0) == Complex(0.0, 0.0));
        CHECK(u.entries(0, 1) == Complex(0.0, -1.0));
    }
    SUBCASE("repeated-first pattern at dimension 2") {
        const VectorSequence seq = framekit::make_sequence(
            2, {v2(1.0, 0.0), v2(1.0, 0.0), v2(0.0, 1.0)});
        const framekit::AnalysisMatrix u = framekit::analysis_matrix(seq);
        CHECK(u.count() == 3);
        CHECK(u.entries(0, 0) == Complex(1.0, 0.0));
        CHECK(u.entries(1, 0) == Complex(1.0, 0.0));
        CHECK(u.entries(2, 1) == Complex(1.0, 0.0));
    }
}

TEST_CASE("adjoint applied to basis vectors returns the sequence exactly") {
    std::mt19937_64 rng(7);
    const VectorSequence seq = oracle::random_sequence(rng, 5, 9);
    const framekit::AnalysisMatrix u = framekit::analysis_matrix(seq);
    const framekit::Matrix synthesis = u.synthesis();
    for (std::size_t i = 0; i < seq.size(); ++i) {
        CHECK((synthesis.col(static_cast<Eigen::Index>(i)) - seq[i]).norm() == 0.0);
    }
}

TEST_CASE("analysis application matches the inner product convention") {
    std::mt19937_64 rng(11);
    const VectorSequence seq = oracle::random_sequence(rng, 4, 6);
    const framekit::AnalysisMatrix u = framekit::analysis_matrix(seq);
    const Vector x = oracle::random_vector(rng, 4);
    const Vector coeffs = u.apply(x);
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const Complex expected = oracle::inner(x, seq[i]);
        CHECK(std::abs(coeffs(static_cast<Eigen::Index>(i)) - expected) <= 1e-13);
    }
}

TEST_CASE("analysis acts linearly") {
    std::mt19937_64 rng(13);
    const VectorSequence seq = oracle::random_sequence(rng, 6, 10);
    const framekit::AnalysisMatrix u = framekit::analysis_matrix(seq);
    const Vector x = oracle::random_vector(rng, 6);
    const Complex alpha(0.3, -1.7);
    CHECK((u.apply(alpha * x) - alpha * u.apply(x)).norm() <= 1e-8);
}

TEST_CASE("sequence round trips through the analysis matrix exactly") {
    std::mt19937_64 rng(17);
    const VectorSequence seq = oracle::random_sequence(rng, 3, 7);
    const VectorSequence back =
        framekit::sequence_from_analysis(framekit::analysis_matrix(seq));
    REQUIRE(back.size() == seq.size());
    CHECK(back.dim() == seq.dim());
    for (std::size_t i = 0; i < seq.size(); ++i) {
        CHECK((back[i] - seq[i]).norm() == 0.0);
    }
}

TEST_CASE("synthesis matrix columns are the vectors") {
    const VectorSequence seq = framekit::make_sequence(
        2, {v2(1.0, 0.0), v2(Complex(0.0, 2.0), 1.0)});
    const framekit::Matrix t = seq.synthesis_matrix();
    CHECK(t.rows() == 2);
    CHECK(t.cols() == 2);
    CHECK(t(0, 1) == Complex(0.0, 2.0));
    CHECK(t(1, 1) == Complex(1.0, 0.0));
}

TEST_CASE("subspace projection is phase invariant and idempotent") {
    framekit::SubspaceBasis basis;
    basis.dim = 2;
    basis.basis.push_back(v2(Complex(0.0, 1.0), 0.0)); // i*e1, same span as e1

    const Vector x = v2(Complex(3.0, -2.0), Complex(1.0, 1.0));
    const Vector p = basis.project(x);
    CHECK(std::abs(p(0) - x(0)) <= 1e-14);
    CHECK(std::abs(p(1)) <= 1e-14);
    CHECK((basis.project(p) - p).norm() <= 1e-14);
}

TEST_CASE("extension placement prepends") {
    const VectorSequence seq = framekit::make_sequence(2, {v2(1.0, 0.0)});
    framekit::Extension ext;
    ext.added.push_back(v2(0.0, 5.0));
    ext.k_minimal = 1;
    const VectorSequence extended = framekit::apply_extension(ext, seq);
    REQUIRE(extended.size() == 2);
    CHECK(extended[0](1) == Complex(5.0, 0.0));
    CHECK(extended[1](0) == Complex(1.0, 0.0));
}

TEST_CASE("extension vectors are validated against the ambient dimension") {
    const VectorSequence seq = framekit::make_sequence(2, {v2(1.0, 0.0)});
    framekit::Extension ext;
    Vector wrong(3);
    wrong << 1.0, 2.0, 3.0;
    ext.added.push_back(wrong);
    CHECK_THROWS_AS(framekit::apply_extension(ext, seq), ValidationError);
}
