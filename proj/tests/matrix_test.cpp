#include <gtest/gtest.h>

#include "gch/harness.hpp"
#include "gch/matrix.hpp"

using namespace gch;

namespace {

const AlgebraConfig kCfg = algebra_e(8);

Element gen(int i) { return Element::generator(kCfg, i); }
Element sc(int v) { return Element::scalar(kCfg, v); }

} // namespace

TEST(Matrix, ConstructionAndIndexing) {
    Matrix m(2, kCfg);
    EXPECT_TRUE(m.is_zero());
    m.at(0, 1) = gen(1);
    EXPECT_EQ(m.at(0, 1), gen(1));
    EXPECT_THROW(m.at(2, 0), std::out_of_range);
    EXPECT_THROW(Matrix(0, kCfg), std::invalid_argument);
    EXPECT_THROW(Matrix::from_rows(kCfg, {{gen(1)}, {gen(2)}}), std::invalid_argument);
}

TEST(Matrix, RingOperations) {
    const Matrix i2 = Matrix::identity(2, kCfg);
    const Matrix m = Matrix::from_rows(kCfg, {{sc(0), gen(1)}, {gen(2), sc(0)}});

    EXPECT_EQ(i2 * m, m);
    EXPECT_EQ(m * i2, m);
    EXPECT_EQ(m + (-m), Matrix(2, kCfg));
    EXPECT_TRUE((Element::zero(kCfg) * m).is_zero());

    const Matrix m2 = pow(m, 2);
    const Element v12 = gen(1) * gen(2);
    EXPECT_EQ(m2.at(0, 0), v12);
    EXPECT_EQ(m2.at(1, 1), -v12);
    EXPECT_TRUE(m2.at(0, 1).is_zero());
    EXPECT_TRUE(m2.at(1, 0).is_zero());
}

TEST(Matrix, PowConsistency) {
    Rng rng(trial_stream_seed(201, 0));
    const Matrix m = random_homogeneous_matrix(3, Parity::even, 8, 2, 2, rng);
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; j <= 2; ++j) EXPECT_EQ(pow(m, i + j), pow(m, i) * pow(m, j));
    EXPECT_EQ(pow(m, 0), Matrix::identity(3, kCfg));
    EXPECT_THROW(pow(m, -1), std::invalid_argument);
}

TEST(Matrix, TraceLinearityAndCyclicity) {
    EXPECT_EQ(trace(Matrix::identity(3, kCfg)), sc(3));

    const Matrix b = Matrix::from_rows(kCfg, {{gen(1), gen(2)}, {gen(3), -gen(1)}});
    EXPECT_TRUE(trace(b).is_zero());

    Rng rng(trial_stream_seed(202, 0));
    for (int trial = 0; trial < 15; ++trial) {
        const Matrix x = random_homogeneous_matrix(2, Parity::odd, 8, 3, 2, rng);
        const Matrix y = random_homogeneous_matrix(2, Parity::even, 8, 2, 2, rng);
        EXPECT_EQ(trace(x + y), trace(x) + trace(y));

        const Element lambda = Element::scalar(kCfg, Rational(3, 2)) + gen(1) * gen(2);
        EXPECT_EQ(trace(lambda * x), lambda * trace(x));

        // tr(XA) = tr(AX) for even A, and tr(A^r B A^s) depends only on r+s
        EXPECT_EQ(trace(x * y), trace(y * x));
        EXPECT_EQ(trace(y * x * pow(y, 2)), trace(pow(y, 3) * x));
    }
}

TEST(Matrix, TracePatternedCubeIsScalar) {
    const Matrix b = Matrix::from_rows(kCfg, {{gen(1), gen(2)}, {gen(3), -gen(1)}});
    const Element v123 = gen(1) * gen(2) * gen(3);
    EXPECT_EQ(trace(pow(b, 3)), Rational(6) * v123);
    EXPECT_EQ(pow(b, 3), (Rational(3) * v123) * Matrix::identity(2, kCfg));
}

TEST(Matrix, ParityClassification) {
    EXPECT_EQ(parity_of(Matrix::identity(2, kCfg)), Parity::even);
    EXPECT_EQ(parity_of(Matrix(2, kCfg)), Parity::zero);
    EXPECT_EQ(parity_of(Matrix::from_rows(kCfg, {{sc(0), gen(1)}, {gen(2), sc(0)}})), Parity::odd);
    EXPECT_EQ(parity_of(Matrix::from_rows(kCfg, {{sc(1), gen(1)}, {sc(0), sc(0)}})), Parity::mixed);
}

TEST(Matrix, ParityAlgebraOnRandomHomogeneousMatrices) {
    Rng rng(trial_stream_seed(203, 0));
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix e1 = random_homogeneous_matrix(2, Parity::even, 8, 2, 2, rng);
        const Matrix e2 = random_homogeneous_matrix(2, Parity::even, 8, 2, 2, rng);
        const Matrix o1 = random_homogeneous_matrix(2, Parity::odd, 8, 3, 2, rng);
        const Matrix o2 = random_homogeneous_matrix(2, Parity::odd, 8, 3, 2, rng);
        EXPECT_TRUE(is_even_or_zero(parity_of(e1 * e2)));
        EXPECT_TRUE(is_even_or_zero(parity_of(o1 * o2)));
        EXPECT_TRUE(is_odd_or_zero(parity_of(e1 * o1)));
        EXPECT_TRUE(is_odd_or_zero(parity_of(o1 * e1)));
    }
}

TEST(Matrix, MismatchErrors) {
    const Matrix m2(2, kCfg), m3(3, kCfg);
    EXPECT_THROW(m2 + m3, std::invalid_argument);
    EXPECT_THROW(m2 * m3, std::invalid_argument);
    const Matrix other(2, algebra_e(4));
    EXPECT_THROW(m2 + other, std::invalid_argument);
    EXPECT_THROW(Element::generator(algebra_e(4), 1) * m2, std::invalid_argument);
}

TEST(Matrix, JsonRoundTrip) {
    const Matrix m = Matrix::from_rows(
        kCfg, {{sc(1) + gen(1) * gen(2), Rational(-3, 2) * gen(3)}, {Element::zero(kCfg), gen(1)}});
    const nlohmann::ordered_json j = matrix_to_json(m);
    EXPECT_EQ(j["n"], 2);
    EXPECT_EQ(matrix_from_json(kCfg, j), m);

    EXPECT_THROW(matrix_from_json(kCfg, nlohmann::json::parse(R"({"n":2,"entries":[]})")),
                 std::invalid_argument);
    EXPECT_THROW(matrix_from_json(kCfg, nlohmann::json::parse("{}")), std::invalid_argument);
}
