#include "margulis/errors.hpp"
#include "margulis/lorentz.hpp"
#include "margulis/sampling.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace margulis;

namespace {

void expect_near(const MinkVec& a, const MinkVec& b, double tol) {
    EXPECT_NEAR(a.c1, b.c1, tol);
    EXPECT_NEAR(a.c2, b.c2, tol);
    EXPECT_NEAR(a.c3, b.c3, tol);
}

}  // namespace

TEST(MinkowskiDot, BasisNorms) {
    EXPECT_EQ(minkowski_dot(x1, x1), 1.0);
    EXPECT_EQ(minkowski_dot(x2, x2), 1.0);
    EXPECT_EQ(minkowski_dot(x3, x3), -1.0);
    EXPECT_EQ(minkowski_dot({1, 2, 2}, {1, 2, 2}), 1.0);
}

TEST(MinkowskiDot, SymmetricBilinear) {
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        const MinkVec u = random_vec(rng), v = random_vec(rng), w = random_vec(rng);
        std::uniform_real_distribution<double> U(-3, 3);
        const double s = U(rng), t = U(rng);
        EXPECT_DOUBLE_EQ(minkowski_dot(u, v), minkowski_dot(v, u));
        const double lhs = minkowski_dot(s * u + t * v, w);
        const double rhs = s * minkowski_dot(u, w) + t * minkowski_dot(v, w);
        EXPECT_NEAR(lhs, rhs, 1e-12 * (1 + std::abs(lhs)));
    }
}

TEST(BracketCross, BasisValues) {
    expect_near(bracket_cross(x1, x2), 2.0 * x3, 1e-15);
    expect_near(bracket_cross(x2, x3), -2.0 * x1, 1e-15);
    expect_near(bracket_cross(x2, x3), oracle::matrix_bracket(x2, x3), 1e-14);
    const MinkVec v{0.3, -1.2, 0.7};
    EXPECT_TRUE(bracket_cross(v, v).is_zero());
}

TEST(BracketCross, MatchesMatrixCommutator) {
    Rng rng(12);
    for (int i = 0; i < 500; ++i) {
        const MinkVec u = random_vec(rng), v = random_vec(rng);
        const MinkVec a = bracket_cross(u, v), b = oracle::matrix_bracket(u, v);
        expect_near(a, b, 1e-12 * (1 + b.euclidean_norm()));
    }
}

TEST(BracketCross, TripleProductAntisymmetric) {
    Rng rng(13);
    for (int i = 0; i < 500; ++i) {
        const MinkVec u = random_vec(rng), v = random_vec(rng), w = random_vec(rng);
        const double t = minkowski_dot(bracket_cross(u, v), w);
        const double scale = 1e-12 * (1 + std::abs(t));
        EXPECT_NEAR(t, minkowski_dot(bracket_cross(v, w), u), scale);
        EXPECT_NEAR(t, minkowski_dot(bracket_cross(w, u), v), scale);
        EXPECT_NEAR(t, -minkowski_dot(bracket_cross(v, u), w), scale);
        EXPECT_NEAR(t, -2.0 * determinant(u, v, w), scale);
    }
}

TEST(CausalClassify, Examples) {
    EXPECT_EQ(causal_classify(x1), CausalClass::Spacelike);
    EXPECT_EQ(causal_classify({1, 0, 1}), CausalClass::NullFuture);
    EXPECT_EQ(causal_classify({0, 1, -1}), CausalClass::NullPast);
    EXPECT_EQ(causal_classify(x3), CausalClass::TimelikeFuture);
    EXPECT_EQ(causal_classify(-x3), CausalClass::TimelikePast);
    EXPECT_EQ(causal_classify({}), CausalClass::Zero);
}

TEST(CausalClassify, NegationFlipsTimeOrientation) {
    Rng rng(14);
    auto flip = [](CausalClass c) {
        switch (c) {
            case CausalClass::NullFuture: return CausalClass::NullPast;
            case CausalClass::NullPast: return CausalClass::NullFuture;
            case CausalClass::TimelikeFuture: return CausalClass::TimelikePast;
            case CausalClass::TimelikePast: return CausalClass::TimelikeFuture;
            default: return c;
        }
    };
    for (int i = 0; i < 500; ++i) {
        const MinkVec v = random_vec(rng);
        EXPECT_EQ(causal_classify(-v), flip(causal_classify(v)));
    }
    EXPECT_EQ(causal_classify(MinkVec{-1, 0, -1}), CausalClass::NullPast);
}

TEST(CausalClassify, UntimeableNullIsDegenerate) {
    // Null within a wide band while c3 is inside the band too.
    EXPECT_THROW(causal_classify({1, 0, 0.1}, 0.99), DegenerateError);
}

TEST(UhpEmbed, SubstitutionValues) {
    auto closed = [](double x, double y) {
        return MinkVec{(1 - x * x - y * y) / (2 * y), x / y, (1 + x * x + y * y) / (2 * y)};
    };
    expect_near(uhp_embed(0, 1), {0, 0, 1}, 1e-15);
    expect_near(uhp_embed(1, 1), {-0.5, 1, 1.5}, 1e-15);
    expect_near(uhp_embed(0, 2), {-0.75, 0, 1.25}, 1e-15);
    expect_near(uhp_embed(0.3, 0.7), closed(0.3, 0.7), 1e-14);
    EXPECT_THROW(uhp_embed(0, 0), DomainError);
    EXPECT_THROW(uhp_embed(0, -1), DomainError);
}

TEST(UhpEmbed, LandsOnFutureHyperboloid) {
    Rng rng(15);
    std::uniform_real_distribution<double> logY(std::log(1e-3), std::log(1e3));
    // |v|^2 stays below 1e10 here; beyond that a relative tolerance of 1e-10
    // cannot separate v.v = -1 from zero.
    std::uniform_real_distribution<double> X(-10, 10);
    for (int i = 0; i < 10000; ++i) {
        const double y = std::exp(logY(rng));
        const MinkVec v = uhp_embed(X(rng), y);
        // Relative to the size of the point, which grows like 1/y or x^2/y.
        EXPECT_NEAR(minkowski_dot(v, v), -1.0, 1e-12 * v.c3 * v.c3);
        EXPECT_EQ(causal_classify(v), CausalClass::TimelikeFuture);
    }
}

TEST(Orientation, Signs) {
    EXPECT_EQ(orientation_sign(x1, x2, x3), 1);
    EXPECT_EQ(orientation_sign(x2, x1, x3), -1);
    EXPECT_EQ(orientation_sign(x1, x1, x3), 0);
}

TEST(Sl2View, RoundTripAgainstLiteralMatrices) {
    Rng rng(16);
    for (int i = 0; i < 100; ++i) {
        const MinkVec v = random_vec(rng);
        const Eigen::Matrix2d m = to_sl2(v);
        expect_near(oracle::expand(m), v, 1e-14);
        expect_near(from_sl2(m), v, 1e-14);
        // U^2 = (u.u) I
        const Eigen::Matrix2d sq = m * m;
        EXPECT_NEAR((sq - minkowski_dot(v, v) * Eigen::Matrix2d::Identity()).norm(), 0.0, 1e-12);
    }
}

TEST(LorentzNormalize, UnitAndNullRejected) {
    EXPECT_NEAR(minkowski_dot(lorentz_normalize({3, 4, 1}), lorentz_normalize({3, 4, 1})), 1.0, 1e-15);
    EXPECT_NEAR(minkowski_dot(lorentz_normalize({0, 1, 3}), lorentz_normalize({0, 1, 3})), -1.0, 1e-15);
    EXPECT_THROW(lorentz_normalize({1, 0, 1}), DomainError);
}
