#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include <dcroots/poly.hpp>

#include <dcroots/sampling.hpp>

using namespace dcroots;

TEST(EvalP, IdealVector) {
    const auto c = CoefficientVector::ideal(5, 0.6);
    EXPECT_NEAR(std::abs(eval_p(0.0, c) - std::pow(0.6, 5)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(eval_p(1.0 - 0.6, c) - 1.0), 0.0, 1e-15);
}

TEST(EvalP, HandProduct) {
    const CoefficientVector c({1.0, 1.0});
    const Complex v = eval_p(Complex{0, 1}, c);
    EXPECT_EQ(v, Complex(0, 2));
}

TEST(EvalDerivative, SmallCases) {
    EXPECT_NEAR(std::abs(eval_dp_dz(0.0, CoefficientVector::ideal(2, 0.3)) - 0.6), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(eval_dp_dz(0.0, CoefficientVector({1.0, 2.0})) - 3.0), 0.0, 1e-15);
}

TEST(EvalDerivative, VanishingFactor) {
    // (z + 1)(z + 2)(z + 3) at z = -2: P' = (z+1)(z+3) = -1
    const CoefficientVector c({1.0, 2.0, 3.0});
    EXPECT_EQ(eval_dp_dz(-2.0, c), Complex(-1.0, 0.0));
    // double factor: (z+1)^2 (z+3) at z = -1 has P' = 0
    EXPECT_EQ(eval_dp_dz(-1.0, CoefficientVector({1.0, 1.0, 3.0})), Complex(0.0, 0.0));
}

TEST(EvalDerivative, MatchesLogDerivativeAndFiniteDifference) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 300; ++trial) {
        const auto c = sample::random_c_any_gamma(rng, sample::random_n(rng, 1, 12), 0.2, 1.5);
        const Complex z = sample::random_point(rng, 2.0);
        const PolyEval pe = eval_p_with_derivative(z, c);
        Complex s{0.0, 0.0};
        for (double ck : c.entries()) s += 1.0 / (z + ck);
        EXPECT_LE(std::abs(pe.dvalue - pe.value * s), 1e-12 * std::abs(pe.value * s) + 1e-300);
        const double h = 1e-6;
        const Complex fd = (eval_p(z + h, c) - eval_p(z - h, c)) / (2.0 * h);
        EXPECT_LE(std::abs(fd - pe.dvalue), 1e-6 * std::abs(pe.dvalue) + 1e-9);
    }
}

TEST(CharPoly, Identities) {
    const CoefficientVector c({0.5, 2.0});  // gamma = 1
    EXPECT_NEAR(std::abs(char_poly_value(0.0, c)), 0.0, 1e-15);
    for (double ck : c.entries()) EXPECT_EQ(char_poly_value(ck, c), Complex(-1.0, 0.0));
    const auto ideal = CoefficientVector::ideal(6, 0.4);
    EXPECT_NEAR(std::abs(char_poly_value(0.4 - 1.0, ideal)), 0.0, 1e-14);
    const Complex lam{0.3, -0.7};
    EXPECT_EQ(char_poly_value(lam, c), eval_p(-lam, c) - 1.0);
}

TEST(Expand, SmallCases) {
    EXPECT_EQ(expand_coefficients(CoefficientVector({1.0, 1.0})), (std::vector<double>{0.0, 2.0, 1.0}));
    EXPECT_EQ(expand_coefficients(CoefficientVector({0.25, 1.0})), (std::vector<double>{-0.75, 1.25, 1.0}));
    const double g = 0.7;
    const auto e = expand_coefficients(CoefficientVector::ideal(3, g));
    ASSERT_EQ(e.size(), 4u);
    EXPECT_NEAR(e[0], g * g * g - 1.0, 1e-15);
    EXPECT_NEAR(e[1], 3 * g * g, 1e-15);
    EXPECT_NEAR(e[2], 3 * g, 1e-15);
    EXPECT_EQ(e[3], 1.0);
}

TEST(Expand, CapacityGuard) {
    EXPECT_NO_THROW(expand_coefficients(CoefficientVector::ideal(64, 0.5)));
    EXPECT_THROW(expand_coefficients(CoefficientVector::ideal(65, 0.5)), CapacityError);
}

TEST(Expand, AgreesWithFactoredForm) {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 200; ++trial) {
        const auto c = sample::random_c_any_gamma(rng, sample::random_n(rng, 1, 12), 0.2, 1.5);
        const auto coeff = expand_coefficients(c);
        for (int k = 0; k < 100; ++k) {
            const Complex z = sample::random_point(rng, 2.0);
            const Complex a = eval_p(z, c) - 1.0;
            const Complex b = horner(coeff, z);
            // relative to the size of the terms being summed
            double scale = 0.0;
            for (std::size_t j = 0; j < coeff.size(); ++j) scale += std::abs(coeff[j]) * std::pow(std::abs(z), j);
            EXPECT_LE(std::abs(a - b), 1e-9 * std::max(std::abs(a), scale * 1e-3));
        }
    }
}

TEST(EvalP, ConjugateSymmetry) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 500; ++trial) {
        const auto c = sample::random_c_any_gamma(rng, sample::random_n(rng, 1, 12), 0.2, 1.5);
        const Complex z = sample::random_point(rng, 2.0);
        const Complex a = eval_p(std::conj(z), c);
        const Complex b = std::conj(eval_p(z, c));
        EXPECT_LE(std::abs(a - b), 1e-14 * std::max(1.0, std::abs(a)));
    }
}

TEST(EvalP, IncreasingOnPositiveAxis) {
    std::mt19937_64 rng(24);
    for (int trial = 0; trial < 100; ++trial) {
        const auto c = sample::random_c_any_gamma(rng, sample::random_n(rng, 1, 12), 0.2, 1.5);
        double prev = eval_p(0.0, c).real();
        for (int k = 1; k <= 400; ++k) {
            const double v = eval_p(0.005 * k, c).real();
            EXPECT_GT(v, prev);
            prev = v;
        }
    }
}

TEST(ScaledResidual, BoundedByRaw) {
    const auto c = CoefficientVector({1e-12, 1.0, 1e12});
    const Complex z{-1e12, 0.0};
    EXPECT_LE(scaled_residual(z, c), std::abs(eval_p(z, c) - 1.0));
    EXPECT_LE(scaled_residual(z, c), 1.0);
}
