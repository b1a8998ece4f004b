#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include <dcroots/eigencount.hpp>
#include <dcroots/extremal.hpp>
#include <dcroots/oracle.hpp>

using namespace dcroots;

TEST(ExtensionRecipe, FiveHalf) {
    const auto r = extension_recipe(5, 0.5, CoefficientVector::ideal(3, 0.5));
    EXPECT_EQ(r.b, std::vector<double>{1.0});
    EXPECT_EQ(r.mults, std::vector<int>{3});
    EXPECT_DOUBLE_EQ(r.beta_sep, 0.25);
    EXPECT_DOUBLE_EQ(r.G, 2.0);
    EXPECT_NEAR(r.M, 65536.0, 1e-9);
    EXPECT_NEAR(r.A, 65536.0, 1e-9);
}

TEST(ExtensionRecipe, Invariants) {
    const auto interior = CoefficientVector({0.1, 0.3, 0.3, 0.7, 2.0});
    const auto r = extension_recipe(7, 0.4, interior);
    EXPECT_EQ(r.mults, (std::vector<int>{1, 2, 1, 1}));
    EXPECT_NEAR(r.log_b_power() + std::log(r.M) - std::log(r.A), 0.0, 1e-12);
    double min_gap = r.b.front() / 2.0;
    for (std::size_t j = 1; j < r.b.size(); ++j) min_gap = std::min(min_gap, r.b[j] - r.b[j - 1]);
    EXPECT_LE(2.0 * r.beta_sep, min_gap * (1.0 + 1e-15));
    const double bound = 8.0 * std::max(r.b.back(), std::pow(r.G, 7) / std::pow(r.beta_sep, 6));
    EXPECT_GE(r.M, bound * (1.0 - 1e-12));
    EXPECT_NEAR(r.vector().gamma(), 0.4, 1e-12 * 0.4);
    EXPECT_THROW(extension_recipe(7, 0.4, CoefficientVector({0.5})), DomainError);
}

TEST(ConstructNuOne, SmallNReturnsIdeal) {
    const auto res = construct_nu_one_detailed(4, 0.5);
    EXPECT_TRUE(res.c.is_ideal());
    EXPECT_FALSE(res.recipe.has_value());
    EXPECT_EQ(res.counts.nu_plus, 1);
    EXPECT_EQ(res.counts.nu_bar, 1);
}

TEST(ConstructNuOne, EightHalf) {
    const auto res = construct_nu_one_detailed(8, 0.5);
    EXPECT_EQ(res.counts.nu_plus, 1);
    EXPECT_EQ(res.counts.nu_bar, 1);
    EXPECT_EQ(ideal_counts(8, 0.5).nu_plus, 3);
    EXPECT_NEAR(res.c.gamma(), 0.5, 0.5e-12);
}

TEST(ConstructNuOne, CustomInterior) {
    const auto c = construct_nu_one(6, 0.3, CoefficientVector({0.1, 0.2, 0.5, 1.5}));
    const auto r = classify_certified(solve_all_roots(c), c);
    EXPECT_EQ(r.nu_plus, 1);
    EXPECT_EQ(r.nu_bar, 1);
    EXPECT_NEAR(c.gamma(), 0.3, 0.3e-12);
}

TEST(ConstructNuOne, Rejects) {
    EXPECT_THROW(construct_nu_one(1, 0.5), DomainError);
    EXPECT_THROW(construct_nu_one(6, 1.0), DomainError);
    EXPECT_THROW(construct_nu_one(6, 0.0), DomainError);
}

TEST(ConstructNuOne, CircleSeparation) {
    for (int n = 5; n <= 12; ++n)
        for (double g : {0.2, 0.5, 0.8}) {
            const auto res = construct_nu_one_detailed(n, g);
            ASSERT_TRUE(res.recipe.has_value());
            const auto cc = circle_check(*res.recipe, 256);
            EXPECT_TRUE(cc.pass()) << n << " " << g << " min=" << cc.min_value << " bound=" << cc.bound;
            EXPECT_EQ(cc.points, 256 * static_cast<int>(res.recipe->b.size() + 1));
            EXPECT_NEAR(res.c.gamma(), g, 1e-12 * g);
        }
}

TEST(ConstructWithCount, Endpoints) {
    const auto c1 = construct_with_count(8, 0.5, 1);
    EXPECT_EQ(c1.vec(), construct_nu_one(8, 0.5).vec());
    EXPECT_TRUE(construct_with_count(8, 0.5, 3).is_ideal());
    EXPECT_THROW(construct_with_count(8, 0.5, 2), DomainError);
    EXPECT_THROW(construct_with_count(8, 0.5, 5), DomainError);
    EXPECT_THROW(construct_with_count(8, 0.5, -1), DomainError);
}

TEST(ConstructWithCount, TwelvePointThree) {
    const int kmax = ideal_counts(12, 0.3).nu_plus;
    EXPECT_EQ(kmax, 5);
    for (int k = 1; k <= kmax; k += 2) {
        const auto c = construct_with_count(12, 0.3, k);
        EXPECT_EQ(classify_certified(solve_all_roots(c), c).nu_plus, k);
        EXPECT_NEAR(c.gamma(), 0.3, 0.3e-12);
    }
}

TEST(ConstructWithCount, RangeCompleteness) {
    for (int n = 5; n <= 12; ++n)
        for (double g : {0.2, 0.5, 0.8}) {
            const int kmax = ideal_counts(n, g).nu_plus;
            std::set<int> got, want;
            for (int k = 1; k <= kmax; k += 2) {
                want.insert(k);
                const auto c = construct_with_count(n, g, k);
                got.insert(classify_certified(solve_all_roots(c), c).nu_plus);
            }
            EXPECT_EQ(got, want) << n << " " << g;
        }
}

TEST(MatrixWithCount, EightAlphaOneBetaTwo) {
    const auto x = matrix_with_count(8, 1.0, 2.0, 3);
    EXPECT_NEAR(x.alpha(), 1.0, 1e-12);
    EXPECT_NEAR(x.beta(), 2.0, 1e-12);
    const auto ec = count_left_eigenvalues(x);
    EXPECT_EQ(ec.left, 3);
    EXPECT_EQ(ec.zero, 0);
}

TEST(MatrixWithCount, Rejects) {
    try {
        matrix_with_count(8, 3.0, 2.0, 1);
        FAIL();
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("only achievable count is 0"), std::string::npos);
    }
    try {
        matrix_with_count(8, 2.0, 2.0, 1);
        FAIL();
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("is 0"), std::string::npos);
    }
    EXPECT_THROW(matrix_with_count(8, 1.0, 2.0, 4), DomainError);
}

TEST(EigenCount, AlphaEqualsBetaHasZeroEigenvalue) {
    // products of a and b are both exactly 1, so det X = 0
    const DCMatrix x({1.0, 2.0, 0.5, 1.0}, {1.0, 1.0, 1.0, 1.0});
    const auto ec = count_left_eigenvalues(x);
    EXPECT_EQ(ec.left, 0);
    EXPECT_EQ(ec.zero, 1);
}

TEST(EigenCount, EscalatesOnExtremeMatrix) {
    const auto c = construct_nu_one(14, 0.2);
    std::vector<double> a(c.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = 5.0 * c[i];
    const DCMatrix x(std::move(a), std::vector<double>(c.size(), 5.0));
    const auto ec = count_left_eigenvalues(x);
    EXPECT_EQ(ec.left, 1);
    EXPECT_EQ(ec.zero, 0);
}
