#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include <dcroots/bounds.hpp>
#include <dcroots/oracle.hpp>
#include <dcroots/roots.hpp>

#include <dcroots/sampling.hpp>

using namespace dcroots;

TEST(InnerRadius, Examples) {
    EXPECT_NEAR(inner_radius(0.5, 0.5, 2), 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(box_delta(0.5, 0.5, 2), 2.0 / 9.0, 1e-15);
    EXPECT_LT(inner_radius(1.0 - 1e-12, 1.0, 3), 1e-11);
    EXPECT_GT(inner_radius(1.0 - 1e-12, 1.0, 3), 0.0);
    for (int n : {1, 4, 10, 30}) EXPECT_DOUBLE_EQ(box_delta(0.3, 2.0, n), 2.0 / 3.0 * inner_radius(0.3, 2.0, n));
}

TEST(InnerRadius, Rejects) {
    EXPECT_THROW(inner_radius(1.0, 1.0, 2), DomainError);
    EXPECT_THROW(inner_radius(1.5, 2.0, 2), DomainError);
    EXPECT_THROW(inner_radius(0.0, 2.0, 2), DomainError);
    EXPECT_THROW(inner_radius(0.5, 0.25, 2), DomainError);
}

TEST(EpsilonWall, TwoBranches) {
    const double up = std::sqrt(3.0) / 2.0;
    const double dl = (2.0 / 3.0) * 0.75 / ((1.0 + up) * (1.0 + up));
    const double second = dl * dl / (4.0 * (1.0 + up));
    EXPECT_NEAR(epsilon_wall(0.5, 0.5, 0.5, 2), std::min(1.0 / 24.0, second), 1e-16);
    EXPECT_LT(second, 1.0 / 24.0);

    // first branch wins when D_* is tiny
    const double tiny = 1e-6;
    EXPECT_DOUBLE_EQ(epsilon_wall(0.5, tiny, 2.0, 2), std::min(tiny / 12.0, std::pow(box_delta(0.5, std::sqrt(3.0) * 2.0, 2), 2) /
                                                                                 (4.0 * (1.0 + std::sqrt(3.0) * 2.0))));
}

TEST(EpsilonWall, NonincreasingInN) {
    for (double g : {0.1, 0.5, 0.9}) {
        double prev = epsilon_wall(g, g / 2, 2 * g, 1);
        for (int n = 2; n <= 40; ++n) {
            const double e = epsilon_wall(g, g / 2, 2 * g, n);
            EXPECT_LE(e, prev) << "g=" << g << " n=" << n;
            prev = e;
        }
    }
}

TEST(EpsilonWall, Rejects) {
    EXPECT_THROW(epsilon_wall(1.0, 0.5, 1.5, 2), DomainError);
    EXPECT_THROW(epsilon_wall(0.5, 0.6, 1.0, 2), DomainError);
    EXPECT_THROW(epsilon_wall(0.5, 0.2, 0.4, 2), DomainError);
    EXPECT_THROW(epsilon_wall(0.5, 0.2, 0.8, 0), DomainError);
}

TEST(ImprovedAnnulus, Example) {
    const auto a = improved_annulus(0.75, 0.75);
    EXPECT_NEAR(a.r_in, 0.15, 1e-15);
    EXPECT_NEAR(a.r_out, 0.75, 1e-15);
    const auto b = improved_annulus(1.0 - 1e-10, 0.5);
    EXPECT_LT(b.r_in, 1e-10);
    EXPECT_LT(b.r_out, 2e-5);
    EXPECT_THROW(improved_annulus(0.49, 0.3), DomainError);
    EXPECT_THROW(improved_annulus(1.0, 0.3), DomainError);
}

TEST(ImprovedAnnulus, IdealRightRoots) {
    const auto a = improved_annulus(0.75, 0.75);
    const auto rs = ideal_roots(8, 0.75);
    int right = 0;
    for (Complex z : rs.roots) {
        if (z.real() < 0.0) continue;
        ++right;
        EXPECT_TRUE(a.contains(z)) << z;
        EXPECT_TRUE(a.outside_ellipse(z)) << z;
    }
    EXPECT_EQ(right, 1);
}

TEST(RegionSpec, Membership) {
    const auto box = RegionSpec::box(0.3, 0.05);
    EXPECT_TRUE(box.contains({0.5, 0.5}));
    EXPECT_TRUE(box.contains({-0.09, 0.5}));
    EXPECT_FALSE(box.contains({-0.11, 0.5}));
    EXPECT_FALSE(box.contains({0.01, 0.01}));
    EXPECT_FALSE(box.contains({0.05, 0.0}));
    EXPECT_TRUE(box.contains({0.06, 0.0}));
    EXPECT_FALSE(box.contains({0.5, 1.0}));
    EXPECT_FALSE(box.contains({1.0, 0.5}));

    const auto wall = RegionSpec::wall(0.01, 0.1);
    EXPECT_TRUE(wall.contains({0.0, 0.5}));
    EXPECT_TRUE(wall.contains({-0.01, -0.1}));
    EXPECT_FALSE(wall.contains({0.02, 0.5}));
    EXPECT_FALSE(wall.contains({0.0, 0.05}));

    EXPECT_TRUE(RegionSpec::annulus(0.1, 1.0).contains({0.5, 0.0}));
    EXPECT_FALSE(RegionSpec::annulus(0.1, 1.0).contains({0.1, 0.0}));
    EXPECT_TRUE(RegionSpec::disk(1.0).contains({0.0, 0.99}));
    EXPECT_TRUE(RegionSpec::half_plane(-0.1).contains({-0.1, 4.0}));
    const auto e = RegionSpec::ellipsoid_exterior(0.75, 0.75);
    EXPECT_FALSE(e.contains({0.0, 0.0}));
    EXPECT_TRUE(e.contains({0.5, 0.0}));
    EXPECT_EQ(std::string(to_string(e.kind)), "ellipsoid-exterior");
    EXPECT_THROW((void)RegionSpec{}.contains({0.0, 0.0}), DomainError);
}

TEST(IFTConstants, Examples) {
    const double rho = default_rho(0.5, 0.5, 0.5, 2);
    const auto k = ift_constants(0.5, 0.5, 0.5, 2, rho);
    EXPECT_NEAR(k.M0, 9.0, 1e-13);
    EXPECT_NEAR(k.Omega, 2.0 / 27.0, 1e-16);
    EXPECT_NEAR(k.M1, 4.0 * 9.0 * (1.0 + 36.0 / 0.25), 1e-10);
    EXPECT_NEAR(k.M2, 216.0 * 8.0 * 1.5 * (1.0 + k.M1 / 0.5 + 9.0 / 0.25), 1e-6 * k.M2);
    EXPECT_NEAR(k.rho, 0.5 * std::min(epsilon_wall(0.5, 0.5, 0.5, 2), std::log(3.0) / 4.0), 1e-18);
}

TEST(IFTConstants, Invariants) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const auto c = sample::random_c_any_gamma(rng, sample::random_n(rng, 2, 12), 0.05, 0.95, 5.0);
        const auto k = ift_constants(c);
        EXPECT_GT(k.kappa, 0.0);
        EXPECT_GT(k.r, 0.0);
        EXPECT_LE(k.kappa, std::min(k.rho, k.Omega / (8.0 * k.M2)));
        EXPECT_LE(k.r, std::min(k.kappa * k.Omega / (8.0 * (k.M1 + k.M2)), k.rho));
        for (double v : {k.M0, k.M1, k.M2, k.Omega}) EXPECT_GT(v, 0.0);
    }
}

TEST(IFTConstants, SafetyScalesDown) {
    const auto c = CoefficientVector({0.2, 0.5, 1.0});
    const auto full = ift_constants(c);
    const auto quarter = ift_constants(c, 0.25);
    EXPECT_DOUBLE_EQ(quarter.kappa, 0.25 * full.kappa);
    EXPECT_DOUBLE_EQ(quarter.r, 0.25 * full.r);
    EXPECT_THROW(ift_constants(c, 0.0), DomainError);
    EXPECT_THROW(ift_constants(c, 1.5), DomainError);
}

TEST(IFTConstants, RadiusDecreasesWithN) {
    const double rho = default_rho(0.5, 0.25, 1.0, 30);
    double prev = ift_constants(0.5, 0.25, 1.0, 1, rho).r;
    for (int n = 2; n <= 30; ++n) {
        const double r = ift_constants(0.5, 0.25, 1.0, n, rho).r;
        EXPECT_LT(r, prev) << n;
        prev = r;
    }
}

TEST(IFTConstants, RejectsRho) {
    const double rho = default_rho(0.5, 0.5, 0.5, 2);
    EXPECT_THROW(ift_constants(0.5, 0.5, 0.5, 2, 2.0 * rho), DomainError);
    EXPECT_THROW(ift_constants(0.5, 0.5, 0.5, 2, 0.0), DomainError);
    EXPECT_THROW(ift_constants(1.5, 0.5, 2.0, 2, rho), DomainError);
}

TEST(Localization, RandomInstances) {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 500; ++i) {
        const std::size_t n = sample::random_n(rng, 2, 12);
        const double spread = (i % 2 == 0) ? 3.0 : 20.0;
        const auto c = sample::random_c_any_gamma(rng, n, 0.05, 0.95, spread);
        const double g = c.gamma();
        const int ni = static_cast<int>(n);
        const double d = inner_radius(g, c.max(), ni);
        const auto box = RegionSpec::box(c.min(), box_delta(g, c.max(), ni));
        const auto rs = solve_all_roots(c);
        for (Complex z : rs.roots) {
            if (z.real() >= -c.min() / 3.0) {
                EXPECT_GT(std::abs(z), d) << "i=" << i << " z=" << z;
                EXPECT_LT(std::abs(z), 1.0) << "i=" << i << " z=" << z;
            }
            if (z.real() >= 0.0) {
                EXPECT_TRUE(box.contains(z)) << "i=" << i << " z=" << z;
                if (g >= 0.5) {
                    const auto a = improved_annulus(g, c.min());
                    EXPECT_TRUE(a.contains(z)) << "i=" << i << " z=" << z;
                    EXPECT_TRUE(a.outside_ellipse(z)) << "i=" << i << " z=" << z;
                }
            }
        }
    }
}

TEST(Localization, InflatedWindowBoxContainsRightRoots) {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = sample::random_n(rng, 2, 10);
        const auto c = sample::random_c_any_gamma(rng, n, 0.1, 0.9, 6.0);
        const double lo = c.min() / std::sqrt(3.0), hi = c.max() * std::sqrt(3.0);
        const auto box = RegionSpec::box(lo, box_delta(c.gamma(), hi, static_cast<int>(n)));
        for (Complex z : solve_all_roots(c).roots)
            if (z.real() >= 0.0) {
                EXPECT_TRUE(box.contains(z)) << z;
            }
    }
}
