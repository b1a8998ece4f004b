#pragma once

// Seeded random inputs: log-uniform coefficient vectors rescaled to a target
// geometric mean, and doubly cyclic matrices with random cycles.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "core.hpp"

namespace dcroots::sample {

inline std::vector<double> log_uniform(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    std::vector<double> v(n);
    for (double& x : v) x = std::exp(u(rng));
    return v;
}

/// Random vector with geometric mean exactly rescaled to gamma (up to rounding).
inline CoefficientVector random_c(std::mt19937_64& rng, std::size_t n, double gamma, double spread = 4.0) {
    std::vector<double> v = log_uniform(rng, n, 1.0 / spread, spread);
    const double g = geometric_mean(v);
    for (double& x : v) x *= gamma / g;
    return CoefficientVector(std::move(v));
}

/// Random vector with gamma drawn from (g_lo, g_hi).
inline CoefficientVector random_c_any_gamma(std::mt19937_64& rng, std::size_t n, double g_lo, double g_hi,
                                            double spread = 4.0) {
    std::uniform_real_distribution<double> ug(g_lo, g_hi);
    return random_c(rng, n, ug(rng), spread);
}

inline std::size_t random_n(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    std::uniform_int_distribution<std::size_t> u(lo, hi);
    return u(rng);
}

inline std::vector<std::size_t> random_cycle(std::mt19937_64& rng, std::size_t n) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[order[i]] = order[(i + 1) % n];
    return perm;
}

inline Complex random_point(std::mt19937_64& rng, double radius) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return std::polar(radius * std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng));
}

/// X in DC(alpha, beta): log-uniform a and b rescaled to the target means, random cycle.
inline DCMatrix random_matrix(std::mt19937_64& rng, std::size_t n, double alpha, double beta, double spread = 4.0) {
    auto rescale = [&](double target) {
        std::vector<double> v = log_uniform(rng, n, 1.0 / spread, spread);
        const double g = geometric_mean(v);
        for (double& x : v) x *= target / g;
        return v;
    };
    std::vector<double> a = rescale(alpha);
    std::vector<double> b = rescale(beta);
    return DCMatrix(std::move(a), std::move(b), random_cycle(rng, n));
}

}  // namespace dcroots::sample
