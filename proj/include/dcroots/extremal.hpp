#pragma once

// Vectors with a prescribed right-half-plane root count: a two-sided extension
// (gamma / A, c', M gamma) that leaves a single right root, and path samples between
// it and c* for the intermediate odd counts.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"
#include "eigencount.hpp"
#include "homotopy.hpp"
#include "oracle.hpp"
#include "roots.hpp"

namespace dcroots {

/// Interior values in units of gamma, with the outer scales that balance the mean.
struct ExtensionRecipe {
    int n = 0;
    double gamma = 0.0;
    std::vector<double> b;   // b_1 < ... < b_{q-1}
    std::vector<int> mults;  // m_1 ... m_{q-1}
    double beta_sep = 0.0;   // disk radius around each -b_j
    double G = 0.0;          // 1 / gamma
    double M = 0.0;          // outer value, d_q = M gamma
    double A = 0.0;          // inner reciprocal scale, d_0 = gamma / A
    int doublings = 0;

    /// log B^{n'} = sum m_j log b_j
    [[nodiscard]] double log_b_power() const {
        double s = 0.0;
        for (std::size_t j = 0; j < b.size(); ++j) s += mults[j] * std::log(b[j]);
        return s;
    }

    [[nodiscard]] CoefficientVector vector() const {
        std::vector<double> e;
        e.reserve(static_cast<std::size_t>(n));
        e.push_back(gamma / A);
        for (std::size_t j = 0; j < b.size(); ++j)
            e.insert(e.end(), static_cast<std::size_t>(mults[j]), b[j] * gamma);
        e.push_back(M * gamma);
        return CoefficientVector(std::move(e));
    }
};

inline void set_outer_scale(ExtensionRecipe& r, double M) {
    r.M = M;
    r.A = std::exp(std::log(M) + r.log_b_power());
}

/// b_j = c'_j / gamma with exact duplicates merged; 2 beta = min{b_1/2, gaps};
/// M = 8 max{b_{q-1}, G^n / beta^{n-1}}; A = M B^{n'}.
inline ExtensionRecipe extension_recipe(int n, double gamma, const CoefficientVector& interior) {
    if (n < 3 || static_cast<int>(interior.size()) != n - 2)
        throw DomainError("extension_recipe: interior must have length n - 2");
    ExtensionRecipe r;
    r.n = n;
    r.gamma = gamma;
    r.G = 1.0 / gamma;
    const DMultiset d = to_multiset(interior);
    for (std::size_t j = 0; j < d.values().size(); ++j) {
        const double bj = d.values()[j] / gamma;
        if (!r.b.empty() && r.b.back() == bj) {
            r.mults.back() += d.mults()[j];
        } else {
            r.b.push_back(bj);
            r.mults.push_back(d.mults()[j]);
        }
    }
    double two_beta = r.b.front() / 2.0;
    for (std::size_t j = 1; j < r.b.size(); ++j) two_beta = std::min(two_beta, r.b[j] - r.b[j - 1]);
    r.beta_sep = two_beta / 2.0;
    const double log_ratio = n * std::log(r.G) - (n - 1) * std::log(r.beta_sep);
    set_outer_scale(r, 8.0 * std::max(r.b.back(), std::exp(log_ratio)));
    return r;
}

struct CircleCheck {
    double min_value = 0.0;  // min |P_M(w)| over the sampled circles
    double bound = 0.0;      // 2 G^n
    int points = 0;
    [[nodiscard]] bool pass() const { return min_value >= bound; }
};

/// min |P_M(w)| over |w + b_j| = beta for the interior b_j and b_q = M, where
/// P_M(w) = (w + 1/A) prod (w + b_j)^{m_j} (w + M). Computed in log magnitude.
inline CircleCheck circle_check(const ExtensionRecipe& r, int points_per_circle = 256) {
    std::vector<double> centers = r.b;
    centers.push_back(r.M);
    std::vector<double> all_b{1.0 / r.A};
    std::vector<int> all_m{1};
    for (std::size_t j = 0; j < r.b.size(); ++j) {
        all_b.push_back(r.b[j]);
        all_m.push_back(r.mults[j]);
    }
    all_b.push_back(r.M);
    all_m.push_back(1);
    double min_log = std::numeric_limits<double>::infinity();
    for (double center : centers) {
        for (int k = 0; k < points_per_circle; ++k) {
            const double phi = 2.0 * std::numbers::pi * k / points_per_circle;
            // w + center = beta e^{i phi}; evaluate w + b as (w + center) + (b - center)
            const Complex offset = std::polar(r.beta_sep, phi);
            double s = 0.0;
            for (std::size_t j = 0; j < all_b.size(); ++j) s += all_m[j] * std::log(std::abs(offset + (all_b[j] - center)));
            min_log = std::min(min_log, s);
        }
    }
    CircleCheck cc;
    cc.points = points_per_circle * static_cast<int>(centers.size());
    cc.min_value = std::exp(min_log);
    cc.bound = 2.0 * std::pow(r.G, r.n);
    return cc;
}

struct ExtremalResult {
    CoefficientVector c;
    std::optional<ExtensionRecipe> recipe;  // empty when c* was returned
    CountReport counts;
};

/// A vector with gamma and exactly one root in the closed right half-plane.
/// n <= 4 returns c*. The outer scale M is doubled (up to 8 times) until the root
/// oracle confirms nu_plus = nu_bar = 1.
inline ExtremalResult construct_nu_one_detailed(int n, double gamma,
                                                std::optional<CoefficientVector> interior = std::nullopt) {
    if (n < 2) throw DomainError("construct_nu_one: n must be >= 2");
    if (!(gamma > 0.0) || !(gamma < 1.0)) throw DomainError("construct_nu_one: gamma must lie in (0, 1)");
    if (n <= 4) {
        const auto c = CoefficientVector::ideal(static_cast<std::size_t>(n), gamma);
        return {c, std::nullopt, classify_certified(solve_all_roots(c), c)};
    }
    if (!interior) interior = CoefficientVector::ideal(static_cast<std::size_t>(n - 2), gamma);
    ExtensionRecipe r = extension_recipe(n, gamma, *interior);
    CountReport last;
    for (int attempt = 0; attempt <= 8; ++attempt) {
        const CoefficientVector c = r.vector();
        last = classify_certified(solve_all_roots(c), c);
        if (last.nu_plus == 1 && last.nu_bar == 1) return {c, r, last};
        set_outer_scale(r, 2.0 * r.M);
        ++r.doublings;
    }
    throw ConstructionError("construct_nu_one: counts not confirmed after doubling M", last.nu_plus, last.nu_bar);
}

inline CoefficientVector construct_nu_one(int n, double gamma,
                                          std::optional<CoefficientVector> interior = std::nullopt) {
    return construct_nu_one_detailed(n, gamma, std::move(interior)).c;
}

/// Valid k for (n, gamma): odd, 1 <= k <= nu_plus(c*).
inline void check_count_target(int n, double gamma, int k) {
    if (!(gamma > 0.0) || !(gamma < 1.0)) throw DomainError("count target: gamma must lie in (0, 1)");
    const int kmax = ideal_counts(n, gamma).nu_plus;
    if (k < 1 || k > kmax || k % 2 == 0)
        throw DomainError("count target: k must be odd in [1, " + std::to_string(kmax) + "], got " +
                          std::to_string(k));
}

/// A vector with gamma and nu_plus = k: the extremal start moved along the path to
/// the multi-singleton until k roots have crossed into the right half-plane.
inline CoefficientVector construct_with_count(int n, double gamma, int k) {
    check_count_target(n, gamma, k);
    const auto start = construct_nu_one_detailed(n, gamma);
    if (k == 1) return start.c;
    const int kmax = ideal_counts(n, gamma).nu_plus;
    if (k == kmax) return CoefficientVector::ideal(static_cast<std::size_t>(n), gamma);
    const PathPlan plan = plan_full_path(start.c);
    const TraceResult trace = trace_roots(plan);
    const double t = find_t_for_count(plan, trace, k);
    const CoefficientVector c = plan.at(t);
    const CountReport r = classify_certified(solve_all_roots(c), c);
    if (r.nu_plus != k) throw ConstructionError("construct_with_count: path sample has the wrong count", r.nu_plus, r.nu_bar);
    return c;
}

/// X in DC(alpha, beta) with exactly k eigenvalues in the open left half-plane:
/// a = beta c, b = (beta, ..., beta).
inline DCMatrix matrix_with_count(int n, double alpha, double beta, int k) {
    if (!(alpha > 0.0) || !(beta > 0.0)) throw DomainError("matrix_with_count: alpha and beta must be positive");
    if (alpha > beta)
        throw DomainError("matrix_with_count: for alpha > beta no matrix in DC(alpha, beta) has an eigenvalue "
                          "in the closed left half-plane; the only achievable count is 0");
    if (alpha == beta)
        throw DomainError("matrix_with_count: for alpha = beta the only eigenvalue in the closed left half-plane "
                          "is 0; no positive count in the open left half-plane is achievable");
    const double gamma = alpha / beta;
    const CoefficientVector c = construct_with_count(n, gamma, k);
    std::vector<double> a(c.size());
    std::transform(c.entries().begin(), c.entries().end(), a.begin(), [beta](double ck) { return beta * ck; });
    DCMatrix x(std::move(a), std::vector<double>(c.size(), beta));
    const EigenCount ec = count_left_eigenvalues(x);
    if (ec.left != k || ec.zero != 0)
        throw ConstructionError("matrix_with_count: eigensolver count differs from target", ec.left, ec.left + ec.zero);
    return x;
}

}  // namespace dcroots
