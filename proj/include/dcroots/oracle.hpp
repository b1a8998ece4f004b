#pragma once

// Closed-form answers for the multi-singleton c* = (gamma, ..., gamma) and the
// symmetric-mean inequalities the localization bounds rest on.

#include <cmath>
#include <complex>
#include <numbers>
#include <utility>
#include <vector>

#include "core.hpp"
#include "roots.hpp"

namespace dcroots {

/// Tolerance for deciding cos(2 pi k / n) == gamma. Only gamma = 1/2 (n divisible by 6)
/// produces a tie among rational gamma in (0, 1), and there cos(pi/3) rounds to
/// 0.5000000000000001.
inline constexpr double ideal_tie_tol = 1e-12;

struct IdealSpectrum {
    int n = 0;
    double gamma = 0.0;
    RootSet roots;
    int kappa_plus = 0;  // nu_plus = 2 kappa_plus + 1 when gamma < 1
    int kappa_bar = 0;   // nu_bar = 2 kappa_bar + 1 when gamma < 1
};

/// {-gamma + exp(2 pi i k / n) : 0 <= k < n}.
inline RootSet ideal_roots(int n, double gamma) {
    if (n < 2) throw DomainError("ideal_roots: n must be >= 2");
    if (!(gamma > 0.0)) throw DomainError("ideal_roots: gamma must be positive");
    std::vector<Complex> z;
    z.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double angle = 2.0 * std::numbers::pi * k / n;
        Complex w = std::polar(1.0, angle);
        if (k == 0) w = 1.0;
        if (2 * k == n) w = -1.0;
        z.push_back(w - gamma);
    }
    return make_root_set(std::move(z), CoefficientVector::ideal(static_cast<std::size_t>(n), gamma),
                         RootMethod::closed_form);
}

/// Counts by cos(2 pi k / n) against gamma; exact ties go to nu_zero.
inline CountReport ideal_counts(int n, double gamma) {
    if (n < 2) throw DomainError("ideal_counts: n must be >= 2");
    if (!(gamma > 0.0)) throw DomainError("ideal_counts: gamma must be positive");
    CountReport r;
    r.method = CountMethod::closed_form;
    r.tol = ideal_tie_tol;
    for (int k = 0; k < n; ++k) {
        const double diff = std::cos(2.0 * std::numbers::pi * k / n) - gamma;
        if (std::abs(diff) <= ideal_tie_tol) ++r.nu_zero;
        else if (diff > 0.0) ++r.nu_plus;
        else ++r.nu_minus;
    }
    r.nu_bar = r.nu_zero + r.nu_plus;
    return r;
}

inline IdealSpectrum ideal_spectrum(int n, double gamma) {
    IdealSpectrum s;
    s.n = n;
    s.gamma = gamma;
    s.roots = ideal_roots(n, gamma);
    const CountReport r = ideal_counts(n, gamma);
    s.kappa_plus = (r.nu_plus - 1) / 2;
    s.kappa_bar = (r.nu_bar - 1) / 2;
    return s;
}

/// Elementary symmetric polynomials sigma_0 .. sigma_n by the factorwise recurrence.
inline std::vector<double> elementary_symmetric(std::span<const double> x) {
    std::vector<double> e(x.size() + 1, 0.0);
    e[0] = 1.0;
    for (std::size_t j = 0; j < x.size(); ++j)
        for (std::size_t k = j + 1; k > 0; --k) e[k] += x[j] * e[k - 1];
    return e;
}

/// (S_1, S_2^{1/2}, ..., S_n^{1/n}) with S_k = sigma_k / C(n, k).
inline std::vector<double> maclaurin_chain(std::span<const double> x) {
    if (x.empty()) throw DomainError("maclaurin_chain: empty input");
    if (x.size() > 25) throw CapacityError("maclaurin_chain: at most 25 entries");
    for (double v : x)
        if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("maclaurin_chain: entries must be positive");
    const std::size_t n = x.size();
    const auto e = elementary_symmetric(x);
    std::vector<double> chain(n);
    double binom = 1.0;
    for (std::size_t k = 1; k <= n; ++k) {
        binom = binom * static_cast<double>(n - k + 1) / static_cast<double>(k);
        chain[k - 1] = std::pow(e[k] / binom, 1.0 / static_cast<double>(k));
    }
    return chain;
}

/// (prod (1 + t_k), (1 + T)^n) with T the geometric mean of t.
inline std::pair<double, double> product_bound_check(std::span<const double> t) {
    if (t.empty()) throw DomainError("product_bound_check: empty input");
    double lhs = 1.0;
    double log_sum = 0.0;
    bool has_zero = false;
    for (double v : t) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("product_bound_check: entries must be >= 0");
        lhs *= 1.0 + v;
        if (v == 0.0) has_zero = true;
        else log_sum += std::log(v);
    }
    const double n = static_cast<double>(t.size());
    double big_t = has_zero ? 0.0 : std::exp(log_sum / n);
    if (!has_zero) {
        bool all_equal = true;
        for (double v : t) all_equal = all_equal && v == t.front();
        if (all_equal) big_t = t.front();
    }
    return {lhs, std::pow(1.0 + big_t, n)};
}

}  // namespace dcroots
