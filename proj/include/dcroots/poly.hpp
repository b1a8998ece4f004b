#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "core.hpp"

namespace dcroots {

struct PolyEval {
    Complex value;   // P(z; c)
    Complex dvalue;  // dP/dz at the same point
};

/// P(z; c) = prod (z + c_k), accumulated in ascending-c order.
inline Complex eval_p(Complex z, const CoefficientVector& c) {
    Complex p{1.0, 0.0};
    for (double ck : c.entries()) p *= (z + ck);
    return p;
}

/// Value and product-rule derivative in one pass (prefix/suffix products), exact
/// even when a factor vanishes.
inline PolyEval eval_p_with_derivative(Complex z, const CoefficientVector& c) {
    const auto e = c.entries();
    const std::size_t n = e.size();
    std::vector<Complex> prefix(n + 1);
    prefix[0] = 1.0;
    for (std::size_t k = 0; k < n; ++k) prefix[k + 1] = prefix[k] * (z + e[k]);
    Complex suffix{1.0, 0.0};
    Complex d{0.0, 0.0};
    for (std::size_t k = n; k-- > 0;) {
        d += prefix[k] * suffix;
        suffix *= (z + e[k]);
    }
    return {prefix[n], d};
}

inline Complex eval_dp_dz(Complex z, const CoefficientVector& c) {
    return eval_p_with_derivative(z, c).dvalue;
}

/// det(diag(c) - Sigma - lambda I) = prod (c_k - lambda) - 1, evaluated as P(-lambda) - 1.
inline Complex char_poly_value(Complex lambda, const CoefficientVector& c) {
    return eval_p(-lambda, c) - 1.0;
}

/// Monomial coefficients of P(z; c) - 1 in ascending powers: result[k] multiplies z^k,
/// result[n] = 1, result[0] = gamma^n - 1.
inline std::vector<double> expand_coefficients(const CoefficientVector& c) {
    constexpr std::size_t max_degree = 64;
    const std::size_t n = c.size();
    if (n > max_degree) throw CapacityError("expand_coefficients: degree above 64");
    std::vector<double> coeff(n + 1, 0.0);
    coeff[0] = 1.0;
    // Multiply by (z + c_k) one factor at a time.
    for (std::size_t k = 0; k < n; ++k) {
        const double ck = c[k];
        for (std::size_t j = k + 1; j > 0; --j) coeff[j] = coeff[j - 1] + ck * coeff[j];
        coeff[0] *= ck;
    }
    coeff[0] -= 1.0;
    return coeff;
}

/// Horner evaluation for ascending coefficients.
inline Complex horner(const std::vector<double>& ascending, Complex z) {
    Complex acc{0.0, 0.0};
    for (std::size_t k = ascending.size(); k-- > 0;) acc = acc * z + ascending[k];
    return acc;
}

/// |P(z) - 1| scaled by the componentwise rounding magnitude 1 + prod(|z| + c_k).
/// This is the attainable accuracy measure for roots sitting next to a huge or tiny c_k.
inline double scaled_residual(Complex z, const CoefficientVector& c) {
    const double raw = std::abs(eval_p(z, c) - 1.0);
    double log_scale = 0.0;
    const double az = std::abs(z);
    for (double ck : c.entries()) log_scale += std::log(az + ck);
    // 1 + exp(log_scale) without overflow
    const double log_denom = log_scale > 0.0 ? log_scale + std::log1p(std::exp(-log_scale))
                                             : std::log1p(std::exp(log_scale));
    return raw * std::exp(-log_denom);
}

}  // namespace dcroots
