#pragma once

// Explicit localization constants for roots of P(z; c) = 1 when c lies in the window
// D_* <= c_k <= D^* with geometric mean gamma, and the step-control constants for
// following those roots along a path.

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <string>

#include "core.hpp"

namespace dcroots {

/// Window (D_*, D^*) of a coefficient vector.
struct Window {
    double d_lower;
    double d_upper;
};

inline Window window_of(const CoefficientVector& c) { return {c.min(), c.max()}; }

namespace detail {

inline void check_window(double gamma, double d_lower, double d_upper, const char* who) {
    if (!(gamma > 0.0) || !(gamma < 1.0))
        throw DomainError(std::string(who) + ": requires 0 < gamma < 1");
    // slack for a rounded geometric mean of nearly equal entries
    const double slack = 1e-12 * gamma;
    if (!(d_lower > 0.0) || d_lower > gamma + slack || d_upper < gamma - slack)
        throw DomainError(std::string(who) + ": requires 0 < D_* <= gamma <= D^*");
}

inline void check_n(int n, const char* who) {
    if (n < 1) throw DomainError(std::string(who) + ": n must be positive");
}

}  // namespace detail

/// d = (1 - gamma^n)(1 + D^*)^{-n}: no root lies in |z| <= d.
inline double inner_radius(double gamma, double d_upper, int n) {
    if (!(gamma > 0.0) || !(gamma < 1.0)) throw DomainError("inner_radius: requires 0 < gamma < 1");
    if (d_upper < gamma * (1.0 - 1e-12)) throw DomainError("inner_radius: requires D^* >= gamma");
    detail::check_n(n, "inner_radius");
    return -std::expm1(n * std::log(gamma)) * std::exp(-n * std::log1p(d_upper));
}

/// Half-width of the root-free square at the origin, (2/3) d.
inline double box_delta(double gamma, double d_upper, int n) {
    return 2.0 / 3.0 * inner_radius(gamma, d_upper, n);
}

/// min{ D_*/12, delta(gamma, sqrt3 D^*)^2 / (4 (1 + sqrt3 D^*)) }.
inline double epsilon_wall(double gamma, double d_lower, double d_upper, int n) {
    detail::check_window(gamma, d_lower, d_upper, "epsilon_wall");
    detail::check_n(n, "epsilon_wall");
    const double up = std::sqrt(3.0) * d_upper;
    const double dl = box_delta(gamma, up, n);
    return std::min(d_lower / 12.0, dl * dl / (4.0 * (1.0 + up)));
}

/// Sharper localization for gamma >= 1/2.
struct ImprovedAnnulus {
    double r_in;
    double r_out;
    double gamma;
    double d_lower;

    /// x^2/(1-gamma)^2 + y^2/(1-gamma) >= (3/4) D_*^2.
    [[nodiscard]] bool outside_ellipse(Complex z) const {
        const double g = 1.0 - gamma;
        return z.real() * z.real() / (g * g) + z.imag() * z.imag() / g >= 0.75 * d_lower * d_lower;
    }

    [[nodiscard]] bool contains(Complex z) const {
        const double r = std::abs(z);
        return r >= r_in && r <= r_out;
    }
};

inline ImprovedAnnulus improved_annulus(double gamma, double d_lower) {
    if (!(gamma >= 0.5) || !(gamma < 1.0)) throw DomainError("improved_annulus: requires 1/2 <= gamma < 1");
    if (!(d_lower > 0.0) || d_lower > gamma * (1.0 + 1e-12)) throw DomainError("improved_annulus: requires 0 < D_* <= gamma");
    return {0.8 * d_lower * (1.0 - gamma), 1.5 * std::sqrt(1.0 - gamma), gamma, d_lower};
}

// ---------------------------------------------------------------------------
// Regions

struct RegionSpec {
    enum class Kind { disk, annulus, box, wall, half_plane, ellipsoid_exterior };

    Kind kind = Kind::disk;
    std::map<std::string, double> params;

    [[nodiscard]] double param(const std::string& key) const {
        auto it = params.find(key);
        if (it == params.end()) throw DomainError("RegionSpec: missing parameter " + key);
        return it->second;
    }

    /// |z| < radius
    static RegionSpec disk(double radius) { return {Kind::disk, {{"radius", radius}}}; }
    /// r_in < |z| < r_out
    static RegionSpec annulus(double r_in, double r_out) {
        return {Kind::annulus, {{"r_in", r_in}, {"r_out", r_out}}};
    }
    /// -D_*/3 < Re < 1, |Im| < 1, minus the closed square |Re|, |Im| <= delta.
    static RegionSpec box(double d_lower, double delta) {
        return {Kind::box, {{"x_min", -d_lower / 3.0}, {"x_max", 1.0}, {"y_max", 1.0}, {"delta", delta}}};
    }
    /// |Re| <= eps, delta <= |Im| <= 1.
    static RegionSpec wall(double eps, double delta) {
        return {Kind::wall, {{"eps", eps}, {"delta", delta}, {"y_max", 1.0}}};
    }
    /// Re >= x_min
    static RegionSpec half_plane(double x_min) { return {Kind::half_plane, {{"x_min", x_min}}}; }
    /// x^2/a^2 + y^2/b^2 >= level
    static RegionSpec ellipsoid_exterior(double gamma, double d_lower) {
        const double g = 1.0 - gamma;
        return {Kind::ellipsoid_exterior, {{"a2", g * g}, {"b2", g}, {"level", 0.75 * d_lower * d_lower}}};
    }

    [[nodiscard]] bool contains(Complex z) const {
        const double x = z.real(), y = z.imag();
        switch (kind) {
            case Kind::disk: return std::abs(z) < param("radius");
            case Kind::annulus: {
                const double r = std::abs(z);
                return r > param("r_in") && r < param("r_out");
            }
            case Kind::box: {
                const double dl = param("delta");
                const bool outer = x > param("x_min") && x < param("x_max") && std::abs(y) < param("y_max");
                const bool hole = std::abs(x) <= dl && std::abs(y) <= dl;
                return outer && !hole;
            }
            case Kind::wall:
                return std::abs(x) <= param("eps") && std::abs(y) >= param("delta") && std::abs(y) <= param("y_max");
            case Kind::half_plane: return x >= param("x_min");
            case Kind::ellipsoid_exterior:
                return x * x / param("a2") + y * y / param("b2") >= param("level");
        }
        return false;
    }
};

inline const char* to_string(RegionSpec::Kind k) {
    switch (k) {
        case RegionSpec::Kind::disk: return "disk";
        case RegionSpec::Kind::annulus: return "annulus";
        case RegionSpec::Kind::box: return "box";
        case RegionSpec::Kind::wall: return "wall";
        case RegionSpec::Kind::half_plane: return "half-plane";
        case RegionSpec::Kind::ellipsoid_exterior: return "ellipsoid-exterior";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// Step-control constants for root continuation

struct IFTConstants {
    double M0 = 0, M1 = 0, M2 = 0;
    double Omega = 0;
    double kappa = 0;
    double r = 0;
    double rho = 0;
    double safety = 1.0;
};

/// rho = (1/2) min{ eps, log 3 / (2n) }.
inline double default_rho(double gamma, double d_lower, double d_upper, int n) {
    return 0.5 * std::min(epsilon_wall(gamma, d_lower, d_upper, n), std::log(3.0) / (2.0 * n));
}

/// Trust radii kappa (root displacement) and r (parameter step).
/// `safety` in (0, 1] scales both further down.
inline IFTConstants ift_constants(double gamma, double d_lower, double d_upper, int n, double rho,
                                  double safety = 1.0) {
    detail::check_window(gamma, d_lower, d_upper, "ift_constants");
    detail::check_n(n, "ift_constants");
    if (!(safety > 0.0) || safety > 1.0) throw DomainError("ift_constants: safety must lie in (0, 1]");
    const double rho_max = default_rho(gamma, d_lower, d_upper, n);
    if (!(rho > 0.0) || rho > rho_max * (1.0 + 1e-15))
        throw DomainError("ift_constants: rho must lie in (0, min(eps/2, log3/(4n))]");
    const double nn = n;
    const double dl2 = d_lower * d_lower;
    IFTConstants k;
    k.rho = rho;
    k.safety = safety;
    k.M0 = std::pow(2.0 * (1.0 + d_upper), nn);
    k.M1 = nn * nn * k.M0 * (1.0 + 36.0 / dl2);
    k.M2 = 216.0 * nn * nn * nn * (1.0 + d_upper) * (1.0 + k.M1 / d_lower + k.M0 / dl2);
    k.Omega = nn * d_lower / (6.0 * (1.0 + d_upper) * (1.0 + d_upper));
    k.kappa = 0.5 * std::min(rho, k.Omega / (8.0 * k.M2));
    k.r = 0.5 * std::min(k.kappa * k.Omega / (8.0 * (k.M1 + k.M2)), rho);
    k.kappa *= safety;
    k.r *= safety;
    return k;
}

inline IFTConstants ift_constants(const CoefficientVector& c, double safety = 1.0) {
    const int n = static_cast<int>(c.size());
    return ift_constants(c.gamma(), c.min(), c.max(), n, default_rho(c.gamma(), c.min(), c.max(), n), safety);
}

}  // namespace dcroots
