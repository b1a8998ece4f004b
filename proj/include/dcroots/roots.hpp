#pragma once

// Two independent ways to count the roots of P(z; c) = 1 by half plane:
// a global simultaneous iteration (Aberth) over all n roots, and a winding-number
// integral over a contour. They share only the polynomial evaluator.

#include <algorithm>
#include <cmath>
#include <complex>
#include <iterator>
#include <limits>
#include <numbers>
#include <vector>

#include "core.hpp"
#include "poly.hpp"

namespace dcroots {

enum class RootMethod { aberth, matrix_eigen, closed_form };

inline const char* to_string(RootMethod m) {
    switch (m) {
        case RootMethod::aberth: return "aberth";
        case RootMethod::matrix_eigen: return "matrix_eigen";
        case RootMethod::closed_form: return "closed_form";
    }
    return "unknown";
}

struct RootSet {
    std::vector<Complex> roots;
    std::vector<double> residuals;         // |P(root) - 1|
    std::vector<double> scaled_residuals;  // see scaled_residual()
    RootMethod method = RootMethod::aberth;

    [[nodiscard]] std::size_t size() const { return roots.size(); }
    [[nodiscard]] double max_residual() const {
        return residuals.empty() ? 0.0 : *std::max_element(residuals.begin(), residuals.end());
    }
    [[nodiscard]] double max_scaled_residual() const {
        return scaled_residuals.empty()
                   ? 0.0
                   : *std::max_element(scaled_residuals.begin(), scaled_residuals.end());
    }
};

inline RootSet make_root_set(std::vector<Complex> roots, const CoefficientVector& c, RootMethod method) {
    RootSet rs;
    rs.method = method;
    rs.roots = std::move(roots);
    rs.residuals.reserve(rs.roots.size());
    rs.scaled_residuals.reserve(rs.roots.size());
    for (const Complex& z : rs.roots) {
        rs.residuals.push_back(std::abs(eval_p(z, c) - 1.0));
        rs.scaled_residuals.push_back(scaled_residual(z, c));
    }
    return rs;
}

namespace detail {

/// Newton quotient (P - 1) / P' without overflow for |P| far from 1.
inline Complex newton_quotient(Complex z, const CoefficientVector& c) {
    const auto e = c.entries();
    Complex p{1.0, 0.0};
    Complex s{0.0, 0.0};
    bool zero_factor = false;
    for (double ck : e) {
        const Complex f = z + ck;
        if (f == 0.0) zero_factor = true;
        else s += 1.0 / f;
        p *= f;
    }
    const double ap = std::abs(p);
    if (zero_factor || ap < 1e-200 || !std::isfinite(ap)) {
        if (std::isfinite(ap) && ap <= 1e200) {
            const PolyEval pe = eval_p_with_derivative(z, c);
            return (pe.value - 1.0) / pe.dvalue;
        }
        return 1.0 / s;
    }
    if (ap > 1e200) return (1.0 - 1.0 / p) / s;
    return (p - 1.0) / (p * s);
}

inline double rounding_step(Complex z) {
    return 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(z), 1e-300);
}

/// Newton polish until |P - 1| <= target or the step stalls at rounding level.
inline Complex polish(Complex z, const CoefficientVector& c, double target, int max_iter) {
    for (int it = 0; it < max_iter; ++it) {
        if (std::abs(eval_p(z, c) - 1.0) <= target) break;
        const Complex step = newton_quotient(z, c);
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
        const Complex next = z - step;
        if (scaled_residual(next, c) > scaled_residual(z, c) && std::abs(step) > rounding_step(z)) break;
        z = next;
        if (std::abs(step) <= rounding_step(z)) break;
    }
    return z;
}

inline bool aberth_iterate(const CoefficientVector& c, int max_iter, std::vector<Complex>& z) {
    const std::size_t n = c.size();
    std::vector<bool> done(n, false);
    for (int it = 0; it < max_iter; ++it) {
        bool all_done = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i]) continue;
            const Complex ratio = newton_quotient(z[i], c);
            Complex repulsion{0.0, 0.0};
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) repulsion += 1.0 / (z[i] - z[j]);
            Complex w = ratio / (1.0 - ratio * repulsion);
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) w = ratio;
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) return false;
            z[i] -= w;
            if (std::abs(w) <= rounding_step(z[i])) done[i] = true;
            else all_done = false;
        }
        if (all_done) return true;
    }
    return true;  // residual checks decide
}

inline std::vector<Complex> circle_seeds(std::size_t n, double radius, double phase) {
    std::vector<Complex> z(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + phase;
        z[k] = std::polar(radius, angle);
    }
    return z;
}

/// Vieta certificates: sum of roots = -sum c_k, product = (-1)^n (gamma^n - 1).
/// A root counted twice (and one missed) breaks at least one of them.
inline bool vieta_ok(const std::vector<Complex>& z, const CoefficientVector& c) {
    const std::size_t n = c.size();
    Complex sum{0.0, 0.0};
    double scale = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        sum += z[k];
        scale += std::abs(z[k]) + c[k];
    }
    double csum = 0.0;
    for (double ck : c.entries()) csum += ck;
    if (std::abs(sum + csum) > 1e-9 * (scale + 1.0)) return false;

    // product in log-magnitude / summed argument
    const double target = std::pow(c.gamma(), static_cast<double>(n)) - 1.0;  // times (-1)^n
    if (std::abs(target) < 1e-12) return true;  // a root at the origin; no usable scale
    double log_mag = 0.0;
    double arg = 0.0;
    for (const Complex& r : z) {
        if (r == 0.0) return false;
        log_mag += std::log(std::abs(r));
        arg += std::arg(r);
    }
    const double expected_log = std::log(std::abs(target));
    if (std::abs(log_mag - expected_log) > 1e-6 * (1.0 + std::abs(expected_log))) return false;
    const double sign = ((n % 2 == 0) ? 1.0 : -1.0) * (target > 0 ? 1.0 : -1.0);
    const double expected_arg = sign > 0 ? 0.0 : std::numbers::pi;
    const double diff = std::remainder(arg - expected_arg, 2.0 * std::numbers::pi);
    return std::abs(diff) < 1e-6;
}

}  // namespace detail

struct SolveOptions {
    double target_residual = 1e-10;
    int aberth_iterations = 800;
    int newton_iterations = 100;
    int retries = 4;
};

namespace detail {

inline bool finite_all(const std::vector<Complex>& z) {
    return std::all_of(z.begin(), z.end(), [](Complex r) { return std::isfinite(r.real()) && std::isfinite(r.imag()); });
}

inline RootSet finish_roots(std::vector<Complex> z, const CoefficientVector& c) {
    std::sort(z.begin(), z.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
    });
    return make_root_set(std::move(z), c, RootMethod::aberth);
}

// Polish, then accept if the scaled residuals and the Vieta certificates hold.
inline bool accept_roots(std::vector<Complex>& z, const CoefficientVector& c, const SolveOptions& opt,
                         RootSet& best, double& best_score) {
    if (!finite_all(z)) return false;
    for (Complex& r : z) r = polish(r, c, opt.target_residual, opt.newton_iterations);
    if (!finite_all(z)) return false;
    RootSet rs = make_root_set(z, c, RootMethod::aberth);
    const double score = rs.max_scaled_residual();
    if (score < best_score) {
        best = rs;
        best_score = score;
    }
    return score <= 1e-12 && vieta_ok(z, c);
}

}  // namespace detail

/// All n roots of P(z; c) = 1 by Aberth iteration seeded on the circle
/// |z| = max(1, D*), followed by Newton polishing.
/// Throws SolverError when retries with perturbed seeds all fail.
inline RootSet solve_all_roots(const CoefficientVector& c, const SolveOptions& opt = {}) {
    if (c.size() < 2) throw DomainError("solve_all_roots: n must be >= 2");
    const double base_radius = std::max(1.0, c.max());
    RootSet best;
    double best_score = std::numeric_limits<double>::infinity();
    for (int attempt = 0; attempt <= opt.retries; ++attempt) {
        const double radius = base_radius * (1.0 + 0.25 * attempt);
        std::vector<Complex> z = detail::circle_seeds(c.size(), radius, 0.4 + 0.37 * attempt);
        if (!detail::aberth_iterate(c, opt.aberth_iterations * (attempt + 1), z)) continue;
        if (detail::accept_roots(z, c, opt, best, best_score)) return detail::finish_roots(std::move(z), c);
    }
    throw SolverError("solve_all_roots: no convergence after retries", best.residuals);
}

/// Warm start from approximate roots (e.g. those of a nearby vector); falls back to
/// the cold start when the seeds do not converge to a certified set.
inline RootSet solve_all_roots_from(const CoefficientVector& c, std::vector<Complex> seeds,
                                    const SolveOptions& opt = {}) {
    if (seeds.size() != c.size()) return solve_all_roots(c, opt);
    RootSet best;
    double best_score = std::numeric_limits<double>::infinity();
    // Coincident seeds stall the repulsion term; nudge them apart.
    for (std::size_t i = 0; i < seeds.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (seeds[i] == seeds[j]) seeds[i] += Complex{0.0, 1e-9 * (1.0 + std::abs(seeds[i]))};
    if (detail::aberth_iterate(c, opt.aberth_iterations, seeds) &&
        detail::accept_roots(seeds, c, opt, best, best_score))
        return detail::finish_roots(std::move(seeds), c);
    return solve_all_roots(c, opt);
}

/// Roots as z = -lambda over the eigenvalues of diag(c) - Sigma (dense eigensolver).
inline RootSet solve_roots_by_matrix(const CoefficientVector& c) {
    const std::size_t n = c.size();
    std::vector<double> ones(n, 1.0);
    const DCMatrix x(c.vec(), ones);
    std::vector<Complex> lambdas = x.eigenvalues();
    std::vector<Complex> z;
    z.reserve(n);
    for (const Complex& l : lambdas) z.push_back(-l);
    return make_root_set(std::move(z), c, RootMethod::matrix_eigen);
}

inline constexpr double default_axis_tol = 1e-9;

/// Counts by sign of the real part; |Re| <= tol goes to nu_zero.
inline CountReport classify(const RootSet& roots, double tol = default_axis_tol) {
    if (!(tol > 0.0)) throw DomainError("classify: tol must be positive");
    CountReport r;
    r.tol = tol;
    r.method = roots.method == RootMethod::closed_form ? CountMethod::closed_form : CountMethod::eigensolver;
    r.max_residual = roots.max_residual();
    r.max_scaled_residual = roots.max_scaled_residual();
    for (const Complex& z : roots.roots) {
        if (std::abs(z.real()) <= tol) ++r.nu_zero;
        else if (z.real() > 0.0) ++r.nu_plus;
        else ++r.nu_minus;
    }
    r.nu_bar = r.nu_zero + r.nu_plus;
    return r;
}

/// Per-root a posteriori error radius: 10 |P - 1| / |P'| plus rounding of |z|.
inline double root_error_radius(Complex z, const CoefficientVector& c) {
    const PolyEval pe = eval_p_with_derivative(z, c);
    const double dp = std::abs(pe.dvalue);
    const double newton = dp > 0.0 ? 10.0 * std::abs(pe.value - 1.0) / dp : std::numeric_limits<double>::infinity();
    return newton + 8.0 * std::numeric_limits<double>::epsilon() * std::abs(z);
}

/// Like classify, but a root is on the axis only when |Re z| is within its own error
/// radius. Needed for extreme vectors whose single right root sits at 1e-10 or below.
inline CountReport classify_certified(const RootSet& roots, const CoefficientVector& c) {
    CountReport r;
    r.method = CountMethod::eigensolver;
    r.max_residual = roots.max_residual();
    r.max_scaled_residual = roots.max_scaled_residual();
    for (const Complex& z : roots.roots) {
        const double e = root_error_radius(z, c);
        if (std::abs(z) <= 2.0) r.tol = std::max(r.tol, e);
        if (std::abs(z.real()) <= e) ++r.nu_zero;
        else if (z.real() > 0.0) ++r.nu_plus;
        else ++r.nu_minus;
    }
    r.nu_bar = r.nu_zero + r.nu_plus;
    return r;
}

inline CountReport count_roots(const CoefficientVector& c, double tol = default_axis_tol) {
    return classify(solve_all_roots(c), tol);
}

// ---------------------------------------------------------------------------
// Contour counting

struct ContourRegion {
    enum class Kind { right_half_disk, box };

    Kind kind = Kind::right_half_disk;
    double h = 0.0;          // half disk: Re z >= h
    double radius = 1.25;    // half disk: |z| <= radius
    double x0 = 0, x1 = 0;   // box
    double y0 = 0, y1 = 0;

    /// G_h = {Re z >= h, |z| <= radius}. Right-half roots all satisfy |z| < 1,
    /// so any radius >= 1 captures every root with Re z > h.
    static ContourRegion right_half_disk(double h, double radius = 1.25) {
        if (!(radius > 0.0) || !(std::abs(h) < radius))
            throw DomainError("right_half_disk: need |h| < radius");
        ContourRegion r;
        r.kind = Kind::right_half_disk;
        r.h = h;
        r.radius = radius;
        return r;
    }

    static ContourRegion box(double x0, double x1, double y0, double y1) {
        if (!(x0 < x1) || !(y0 < y1)) throw DomainError("box: empty rectangle");
        ContourRegion r;
        r.kind = Kind::box;
        r.x0 = x0;
        r.x1 = x1;
        r.y0 = y0;
        r.y1 = y1;
        return r;
    }

    [[nodiscard]] bool contains(Complex z) const {
        if (kind == Kind::box)
            return z.real() > x0 && z.real() < x1 && z.imag() > y0 && z.imag() < y1;
        return z.real() > h && std::abs(z) < radius;
    }

    /// Distance from z to the boundary curve.
    [[nodiscard]] double boundary_distance(Complex z) const {
        auto seg = [](Complex p, Complex a, Complex b) {
            const Complex d = b - a;
            double s = std::real((p - a) * std::conj(d)) / std::norm(d);
            s = std::clamp(s, 0.0, 1.0);
            return std::abs(p - (a + s * d));
        };
        if (kind == Kind::box) {
            const Complex a{x0, y0}, b{x1, y0}, cc{x1, y1}, d{x0, y1};
            return std::min({seg(z, a, b), seg(z, b, cc), seg(z, cc, d), seg(z, d, a)});
        }
        const double yh = std::sqrt(radius * radius - h * h);
        const double dl = seg(z, Complex{h, -yh}, Complex{h, yh});
        const double phi0 = std::asin(std::clamp(h / radius, -1.0, 1.0));
        // arc spans angles in [-(pi/2 - phi0), pi/2 - phi0]
        const double half = std::numbers::pi / 2.0 - phi0;
        const double ang = std::arg(z);
        double da;
        if (std::abs(ang) <= half) da = std::abs(std::abs(z) - radius);
        else da = std::min(std::abs(z - std::polar(radius, half)), std::abs(z - std::polar(radius, -half)));
        return std::min(dl, da);
    }
};

struct ContourResult {
    int count = 0;
    double raw = 0.0;
    long evaluations = 0;
};

namespace detail {

struct ContourSample {
    Complex f;      // P - 1
    Complex integrand;  // P' / (P - 1) * dz/ds
};

class WindingIntegrator {
public:
    WindingIntegrator(const CoefficientVector& c, int max_depth) : c_(c), max_depth_(max_depth) {}

    template <class Curve>
    double edge(const Curve& curve, int panels) {
        double total = 0.0;
        double s_prev = 0.0;
        ContourSample a = sample(curve, 0.0);
        for (int k = 1; k <= panels; ++k) {
            const double s = static_cast<double>(k) / panels;
            ContourSample b = sample(curve, s);
            total += panel(curve, s_prev, s, a, b, 0);
            s_prev = s;
            a = b;
        }
        return total;
    }

    [[nodiscard]] long evaluations() const { return evals_; }

private:
    template <class Curve>
    ContourSample sample(const Curve& curve, double s) {
        ++evals_;
        const auto [z, dz] = curve(s);
        const PolyEval pe = eval_p_with_derivative(z, c_);
        const Complex f = pe.value - 1.0;
        if (f == 0.0) throw ContourError("count_by_contour: root on the contour", 0.0);
        return {f, pe.dvalue / f * dz};
    }

    // Imaginary part of the trapezoid integral over [sa, sb]; the exact value is the
    // argument increment of P - 1, whose principal value we know from the endpoints.
    template <class Curve>
    double panel(const Curve& curve, double sa, double sb, const ContourSample& a,
                 const ContourSample& b, int depth) {
        const double hs = sb - sa;
        const double coarse = std::imag(0.5 * (a.integrand + b.integrand) * hs);
        const double sm = 0.5 * (sa + sb);
        const ContourSample m = sample(curve, sm);
        const double fine = std::imag(0.25 * (a.integrand + 2.0 * m.integrand + b.integrand) * hs);
        const double arg_ab = std::arg(b.f / a.f);
        const bool resolved = std::abs(arg_ab) <= std::numbers::pi / 4.0 &&
                              std::abs(fine - arg_ab) <= 1e-3 && std::abs(fine - coarse) <= 1e-2;
        if (resolved || depth >= max_depth_) return fine;
        return panel(curve, sa, sm, a, m, depth + 1) + panel(curve, sm, sb, m, b, depth + 1);
    }

    const CoefficientVector& c_;
    int max_depth_;
    long evals_ = 0;
};

struct LineCurve {
    Complex a, b;
    std::pair<Complex, Complex> operator()(double s) const { return {a + s * (b - a), b - a}; }
};

struct ArcCurve {
    double radius, phi0, phi1;
    std::pair<Complex, Complex> operator()(double s) const {
        const double phi = phi0 + s * (phi1 - phi0);
        const Complex z = std::polar(radius, phi);
        return {z, Complex{0.0, 1.0} * z * (phi1 - phi0)};
    }
};

inline double winding_value(const CoefficientVector& c, const ContourRegion& region, int panels,
                            long& evaluations) {
    WindingIntegrator wi(c, 48);
    double total = 0.0;
    if (region.kind == ContourRegion::Kind::box) {
        const Complex p0{region.x0, region.y0}, p1{region.x1, region.y0};
        const Complex p2{region.x1, region.y1}, p3{region.x0, region.y1};
        total += wi.edge(LineCurve{p0, p1}, panels);
        total += wi.edge(LineCurve{p1, p2}, panels);
        total += wi.edge(LineCurve{p2, p3}, panels);
        total += wi.edge(LineCurve{p3, p0}, panels);
    } else {
        const double yh = std::sqrt(region.radius * region.radius - region.h * region.h);
        const double half = std::atan2(yh, region.h);
        total += wi.edge(ArcCurve{region.radius, -half, half}, 2 * panels);
        total += wi.edge(LineCurve{Complex{region.h, yh}, Complex{region.h, -yh}}, panels);
    }
    evaluations += wi.evaluations();
    return total / (2.0 * std::numbers::pi);
}

}  // namespace detail

/// Number of roots of P(z; c) = 1 inside the region, by the argument principle:
/// (1 / 2 pi i) \oint P' / (P - 1) dz with locally adaptive trapezoid panels.
/// The base panel count doubles until two successive values differ by < 0.05; the
/// value must then lie within 0.25 of an integer, otherwise ContourError is thrown
/// (a root too close to the contour).
inline ContourResult count_by_contour_detailed(const CoefficientVector& c, const ContourRegion& region) {
    ContourResult res;
    int panels = 16;
    double prev = detail::winding_value(c, region, panels, res.evaluations);
    for (int level = 0; level < 8; ++level) {
        panels *= 2;
        const double cur = detail::winding_value(c, region, panels, res.evaluations);
        if (std::abs(cur - prev) < 0.05) {
            res.raw = cur;
            res.count = static_cast<int>(std::lround(cur));
            if (std::abs(cur - res.count) > 0.25)
                throw ContourError("count_by_contour: winding value not integer-like", cur);
            return res;
        }
        prev = cur;
    }
    throw ContourError("count_by_contour: quadrature did not settle", prev);
}

inline int count_by_contour(const CoefficientVector& c, const ContourRegion& region) {
    return count_by_contour_detailed(c, region).count;
}

/// Smallest distance from any root to the region boundary, from the root oracle.
/// Callers use it to pick h before contour counting.
inline double contour_clearance(const RootSet& roots, const ContourRegion& region) {
    double d = std::numeric_limits<double>::infinity();
    for (const Complex& z : roots.roots) d = std::min(d, region.boundary_distance(z));
    return d;
}

// ---------------------------------------------------------------------------
// Special roots for gamma < 1

/// The unique root of P(x; c) = 1 in (0, 1). Requires gamma < 1.
inline double positive_real_root(const CoefficientVector& c) {
    if (!(c.gamma() < 1.0)) throw DomainError("positive_real_root: requires gamma < 1");
    auto f = [&](double x) {
        double p = 1.0;
        for (double ck : c.entries()) p *= (x + ck);
        return p - 1.0;
    };
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(hi, 1e-300); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0) lo = mid;
        else hi = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 5; ++it) {
        const PolyEval pe = eval_p_with_derivative(Complex{x, 0.0}, c);
        const double step = (pe.value.real() - 1.0) / pe.dvalue.real();
        const double next = x - step;
        if (!(next >= lo && next <= hi)) break;
        if (std::abs(f(next)) > std::abs(f(x))) break;
        x = next;
    }
    return x;
}

/// Y(c) > 0 with prod (Y^2 + c_k^2) = 1: the only modulus-one point of P on the
/// positive imaginary axis. Requires gamma < 1.
inline double imaginary_axis_modulus_root(const CoefficientVector& c) {
    if (!(c.gamma() < 1.0)) throw DomainError("imaginary_axis_modulus_root: requires gamma < 1");
    auto g = [&](double y) {
        double s = 0.0;
        for (double ck : c.entries()) s += std::log(y * y + ck * ck);
        return s;
    };
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-16 * std::max(hi, 1e-300); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) < 0.0) lo = mid;
        else hi = mid;
    }
    double y = 0.5 * (lo + hi);
    for (int it = 0; it < 5; ++it) {
        double dg = 0.0;
        for (double ck : c.entries()) dg += 2.0 * y / (y * y + ck * ck);
        const double next = y - g(y) / dg;
        if (!(next >= lo && next <= hi) || std::abs(g(next)) > std::abs(g(y))) break;
        y = next;
    }
    return y;
}

}  // namespace dcroots
