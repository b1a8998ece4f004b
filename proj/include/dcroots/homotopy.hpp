#pragma once

// Piecewise-exponential path from c0 to the multi-singleton, root-trajectory tracing
// along it, and root counts as functions of the path parameter.
//
// On each segment only the extreme values move: d_0 grows like exp(m_q t), d_q decays
// like exp(-m_0 t), so the geometric mean is constant. A segment ends when one or
// both extremes meet their neighbour, which lowers the diversity q.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bounds.hpp"
#include "core.hpp"
#include "poly.hpp"
#include "roots.hpp"

namespace dcroots {

enum class CaseTag { I, II, IIIa, IIIb, IV };

inline const char* to_string(CaseTag c) {
    switch (c) {
        case CaseTag::I: return "I";
        case CaseTag::II: return "II";
        case CaseTag::IIIa: return "III-a";
        case CaseTag::IIIb: return "III-b";
        case CaseTag::IV: return "IV";
    }
    return "?";
}

struct Segment {
    CaseTag case_tag = CaseTag::IV;
    double tau = 0.0;
    DMultiset start;
    DMultiset end;
    /// log-rate of each start value: m_q for d_0, -m_0 for d_q, 0 in between
    /// (q = 1: m_1 and -m_0).
    std::vector<double> rates;
};

/// Relative tolerance under which tau_* and tau^* count as equal (Case III).
inline constexpr double case_tie_tol = 1e-12;

/// One segment from d (q >= 1). Merged values coincide exactly in the end multiset.
inline Segment plan_segment(const DMultiset& d) {
    if (d.q() == 0) throw AlreadyIdealError("plan_segment: vector is already the multi-singleton");
    const auto& v = d.values();
    const auto& m = d.mults();
    const std::size_t q = d.q();
    Segment s;
    s.start = d;
    s.rates.assign(q + 1, 0.0);
    s.rates.front() = m[q];
    s.rates.back() = -static_cast<double>(m[0]);

    if (q == 1) {
        s.case_tag = CaseTag::IV;
        s.tau = std::log(v[1] / v[0]) / d.n();
        s.end = DMultiset({d.gamma()}, {d.n()});
        return s;
    }

    const double tau_low = std::log(v[1] / v[0]) / m[q];        // d_0 reaches d_1
    const double tau_high = std::log(v[q] / v[q - 1]) / m[0];   // d_q reaches d_{q-1}
    const bool tie = std::abs(tau_low - tau_high) <= case_tie_tol * std::max(tau_low, tau_high);

    auto interior = [&](std::size_t from, std::size_t to, std::vector<double>& vals, std::vector<int>& mults) {
        for (std::size_t j = from; j <= to; ++j) {
            vals.push_back(v[j]);
            mults.push_back(m[j]);
        }
    };

    std::vector<double> vals;
    std::vector<int> mults;
    if (!tie && tau_low < tau_high) {
        const double top = v[q] * std::exp(-m[0] * tau_low);
        if (top > v[q - 1]) {
            s.case_tag = CaseTag::I;
            s.tau = tau_low;
            vals.push_back(v[1]);
            mults.push_back(m[0] + m[1]);
            if (q >= 3) interior(2, q - 1, vals, mults);
            vals.push_back(top);
            mults.push_back(m[q]);
            s.end = DMultiset(std::move(vals), std::move(mults));
            return s;
        }
    } else if (!tie) {
        const double bottom = v[0] * std::exp(m[q] * tau_high);
        if (bottom < v[1]) {
            s.case_tag = CaseTag::II;
            s.tau = tau_high;
            vals.push_back(bottom);
            mults.push_back(m[0]);
            if (q >= 3) interior(1, q - 2, vals, mults);
            vals.push_back(v[q - 1]);
            mults.push_back(m[q - 1] + m[q]);
            s.end = DMultiset(std::move(vals), std::move(mults));
            return s;
        }
    }

    // both extremes meet their neighbours at once
    s.tau = std::min(tau_low, tau_high);
    if (q == 2) {
        s.case_tag = CaseTag::IIIb;
        s.end = DMultiset({v[1]}, {d.n()});
        return s;
    }
    s.case_tag = CaseTag::IIIa;
    vals.push_back(v[1]);
    mults.push_back(m[0] + m[1]);
    if (q >= 4) interior(2, q - 2, vals, mults);
    vals.push_back(v[q - 1]);
    mults.push_back(m[q - 1] + m[q]);
    s.end = DMultiset(std::move(vals), std::move(mults));
    return s;
}

/// Current values at local time t, no range check (t may lie slightly outside [0, tau]).
inline std::vector<double> segment_values_unchecked(const Segment& s, double t) {
    std::vector<double> vals = s.start.values();
    vals.front() *= std::exp(s.rates.front() * t);
    vals.back() *= std::exp(s.rates.back() * t);
    return vals;
}

inline CoefficientVector expand_values(const std::vector<double>& vals, const std::vector<int>& mults) {
    std::vector<double> e;
    for (std::size_t j = 0; j < vals.size(); ++j) e.insert(e.end(), static_cast<std::size_t>(mults[j]), vals[j]);
    return CoefficientVector(std::move(e));
}

/// c(t) on one segment; t = 0 and t = tau return start and end exactly.
inline CoefficientVector eval_path(const Segment& s, double t) {
    if (!(t >= 0.0) || t > s.tau) throw RangeError("eval_path: t outside [0, tau]");
    if (t == 0.0) return from_multiset(s.start);
    if (t == s.tau) return from_multiset(s.end);
    return expand_values(segment_values_unchecked(s, t), s.start.mults());
}

inline CoefficientVector eval_path_unchecked(const Segment& s, double t) {
    return expand_values(segment_values_unchecked(s, t), s.start.mults());
}

struct PathPlan {
    CoefficientVector start;
    std::vector<Segment> segments;
    std::vector<double> offsets;  // global start time of each segment
    double T = 0.0;

    [[nodiscard]] std::size_t p() const { return segments.size(); }

    /// Segment index containing global time t (the earlier one at a join).
    [[nodiscard]] std::size_t locate(double t) const {
        for (std::size_t i = 0; i < segments.size(); ++i)
            if (t <= offsets[i] + segments[i].tau) return i;
        return segments.empty() ? 0 : segments.size() - 1;
    }

    [[nodiscard]] CoefficientVector at(double t) const {
        if (!(t >= 0.0) || t > T) throw RangeError("PathPlan::at: t outside [0, T]");
        if (segments.empty()) return start;
        if (t == 0.0) return start;
        const std::size_t i = locate(t);
        const double local = std::clamp(t - offsets[i], 0.0, segments[i].tau);
        return eval_path(segments[i], local);
    }

    [[nodiscard]] CoefficientVector finish() const {
        return segments.empty() ? start : from_multiset(segments.back().end);
    }
};

/// Segments until the diversity reaches 0. c0 = c* gives an empty plan.
inline PathPlan plan_full_path(const CoefficientVector& c0) {
    PathPlan plan;
    plan.start = c0;
    DMultiset d = to_multiset(c0);
    while (d.q() > 0) {
        Segment s = plan_segment(d);
        plan.offsets.push_back(plan.T);
        plan.T += s.tau;
        d = s.end;
        plan.segments.push_back(std::move(s));
    }
    return plan;
}

// ---------------------------------------------------------------------------
// Root velocity

/// w'(t) = -F_t / F_z for F(z, t) = P(z; c(t)) - 1 at local time t.
inline Complex velocity(const Segment& s, double t, Complex w) {
    const auto vals = segment_values_unchecked(s, t);
    const auto& m = s.start.mults();
    Complex ft{0.0, 0.0};
    Complex fz{0.0, 0.0};
    for (std::size_t j = 0; j < vals.size(); ++j) {
        const Complex inv = 1.0 / (w + vals[j]);
        fz += static_cast<double>(m[j]) * inv;
        ft += static_cast<double>(m[j]) * s.rates[j] * vals[j] * inv;
    }
    return -ft / fz;
}

/// The same velocity written as m_0 m_q (d_q - d_0) / H(w) (q = 1: (m_0 m_1 / n)(d_1 - d_0)/(1 + d~/w)).
inline Complex velocity_closed_form(const Segment& s, double t, Complex w) {
    const auto vals = segment_values_unchecked(s, t);
    const auto& m = s.start.mults();
    const std::size_t q = vals.size() - 1;
    const double m0 = m[0], mq = m[q];
    const double d0 = vals[0], dq = vals[q];
    const double dtilde = (mq * d0 + m0 * dq) / (m0 + mq);
    if (q == 1) return (m0 * mq / (m0 + mq)) * (dq - d0) / (1.0 + dtilde / w);
    Complex h = (m0 + mq) * (1.0 + dtilde / w);
    for (std::size_t j = 1; j < q; ++j) h += static_cast<double>(m[j]) * (w + d0) * (w + dq) / (w * (w + vals[j]));
    return m0 * mq * (dq - d0) / h;
}

// ---------------------------------------------------------------------------
// Tracing

struct TrajectorySample {
    double t;
    Complex w;
    double residual;
};

struct Crossing {
    double t_star;
    double y;     // Im w at the crossing, > 0 (the conjugate partner sits at -y)
    int jump;     // +2 left to right, -2 right to left
    int root_id;
    bool paired = false;  // the conjugate trajectory crossed at the same time
};

/// A root arriving on the axis exactly at t = T (ideal vectors with cos(2 pi k/n) = gamma).
struct AxisTouch {
    double t;
    Complex w;
    int root_id;
};

struct Trajectory {
    int id = 0;
    std::vector<TrajectorySample> samples;
    std::vector<Crossing> crossings;
};

struct TraceOptions {
    double dt_max = 0.02;
    double dt_min = 1e-12;
    double axis_tol = 1e-10;     // crossing refinement target for |Re w|
    bool ift_step_cap = false;   // cap steps by safety * r (astronomically small in practice)
    double safety = 0.25;
    int newton_iterations = 30;
};

struct TraceStats {
    long accepted = 0;
    long rejected = 0;
    double max_corrector_move = 0.0;  // max |w_corrected - w_predicted|
    double max_residual = 0.0;
    long wall_checks = 0;
    long wall_violations = 0;
};

struct TraceResult {
    std::vector<Trajectory> trajectories;
    std::vector<Crossing> crossings;  // upper half-plane member of each pair, sorted by t_star
    std::vector<AxisTouch> touches;
    TraceStats stats;
    double T = 0.0;
};

namespace detail {

struct SegmentClock {
    const PathPlan* plan;
    std::size_t index;
    [[nodiscard]] const Segment& seg() const { return plan->segments[index]; }
    [[nodiscard]] double offset() const { return plan->offsets[index]; }
    [[nodiscard]] CoefficientVector c(double local) const {
        const Segment& s = seg();
        return eval_path(s, std::clamp(local, 0.0, s.tau));
    }
};

/// Newton on P(w; c) = 1 from w. Returns nullopt if it does not settle.
inline std::optional<Complex> newton_correct(Complex w, const CoefficientVector& c, int max_iter) {
    for (int it = 0; it < max_iter; ++it) {
        const PolyEval pe = eval_p_with_derivative(w, c);
        const Complex step = (pe.value - 1.0) / pe.dvalue;
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) return std::nullopt;
        w -= step;
        if (std::abs(step) <= 1e-15 * (1.0 + std::abs(w))) {
            if (std::abs(eval_p(w, c) - 1.0) <= 1e-10) return w;
            return std::nullopt;
        }
    }
    if (std::abs(eval_p(w, c) - 1.0) <= 1e-12) return w;
    return std::nullopt;
}

/// Continue a single root from (t0, w0) to t1 on one segment with small RK-free
/// Euler + Newton substeps. Used for bisection and back-checks, not for the main march.
inline std::optional<Complex> continue_root(const SegmentClock& clk, double t0, Complex w0, double t1, int substeps,
                                            int newton_iter) {
    Complex w = w0;
    double t = t0;
    const double h = (t1 - t0) / substeps;
    for (int k = 0; k < substeps; ++k) {
        const double tn = (k + 1 == substeps) ? t1 : t + h;
        const Complex pred = w + (tn - t) * velocity(clk.seg(), t, w);
        auto corr = newton_correct(pred, clk.c(tn), newton_iter);
        if (!corr) return std::nullopt;
        w = *corr;
        t = tn;
    }
    return w;
}

inline double nearest_other(const std::vector<Complex>& roots, std::size_t self) {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < roots.size(); ++j)
        if (j != self) d = std::min(d, std::abs(roots[j] - roots[self]));
    return d;
}

}  // namespace detail

/// Follows every root in the watch band Re w >= -D_*(t)/3 along the plan.
///
/// Each step: Euler predictor with the analytic velocity, Newton corrector, then a warm
/// re-solve of all n roots at the new time and nearest-neighbour matching. A step is
/// halved when a corrected root is not clearly closer to its match than to any other
/// root, or when two trajectories claim the same root. Roots appearing in the band are
/// started as new trajectories (back-checked for a crossing inside the step).
inline TraceResult trace_roots(const PathPlan& plan, const TraceOptions& opt = {}) {
    if (!(opt.dt_max > 0.0)) throw DomainError("trace_roots: dt_max must be positive");
    TraceResult out;
    out.T = plan.T;
    const CoefficientVector& c0 = plan.start;
    const int n = static_cast<int>(c0.size());

    std::vector<Complex> all = solve_all_roots(c0).roots;
    struct RawEvent {
        double t;
        Complex w;
        int jump;
        int root_id;
    };
    std::vector<RawEvent> raw_events;
    auto band_edge = [](const CoefficientVector& c) { return -c.min() / 3.0; };

    struct Active {
        std::size_t traj;
        Complex w;
    };
    std::vector<Active> active;
    auto start_trajectory = [&](double t, Complex w, const CoefficientVector& c) {
        Trajectory tr;
        tr.id = static_cast<int>(out.trajectories.size());
        tr.samples.push_back({t, w, std::abs(eval_p(w, c) - 1.0)});
        out.trajectories.push_back(std::move(tr));
        return out.trajectories.size() - 1;
    };
    for (const Complex& z : all)
        if (z.real() >= band_edge(c0)) active.push_back({start_trajectory(0.0, z, c0), z});

    // Wall push check: inside |Re w| <= eps, delta <= |Im w| <= 1 the velocity points right.
    double eps_wall = 0.0, delta_wall = 0.0;
    if (c0.gamma() < 1.0) {
        eps_wall = epsilon_wall(c0.gamma(), c0.min(), c0.max(), n);
        delta_wall = box_delta(c0.gamma(), std::sqrt(3.0) * c0.max(), n);
    }
    auto wall_check = [&](const Segment& s, double local, Complex w) {
        if (eps_wall <= 0.0) return;
        if (std::abs(w.real()) <= eps_wall && std::abs(w.imag()) >= delta_wall && std::abs(w.imag()) <= 1.0) {
            ++out.stats.wall_checks;
            if (!(velocity(s, local, w).real() > 0.0)) ++out.stats.wall_violations;
        }
    };

    double step_cap = opt.dt_max;
    if (opt.ift_step_cap && c0.gamma() < 1.0 && !c0.is_ideal()) {
        const IFTConstants k = ift_constants(c0, 1.0);
        step_cap = std::min(step_cap, opt.safety * k.r);
    }

    for (std::size_t si = 0; si < plan.segments.size(); ++si) {
        detail::SegmentClock clk{&plan, si};
        const Segment& seg = clk.seg();
        const double off = clk.offset();
        double t = 0.0;
        double h = step_cap;
        while (t < seg.tau) {
            const double tn = (seg.tau - t <= h) ? seg.tau : t + h;
            const CoefficientVector cn = clk.c(tn);
            const double edge_n = band_edge(cn);

            bool ok = true;
            std::vector<Complex> corrected(active.size());
            double step_move = 0.0;
            for (std::size_t a = 0; a < active.size() && ok; ++a) {
                const Complex pred = active[a].w + (tn - t) * velocity(seg, t, active[a].w);
                auto corr = detail::newton_correct(pred, cn, opt.newton_iterations);
                if (!corr) {
                    ok = false;
                    break;
                }
                corrected[a] = *corr;
                step_move = std::max(step_move, std::abs(*corr - pred));
            }

            std::vector<Complex> fresh;
            std::vector<int> claimed;
            if (ok) {
                // predicted seeds for the warm re-solve
                std::vector<Complex> seeds = all;
                fresh = solve_all_roots_from(cn, seeds).roots;
                claimed.assign(fresh.size(), -1);
                for (std::size_t a = 0; a < active.size() && ok; ++a) {
                    std::size_t best = 0;
                    double bd = std::numeric_limits<double>::infinity();
                    for (std::size_t j = 0; j < fresh.size(); ++j) {
                        const double dj = std::abs(fresh[j] - corrected[a]);
                        if (dj < bd) {
                            bd = dj;
                            best = j;
                        }
                    }
                    const double sep = detail::nearest_other(fresh, best);
                    const double moved = std::abs(corrected[a] - active[a].w);
                    // the corrected root must be the fresh root, and the move must be
                    // small against the local root spacing
                    if (bd > 1e-8 * (1.0 + std::abs(fresh[best])) || moved > 0.25 * sep || claimed[best] >= 0) {
                        ok = false;
                        break;
                    }
                    claimed[best] = static_cast<int>(a);
                }
            }

            // a root that enters the band at Re >= 0 must have crossed within this step
            std::vector<std::pair<std::size_t, Complex>> spawns;  // (fresh index, position at t)
            if (ok) {
                for (std::size_t j = 0; j < fresh.size() && ok; ++j) {
                    if (claimed[j] >= 0 || fresh[j].real() < edge_n) continue;
                    auto back = detail::continue_root(clk, tn, fresh[j], t, 16, opt.newton_iterations);
                    if (!back) ok = false;
                    else spawns.emplace_back(j, *back);
                }
            }

            if (!ok) {
                ++out.stats.rejected;
                h *= 0.5;
                if (h < opt.dt_min)
                    throw TracerError("trace_roots: step fell below dt_min at t = " + std::to_string(off + t));
                continue;
            }

            // accept
            ++out.stats.accepted;
            out.stats.max_corrector_move = std::max(out.stats.max_corrector_move, step_move);

            const bool final_step = (si + 1 == plan.segments.size()) && tn == seg.tau;
            auto record_crossing = [&](std::size_t traj, double ta, Complex wa, double tb, Complex wb) {
                auto& tr = out.trajectories[traj];
                if (final_step && std::abs(wb.real()) <= default_axis_tol) {
                    out.touches.push_back({off + tb, wb, tr.id});
                    return;
                }
                // bisection on Re w over [ta, tb]; Re w changes sign there
                double lo = ta, hi = tb;
                Complex wlo = wa;
                Complex wm = wa;
                double tm = ta;
                for (int it = 0; it < 200; ++it) {
                    tm = 0.5 * (lo + hi);
                    auto r = detail::continue_root(clk, lo, wlo, tm, 2, opt.newton_iterations);
                    if (!r) break;
                    wm = *r;
                    if (std::abs(wm.real()) <= opt.axis_tol || hi - lo <= 1e-15 * (1.0 + hi)) break;
                    if ((wm.real() < 0.0) == (wlo.real() < 0.0)) {
                        lo = tm;
                        wlo = wm;
                    } else {
                        hi = tm;
                    }
                }
                wall_check(seg, tm, wm);
                tr.samples.push_back({off + tm, wm, std::abs(eval_p(wm, clk.c(tm)) - 1.0)});
                raw_events.push_back({off + tm, wm, wa.real() < 0.0 ? 2 : -2, tr.id});
            };

            std::vector<Active> next;
            for (std::size_t a = 0; a < active.size(); ++a) {
                const Complex wa = active[a].w;
                const Complex wb = corrected[a];
                if ((wa.real() < 0.0) != (wb.real() < 0.0)) record_crossing(active[a].traj, t, wa, tn, wb);
                auto& tr = out.trajectories[active[a].traj];
                const double res = std::abs(eval_p(wb, cn) - 1.0);
                out.stats.max_residual = std::max(out.stats.max_residual, res);
                tr.samples.push_back({off + tn, wb, res});
                wall_check(seg, tn, wb);
                if (wb.real() >= edge_n) next.push_back({active[a].traj, wb});
            }
            for (const auto& [j, wback] : spawns) {
                const std::size_t traj = start_trajectory(off + t, wback, clk.c(t));
                if ((wback.real() < 0.0) != (fresh[j].real() < 0.0)) record_crossing(traj, t, wback, tn, fresh[j]);
                auto& tr = out.trajectories[traj];
                tr.samples.push_back({off + tn, fresh[j], std::abs(eval_p(fresh[j], cn) - 1.0)});
                next.push_back({traj, fresh[j]});
            }
            active = std::move(next);
            // keep trajectory samples time-ordered after crossing insertions
            for (const auto& ac : active) {
                auto& smp = out.trajectories[ac.traj].samples;
                std::stable_sort(smp.begin(), smp.end(),
                                 [](const TrajectorySample& x, const TrajectorySample& y) { return x.t < y.t; });
            }
            all = std::move(fresh);
            t = tn;
            h = std::min(step_cap, 2.0 * h);
        }
    }
    // one event per conjugate pair: keep the upper member, mark it paired when the
    // lower member crossed at the same time and conjugate position
    for (const RawEvent& e : raw_events) {
        if (!(e.w.imag() > 0.0)) continue;
        Crossing cr{e.t, e.w.imag(), e.jump, e.root_id, false};
        for (const RawEvent& f : raw_events)
            if (f.w.imag() < 0.0 && f.jump == e.jump && std::abs(f.t - e.t) <= 1e-6 &&
                std::abs(f.w - std::conj(e.w)) <= 1e-6)
                cr.paired = true;
        out.trajectories[static_cast<std::size_t>(e.root_id)].crossings.push_back(cr);
        out.crossings.push_back(cr);
    }
    std::sort(out.crossings.begin(), out.crossings.end(),
              [](const Crossing& a, const Crossing& b) { return a.t_star < b.t_star; });
    return out;
}

// ---------------------------------------------------------------------------
// Counts along the path

struct PathCount {
    double t;
    CountReport counts;
};

/// Counts at a uniform grid of `samples` times plus segment endpoints and crossing
/// times +- 1e-6. Throws TheoremViolation if nu_plus or nu_bar decreases, or if a jump
/// is not accounted for by +2 per crossing pair inside the interval.
/// Without `tol`, roots are classified against their own error radii (classify_certified).
inline std::vector<PathCount> counts_along_path(const PathPlan& plan, const TraceResult& trace, int samples,
                                                std::optional<double> tol = std::nullopt) {
    if (samples < 2) throw DomainError("counts_along_path: samples must be >= 2");
    std::vector<double> ts;
    for (int k = 0; k < samples; ++k) ts.push_back(plan.T * k / (samples - 1));
    for (std::size_t i = 0; i < plan.segments.size(); ++i) {
        ts.push_back(plan.offsets[i]);
        ts.push_back(plan.offsets[i] + plan.segments[i].tau);
    }
    for (const Crossing& cr : trace.crossings) {
        ts.push_back(std::max(0.0, cr.t_star - 1e-6));
        ts.push_back(std::min(plan.T, cr.t_star + 1e-6));
    }
    for (double& t : ts) t = std::clamp(t, 0.0, plan.T);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

    std::vector<PathCount> out;
    out.reserve(ts.size());
    std::vector<Complex> seeds;
    for (double t : ts) {
        const CoefficientVector c = plan.at(t);
        RootSet rs = seeds.empty() ? solve_all_roots(c) : solve_all_roots_from(c, seeds);
        seeds = rs.roots;
        out.push_back({t, tol ? classify(rs, *tol) : classify_certified(rs, c)});
    }
    for (std::size_t i = 1; i < out.size(); ++i) {
        const CountReport& a = out[i - 1].counts;
        const CountReport& b = out[i].counts;
        if (b.nu_plus < a.nu_plus || b.nu_bar < a.nu_bar)
            throw TheoremViolation("counts_along_path: count decreased between t = " + std::to_string(out[i - 1].t) +
                                   " and t = " + std::to_string(out[i].t));
        if (a.nu_zero > 0 || b.nu_zero > 0) continue;
        int expected = 0;
        for (const Crossing& cr : trace.crossings)
            if (cr.t_star > out[i - 1].t && cr.t_star <= out[i].t) expected += cr.jump;
        if (b.nu_plus - a.nu_plus != expected)
            throw TheoremViolation("counts_along_path: jump of " + std::to_string(b.nu_plus - a.nu_plus) +
                                   " without matching crossings near t = " + std::to_string(out[i].t));
    }
    return out;
}

inline std::vector<PathCount> counts_along_path(const PathPlan& plan, int samples,
                                                std::optional<double> tol = std::nullopt) {
    return counts_along_path(plan, trace_roots(plan), samples, tol);
}

/// A time t with nu_plus(c(t)) = k, between the sorted crossing events.
inline double find_t_for_count(const PathPlan& plan, const TraceResult& trace, int k) {
    if (k < 1 || k % 2 == 0) throw DomainError("find_t_for_count: k must be odd and positive");
    auto certified = [](const CoefficientVector& c) { return classify_certified(solve_all_roots(c), c); };
    const int k0 = certified(plan.start).nu_plus;
    const int kmax = certified(plan.finish()).nu_plus;
    if (k < k0 || k > kmax)
        throw DomainError("find_t_for_count: k must lie in [" + std::to_string(k0) + ", " + std::to_string(kmax) + "]");
    std::vector<double> candidates;
    if (k == k0) candidates.push_back(0.0);
    if (k == kmax) candidates.push_back(plan.T);
    std::vector<double> events;
    for (const Crossing& cr : trace.crossings) events.push_back(cr.t_star);
    const std::size_t j = static_cast<std::size_t>((k - k0) / 2);
    // after the j-th crossing and before the (j+1)-th
    if (j >= 1 && j <= events.size()) {
        const double lo = events[j - 1];
        const double hi = j < events.size() ? events[j] : plan.T;
        candidates.push_back(0.5 * (lo + hi));
        candidates.push_back(std::min(plan.T, lo + 1e-4 * (hi - lo)));
    }
    for (double t : candidates) {
        const auto r = certified(plan.at(t));
        if (r.nu_plus == k && r.nu_zero == 0) return t;
    }
    for (double t : candidates)
        if (certified(plan.at(t)).nu_plus == k) return t;
    throw TracerError("find_t_for_count: no confirmed time for k = " + std::to_string(k));
}

}  // namespace dcroots
