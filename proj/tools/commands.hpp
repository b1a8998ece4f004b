#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <dcroots/dcroots.hpp>

namespace dcroots::cli {

enum ExitCode { ok = 0, usage = 2, violation = 3, numerical = 4 };

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    std::optional<int> n;
    std::optional<double> gamma;
    std::optional<double> alpha;
    std::optional<double> beta;
    std::vector<double> c, a, b;
    std::string input;
    bool ideal = false;
    bool extremal = false;
    std::optional<int> k;
    int trials = 100;
    int n_max = 10;
    std::uint64_t seed = 0;
    double spread = 4.0;
    std::string out;
    std::string format = "json";
    std::string plot;
    std::optional<double> tol;
    bool mechanics_only = false;
    double safety = 0.25;
    int samples = 50;
    std::string replay;
    std::string replay_out = "dcroots_replay.json";
    bool inject_mutation = false;
};

// ---------------------------------------------------------------------------
// Output helpers

inline std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// Writes to --out when given, else stdout.
inline void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.out);
    if (!f) throw UsageError("cannot write " + cfg.out);
    f << text;
}

inline void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream f(p);
    if (!f) throw UsageError("cannot write " + p.string());
    f << text;
}

inline std::string counts_csv_row(const std::string& label, const CountReport& r) {
    return label + "," + std::to_string(r.nu_minus) + "," + std::to_string(r.nu_zero) + "," +
           std::to_string(r.nu_plus) + "," + std::to_string(r.nu_bar) + "\n";
}

// ---------------------------------------------------------------------------
// Input resolution

struct Instance {
    CoefficientVector c;
    std::optional<DCMatrix> matrix;
    std::string source;
};

inline void check_gamma_xor_alpha_beta(const RunConfig& cfg) {
    if (cfg.gamma && (cfg.alpha || cfg.beta)) throw UsageError("give either --gamma or --alpha/--beta, not both");
    if (cfg.alpha.has_value() != cfg.beta.has_value()) throw UsageError("--alpha and --beta go together");
}

inline int require_n(const RunConfig& cfg) {
    if (!cfg.n) throw UsageError("-n is required");
    if (*cfg.n < 2) throw UsageError("-n must be >= 2");
    return *cfg.n;
}

inline Instance resolve_input(const RunConfig& cfg) {
    check_gamma_xor_alpha_beta(cfg);
    int sources = 0;
    sources += !cfg.c.empty();
    sources += !cfg.a.empty() || !cfg.b.empty();
    sources += !cfg.input.empty();
    sources += cfg.ideal;
    sources += cfg.extremal;
    if (sources > 1) throw UsageError("give one input: --c, --a/--b, --input, --ideal or --extremal");

    if (!cfg.c.empty()) return {CoefficientVector(cfg.c), std::nullopt, "c"};
    if (!cfg.a.empty() || !cfg.b.empty()) {
        DCMatrix m(cfg.a, cfg.b);
        return {reduce_matrix(m).c, m, "matrix"};
    }
    if (!cfg.input.empty()) {
        std::ifstream f(cfg.input);
        if (!f) throw UsageError("cannot read " + cfg.input);
        Json j;
        try {
            j = Json::parse(f);
        } catch (const nlohmann::json::exception& e) {
            throw UsageError("malformed JSON in " + cfg.input + ": " + e.what());
        }
        if (j.contains("c")) j = j.at("c");
        if (j.contains("entries")) return {coefficient_vector_from_json(j), std::nullopt, "file"};
        if (j.contains("values")) return {from_multiset(multiset_from_json(j)), std::nullopt, "file"};
        if (j.contains("a")) {
            DCMatrix m = matrix_from_json(j);
            return {reduce_matrix(m).c, m, "file"};
        }
        throw UsageError(cfg.input + ": expected \"entries\", \"values\" or \"a\"/\"b\"");
    }
    const int n = require_n(cfg);
    if (cfg.ideal || cfg.extremal) {
        if (!cfg.gamma) throw UsageError("--ideal/--extremal need --gamma");
        if (cfg.ideal) return {CoefficientVector::ideal(static_cast<std::size_t>(n), *cfg.gamma), std::nullopt, "ideal"};
        return {construct_nu_one(n, *cfg.gamma), std::nullopt, "extremal"};
    }
    std::mt19937_64 rng(cfg.seed);
    if (cfg.gamma) {
        if (!(*cfg.gamma > 0.0)) throw UsageError("--gamma must be positive");
        return {sample::random_c(rng, static_cast<std::size_t>(n), *cfg.gamma, cfg.spread), std::nullopt, "random"};
    }
    if (cfg.alpha) {
        if (!(*cfg.alpha > 0.0) || !(*cfg.beta > 0.0)) throw UsageError("--alpha and --beta must be positive");
        DCMatrix m = sample::random_matrix(rng, static_cast<std::size_t>(n), *cfg.alpha, *cfg.beta, cfg.spread);
        return {reduce_matrix(m).c, m, "random-matrix"};
    }
    throw UsageError("no input: give --c, --a/--b, --input, or -n with --gamma or --alpha/--beta");
}

inline CountReport count_with(const RootSet& rs, const CoefficientVector& c, const RunConfig& cfg) {
    return cfg.tol ? classify(rs, *cfg.tol) : classify_certified(rs, c);
}

// ---------------------------------------------------------------------------
// Replay files

inline void write_replay(const RunConfig& cfg, const CoefficientVector& c, const std::vector<std::string>& checks,
                         const std::string& verdict, Json extra = Json::object()) {
    Json j{{"c", to_json(c)}, {"checks", checks}, {"verdict", verdict}, {"mutation", cfg.inject_mutation},
           {"origin", cfg.command}};
    if (cfg.tol) j["tol"] = *cfg.tol;
    for (auto& [k, v] : extra.items()) j[k] = v;
    write_file(cfg.replay_out, j.dump(2) + "\n");
    std::cerr << "replay written to " << cfg.replay_out << "\n";
}

// ---------------------------------------------------------------------------
// count

struct ContourCount {
    std::optional<int> count;
    double h = 0.0;
    double raw = 0.0;
    long evaluations = 0;
};

/// Right-half-plane count by the argument principle on {Re z >= h, |z| <= 1.25}
/// with h below every positive real part. Skipped when a root sits on the axis.
inline ContourCount contour_count(const CoefficientVector& c, const RootSet& rs, double axis_tol) {
    ContourCount out;
    double min_re = std::numeric_limits<double>::infinity();
    double min_pos = std::numeric_limits<double>::infinity();
    for (Complex z : rs.roots) {
        min_re = std::min(min_re, std::abs(z.real()));
        if (z.real() > 0.0) min_pos = std::min(min_pos, z.real());
    }
    if (min_re <= axis_tol) return out;
    out.h = std::min(min_pos / 2.0, 1e-3);
    const auto res = count_by_contour_detailed(c, ContourRegion::right_half_disk(out.h));
    out.count = res.count;
    out.raw = res.raw;
    out.evaluations = res.evaluations;
    return out;
}

inline bool bound_holds(const CountReport& got, const CountReport& ideal, bool mutation) {
    const bool holds = got.nu_plus <= ideal.nu_plus && got.nu_bar <= ideal.nu_bar;
    return mutation ? !holds : holds;
}

inline int cmd_count(const RunConfig& cfg) {
    const Instance in = resolve_input(cfg);
    const CoefficientVector& c = in.c;
    const int n = static_cast<int>(c.size());
    const RootSet rs = solve_all_roots(c);
    const CountReport solver = count_with(rs, c, cfg);
    const CountReport ideal = ideal_counts(n, c.gamma());
    const ContourCount contour = contour_count(c, rs, cfg.tol.value_or(1e-9));
    std::optional<EigenCount> eig;
    if (in.matrix) eig = count_left_eigenvalues(*in.matrix);

    const bool bound_ok = bound_holds(solver, ideal, cfg.inject_mutation);
    bool agree = !contour.count || *contour.count == solver.nu_plus;
    if (eig && eig->zero == 0 && solver.nu_zero == 0) agree = agree && eig->left == solver.nu_plus;

    if (cfg.format == "csv") {
        std::string s = "method,minus,zero,plus,bar\n";
        s += counts_csv_row("eigensolver", solver);
        if (contour.count) s += "contour,,," + std::to_string(*contour.count) + ",\n";
        if (eig) s += "matrix," + std::to_string(eig->right) + "," + std::to_string(eig->zero) + "," +
                      std::to_string(eig->left) + ",\n";
        s += counts_csv_row("ideal", ideal);
        s += std::string("bound,") + (bound_ok ? "PASS" : "FAIL") + ",,,\n";
        emit(cfg, s);
    } else {
        Json j;
        j["source"] = in.source;
        j["n"] = n;
        j["gamma"] = c.gamma();
        j["c"] = to_json(c);
        if (in.matrix) j["matrix"] = to_json(*in.matrix);
        j["roots"] = to_json(rs);
        j["eigensolver"] = to_json(solver);
        Json cj{{"region", "right-half-disk"}, {"h", contour.h}, {"radius", 1.25}};
        if (contour.count) {
            cj["plus"] = *contour.count;
            cj["raw"] = contour.raw;
            cj["evaluations"] = contour.evaluations;
        } else {
            cj["plus"] = nullptr;
            cj["skipped"] = "root on the imaginary axis";
        }
        j["contour"] = cj;
        if (eig)
            j["matrix_eigencount"] = {{"left", eig->left}, {"zero", eig->zero}, {"right", eig->right},
                                      {"digits", eig->digits}};
        j["ideal"] = to_json(ideal);
        j["bound"] = bound_ok ? "PASS" : "FAIL";
        j["agreement"] = agree ? "PASS" : "FAIL";
        emit(cfg, j.dump(2) + "\n");
    }
    if (!bound_ok) {
        write_replay(cfg, c, {"main_theorem"}, "FAIL");
        return violation;
    }
    if (!agree) {
        std::cerr << "count: methods disagree\n";
        return numerical;
    }
    return ok;
}

// ---------------------------------------------------------------------------
// path

inline std::string svg_plot(const PathPlan& plan, const TraceResult& tr) {
    const CoefficientVector& c0 = plan.start;
    const int n = static_cast<int>(c0.size());
    const double scale = 200.0, half = 1.25;
    auto X = [&](double x) { return num((x + half) * scale); };
    auto Y = [&](double y) { return num((half - y) * scale); };
    std::ostringstream s;
    const double size = 2 * half * scale;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (c0.gamma() < 1.0) {
        const double lo = c0.min() / std::sqrt(3.0), hi = c0.max() * std::sqrt(3.0);
        const RegionSpec box = RegionSpec::box(lo, box_delta(c0.gamma(), hi, n));
        const double x0 = box.param("x_min"), x1 = box.param("x_max"), ym = box.param("y_max");
        const double dl = box.param("delta");
        s << "<path fill=\"#dde8f5\" fill-rule=\"evenodd\" d=\"M" << X(x0) << " " << Y(ym) << " L" << X(x1) << " "
          << Y(ym) << " L" << X(x1) << " " << Y(-ym) << " L" << X(x0) << " " << Y(-ym) << " Z M" << X(-dl) << " "
          << Y(dl) << " L" << X(dl) << " " << Y(dl) << " L" << X(dl) << " " << Y(-dl) << " L" << X(-dl) << " "
          << Y(-dl) << " Z\"/>\n";
        const RegionSpec ann = RegionSpec::annulus(inner_radius(c0.gamma(), c0.max(), n), 1.0);
        for (const char* key : {"r_in", "r_out"})
            s << "<circle cx=\"" << X(0) << "\" cy=\"" << Y(0) << "\" r=\"" << num(ann.param(key) * scale)
              << "\" fill=\"none\" stroke=\"#6a8cb3\" stroke-dasharray=\"4 3\"/>\n";
        if (c0.gamma() >= 0.5) {
            const ImprovedAnnulus ia = improved_annulus(c0.gamma(), c0.min());
            for (double r : {ia.r_in, ia.r_out})
                s << "<circle cx=\"" << X(0) << "\" cy=\"" << Y(0) << "\" r=\"" << num(r * scale)
                  << "\" fill=\"none\" stroke=\"#b36a6a\" stroke-dasharray=\"2 2\"/>\n";
        }
    }
    s << "<line x1=\"" << X(-half) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(half) << "\" y2=\"" << Y(0)
      << "\" stroke=\"#999\"/>\n";
    s << "<line x1=\"" << X(0) << "\" y1=\"" << Y(-half) << "\" x2=\"" << X(0) << "\" y2=\"" << Y(half)
      << "\" stroke=\"#999\"/>\n";
    for (const auto& traj : tr.trajectories) {
        s << "<polyline fill=\"none\" stroke=\"#222\" stroke-width=\"1.2\" points=\"";
        for (const auto& smp : traj.samples) s << X(smp.w.real()) << "," << Y(smp.w.imag()) << " ";
        s << "\"/>\n";
    }
    for (const auto& cr : tr.crossings)
        for (double y : {cr.y, -cr.y})
            s << "<circle cx=\"" << X(0) << "\" cy=\"" << Y(y) << "\" r=\"4\" fill=\"#c03030\"/>\n";
    s << "</svg>\n";
    return s.str();
}

inline int cmd_path(const RunConfig& cfg) {
    const Instance in = resolve_input(cfg);
    const CoefficientVector& c0 = in.c;
    if (!(c0.gamma() < 1.0) && !cfg.mechanics_only)
        throw UsageError("path: gamma >= 1 needs --mechanics-only");
    if (cfg.samples < 2) throw UsageError("--samples must be >= 2");
    if (!(cfg.safety > 0.0) || cfg.safety > 1.0) throw UsageError("--safety must lie in (0, 1]");

    const PathPlan plan = plan_full_path(c0);
    TraceOptions opt;
    opt.safety = cfg.safety;
    const TraceResult tr = trace_roots(plan, opt);

    std::vector<PathCount> counts;
    try {
        counts = counts_along_path(plan, tr, cfg.samples, cfg.tol);
    } catch (const TheoremViolation& e) {
        std::cerr << e.what() << "\n";
        write_replay(cfg, c0, {"path_monotone"}, "FAIL");
        return violation;
    }

    Json planj = to_json(plan);
    if (c0.gamma() < 1.0 && !c0.is_ideal()) planj["ift"] = to_json(ift_constants(c0, cfg.safety));
    if (c0.gamma() < 1.0) {
        const int n = static_cast<int>(c0.size());
        const double lo = c0.min() / std::sqrt(3.0), hi = c0.max() * std::sqrt(3.0);
        planj["regions"] = {to_json(RegionSpec::box(lo, box_delta(c0.gamma(), hi, n))),
                            to_json(RegionSpec::annulus(inner_radius(c0.gamma(), c0.max(), n), 1.0))};
    }

    std::string traj_csv = "t,root_id,re,im,residual\n";
    if (plan.p() > 0)
        for (const auto& traj : tr.trajectories)
            for (const auto& smp : traj.samples)
                traj_csv += num(smp.t) + "," + std::to_string(traj.id) + "," + num(smp.w.real()) + "," +
                            num(smp.w.imag()) + "," + num(smp.residual) + "\n";
    std::string cross_csv = "t_star,y_value,jump\n";
    for (const auto& cr : tr.crossings)
        cross_csv += num(cr.t_star) + "," + num(cr.y) + "," + std::to_string(cr.jump) + "\n";
    std::string counts_csv = "t,nu_minus,nu_zero,nu_plus,nu_bar\n";
    for (const auto& pc : counts)
        counts_csv += num(pc.t) + "," + std::to_string(pc.counts.nu_minus) + "," + std::to_string(pc.counts.nu_zero) +
                      "," + std::to_string(pc.counts.nu_plus) + "," + std::to_string(pc.counts.nu_bar) + "\n";

    Json summary{{"n", c0.size()},
                 {"gamma", c0.gamma()},
                 {"T", plan.T},
                 {"segments", plan.p()},
                 {"crossings", tr.crossings.size()},
                 {"touches", tr.touches.size()},
                 {"start_counts", to_json(counts.front().counts)},
                 {"end_counts", to_json(counts.back().counts)},
                 {"monotone", true},
                 {"steps", {{"accepted", tr.stats.accepted}, {"rejected", tr.stats.rejected}}}};

    if (!cfg.out.empty()) {
        const std::filesystem::path dir(cfg.out);
        std::filesystem::create_directories(dir);
        write_file(dir / "plan.json", planj.dump(2) + "\n");
        write_file(dir / "trajectories.csv", traj_csv);
        write_file(dir / "crossings.csv", cross_csv);
        write_file(dir / "counts.csv", counts_csv);
        std::cout << summary.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        std::cout << counts_csv;
    } else {
        summary["plan"] = planj;
        std::cout << summary.dump(2) << "\n";
    }
    if (!cfg.plot.empty()) write_file(cfg.plot, svg_plot(plan, tr));
    return ok;
}

// ---------------------------------------------------------------------------
// verify

struct PropertyTally {
    long pass = 0;
    long fail = 0;
    long skipped = 0;
};

inline const std::vector<std::string>& property_names() {
    static const std::vector<std::string> names{"main_theorem", "oddness", "localization",
                                                "method_agreement", "maclaurin", "path_monotone"};
    return names;
}

enum class Verdict { pass, fail, skip };

/// One property on one instance.
inline Verdict check_property(const std::string& name, const CoefficientVector& c, const RootSet& rs,
                              const RunConfig& cfg) {
    const int n = static_cast<int>(c.size());
    const double g = c.gamma();
    const CountReport counts = count_with(rs, c, cfg);
    if (name == "main_theorem") {
        const CountReport ideal = ideal_counts(n, g);
        bool holds = bound_holds(counts, ideal, cfg.inject_mutation);
        if (g > 1.0) holds = holds && (counts.nu_bar == 0) != cfg.inject_mutation;
        return holds ? Verdict::pass : Verdict::fail;
    }
    if (name == "oddness") {
        if (!(g < 1.0)) return Verdict::skip;
        if (counts.nu_plus % 2 != 1 || counts.nu_bar % 2 != 1) return Verdict::fail;
        int real_right = 0;
        double xr = 0.0;
        for (Complex z : rs.roots)
            if (z.real() >= 0.0 && std::abs(z.imag()) <= 1e-8 * (1.0 + std::abs(z))) {
                ++real_right;
                xr = z.real();
            }
        if (real_right != 1 || !(xr > 0.0 && xr < 1.0)) return Verdict::fail;
        if (std::abs(positive_real_root(c) - xr) > 1e-8) return Verdict::fail;
        const double y = imaginary_axis_modulus_root(c);
        const double d = inner_radius(g, c.max(), n);
        return (y > d && y < 1.0) ? Verdict::pass : Verdict::fail;
    }
    if (name == "localization") {
        if (!(g < 1.0)) return Verdict::skip;
        const double d = inner_radius(g, c.max(), n);
        const RegionSpec box = RegionSpec::box(c.min(), box_delta(g, c.max(), n));
        for (Complex z : rs.roots) {
            if (z.real() >= -c.min() / 3.0 && !(std::abs(z) > d && std::abs(z) < 1.0)) return Verdict::fail;
            if (z.real() < 0.0) continue;
            if (!box.contains(z)) return Verdict::fail;
            if (g >= 0.5) {
                const ImprovedAnnulus ia = improved_annulus(g, c.min());
                if (!ia.contains(z) || !ia.outside_ellipse(z)) return Verdict::fail;
            }
        }
        return Verdict::pass;
    }
    if (name == "method_agreement") {
        const ContourCount cc = contour_count(c, rs, 1e-6);
        if (!cc.count) return Verdict::skip;
        std::vector<double> a(c.vec());
        const EigenCount ec = count_left_eigenvalues(DCMatrix(a, std::vector<double>(a.size(), 1.0)));
        return (*cc.count == counts.nu_plus && ec.left == counts.nu_plus && ec.zero == 0) ? Verdict::pass
                                                                                          : Verdict::fail;
    }
    if (name == "maclaurin") {
        if (c.size() > 25) return Verdict::skip;
        const auto ch = maclaurin_chain(c.entries());
        for (std::size_t k = 1; k < ch.size(); ++k)
            if (ch[k] > ch[k - 1] * (1.0 + 1e-12)) return Verdict::fail;
        if (std::abs(ch.back() - g) > 1e-12 * g) return Verdict::fail;
        const auto [lhs, rhs] = product_bound_check(c.entries());
        return lhs >= rhs * (1.0 - 1e-12) ? Verdict::pass : Verdict::fail;
    }
    if (name == "path_monotone") {
        if (!(g < 1.0) || c.size() > 10) return Verdict::skip;
        const PathPlan plan = plan_full_path(c);
        const TraceResult tr = trace_roots(plan);
        try {
            const auto pc = counts_along_path(plan, tr, 12, cfg.tol);
            const int jumps = pc.back().counts.nu_plus - pc.front().counts.nu_plus;
            if (static_cast<int>(tr.crossings.size()) * 2 != jumps) return Verdict::fail;
        } catch (const TheoremViolation&) {
            return Verdict::fail;
        }
        return Verdict::pass;
    }
    throw UsageError("unknown property " + name);
}

/// Trial i draws from its own generator seeded by (seed, i).
inline CoefficientVector trial_instance(std::uint64_t seed, int trial, int n_max) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial)};
    std::mt19937_64 rng(seq);
    const std::size_t n = sample::random_n(rng, 2, static_cast<std::size_t>(n_max));
    std::uniform_real_distribution<double> ulog(std::log(2.0), std::log(50.0));
    const double spread = std::exp(ulog(rng));
    if (trial % 10 == 9) return sample::random_c_any_gamma(rng, n, 1.05, 2.5, spread);
    return sample::random_c_any_gamma(rng, n, 0.05, 0.95, spread);
}

inline int cmd_verify(const RunConfig& cfg) {
    struct Job {
        CoefficientVector c;
        std::vector<std::string> checks;
        int trial;
    };
    std::vector<Job> jobs;
    RunConfig run = cfg;
    if (!cfg.replay.empty()) {
        std::ifstream f(cfg.replay);
        if (!f) throw UsageError("cannot read " + cfg.replay);
        Json j;
        try {
            j = Json::parse(f);
        } catch (const nlohmann::json::exception& e) {
            throw UsageError("malformed replay file: " + std::string(e.what()));
        }
        run.inject_mutation = j.value("mutation", false);
        if (j.contains("tol")) run.tol = j.at("tol").get<double>();
        jobs.push_back({coefficient_vector_from_json(j.at("c")), j.at("checks").get<std::vector<std::string>>(),
                        j.value("trial", -1)});
    } else {
        if (cfg.trials < 1) throw UsageError("--trials must be >= 1");
        if (cfg.n_max < 2) throw UsageError("--n-max must be >= 2");
        for (int i = 0; i < cfg.trials; ++i) {
            std::vector<std::string> checks = property_names();
            if (i % 10 != 0) checks.pop_back();  // paths on every tenth trial
            jobs.push_back({trial_instance(cfg.seed, i, cfg.n_max), checks, i});
        }
    }

    std::map<std::string, PropertyTally> tally;
    for (const auto& name : property_names()) tally[name];
    std::optional<Job> first_fail;
    std::vector<std::string> failed_checks;
    long errors = 0;
    std::string first_error;
    for (const Job& job : jobs) {
        std::vector<std::string> failed;
        try {
            const RootSet rs = solve_all_roots(job.c);
            for (const auto& name : job.checks) {
                const Verdict v = check_property(name, job.c, rs, run);
                auto& t = tally[name];
                if (v == Verdict::pass) ++t.pass;
                else if (v == Verdict::skip) ++t.skipped;
                else {
                    ++t.fail;
                    failed.push_back(name);
                }
            }
        } catch (const UsageError&) {
            throw;
        } catch (const std::exception& e) {
            if (errors++ == 0) first_error = "trial " + std::to_string(job.trial) + ": " + e.what();
            continue;
        }
        if (!failed.empty() && !first_fail) {
            first_fail = job;
            failed_checks = failed;
        }
    }

    const bool all_pass = !first_fail && errors == 0;
    if (cfg.format == "csv") {
        std::string s = "property,pass,fail,skipped\n";
        for (const auto& name : property_names()) {
            const auto& t = tally[name];
            s += name + "," + std::to_string(t.pass) + "," + std::to_string(t.fail) + "," + std::to_string(t.skipped) +
                 "\n";
        }
        emit(cfg, s);
    } else {
        Json props = Json::object();
        for (const auto& name : property_names()) {
            const auto& t = tally[name];
            props[name] = {{"pass", t.pass}, {"fail", t.fail}, {"skipped", t.skipped}};
        }
        Json j{{"trials", jobs.size()}, {"properties", props}, {"numerical_errors", errors},
               {"verdict", all_pass ? "PASS" : "FAIL"}};
        if (cfg.replay.empty()) {
            j["seed"] = cfg.seed;
            j["n_max"] = cfg.n_max;
        } else {
            j["replay"] = cfg.replay;
        }
        if (first_fail) j["first_failure"] = {{"trial", first_fail->trial}, {"checks", failed_checks}};
        if (errors) j["first_error"] = first_error;
        emit(cfg, j.dump(2) + "\n");
    }
    if (first_fail) {
        if (cfg.replay.empty()) {
            Json extra{{"trial", first_fail->trial}, {"seed", cfg.seed}};
            write_replay(run, first_fail->c, failed_checks, "FAIL", extra);
        }
        return violation;
    }
    if (errors) {
        std::cerr << first_error << "\n";
        return numerical;
    }
    return ok;
}

// ---------------------------------------------------------------------------
// construct

inline std::string valid_k_list(int kmax) {
    std::string s;
    for (int k = 1; k <= kmax; k += 2) s += (s.empty() ? "" : ", ") + std::to_string(k);
    return s;
}

inline int cmd_construct(const RunConfig& cfg) {
    check_gamma_xor_alpha_beta(cfg);
    const int n = require_n(cfg);
    if (!cfg.k) throw UsageError("construct: -k is required");
    const int k = *cfg.k;
    double gamma = 0.0;
    if (cfg.gamma) {
        gamma = *cfg.gamma;
    } else if (cfg.alpha) {
        if (!(*cfg.alpha > 0.0) || !(*cfg.beta > 0.0)) throw UsageError("--alpha and --beta must be positive");
        if (*cfg.alpha >= *cfg.beta) {
            try {
                (void)matrix_with_count(n, *cfg.alpha, *cfg.beta, k);
            } catch (const DomainError& e) {
                throw UsageError(e.what());
            }
        }
        gamma = *cfg.alpha / *cfg.beta;
    } else {
        throw UsageError("construct: give --gamma or --alpha/--beta");
    }
    if (!(gamma > 0.0) || !(gamma < 1.0)) throw UsageError("construct: gamma must lie in (0, 1)");
    const int kmax = ideal_counts(n, gamma).nu_plus;
    if (k < 1 || k > kmax || k % 2 == 0)
        throw UsageError("construct: k = " + std::to_string(k) + " is not achievable for n = " + std::to_string(n) +
                         ", gamma = " + num(gamma) + "; valid k: " + valid_k_list(kmax));

    Json j{{"n", n}, {"gamma", gamma}, {"k", k}};
    CountReport verified;
    if (cfg.alpha) {
        const DCMatrix x = matrix_with_count(n, *cfg.alpha, *cfg.beta, k);
        const EigenCount ec = count_left_eigenvalues(x);
        const CoefficientVector c = reduce_matrix(x).c;
        verified = classify_certified(solve_all_roots(c), c);
        j["alpha"] = *cfg.alpha;
        j["beta"] = *cfg.beta;
        j["matrix"] = to_json(x);
        j["eigencount"] = {{"left", ec.left}, {"zero", ec.zero}, {"right", ec.right}, {"digits", ec.digits}};
        j["c"] = to_json(c);
    } else {
        const CoefficientVector c = construct_with_count(n, gamma, k);
        verified = classify_certified(solve_all_roots(c), c);
        j["c"] = to_json(c);
    }
    j["counts"] = to_json(verified);
    j["verified"] = verified.nu_plus == k;
    if (cfg.format == "csv") {
        std::string s = "index,value\n";
        const auto c = coefficient_vector_from_json(j["c"]);
        for (std::size_t i = 0; i < c.size(); ++i) s += std::to_string(i) + "," + num(c[i]) + "\n";
        emit(cfg, s);
    } else {
        emit(cfg, j.dump(2) + "\n");
    }
    return verified.nu_plus == k ? ok : numerical;
}

inline int run(const RunConfig& cfg) {
    if (cfg.command == "count") return cmd_count(cfg);
    if (cfg.command == "path") return cmd_path(cfg);
    if (cfg.command == "verify") return cmd_verify(cfg);
    if (cfg.command == "construct") return cmd_construct(cfg);
    throw UsageError("unknown command " + cfg.command);
}

}  // namespace dcroots::cli
