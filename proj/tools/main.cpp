#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

using dcroots::cli::RunConfig;

namespace {

void add_common(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("-n,--n", cfg.n, "dimension");
    sub->add_option("--gamma", cfg.gamma, "geometric mean of c");
    sub->add_option("--alpha", cfg.alpha, "geometric mean of the diagonal a");
    sub->add_option("--beta", cfg.beta, "geometric mean of the off-diagonal b");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--spread", cfg.spread, "log-uniform sampling range [1/s, s] before rescaling");
    sub->add_option("--out", cfg.out, "output file (path: output directory)");
    sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--tol", cfg.tol, "fixed axis tolerance instead of per-root error radii");
    sub->add_option("--replay-out", cfg.replay_out, "where to write the replay file on failure");
    sub->add_flag("--inject-mutation", cfg.inject_mutation)->group("");  // harness self-test
}

void add_input(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--c", cfg.c, "coefficient vector, comma separated")->delimiter(',');
    sub->add_option("--a", cfg.a, "matrix diagonal, comma separated")->delimiter(',');
    sub->add_option("--b", cfg.b, "matrix off-diagonal, comma separated")->delimiter(',');
    sub->add_option("--input", cfg.input, "JSON file with a vector, multiset or matrix");
    sub->add_flag("--ideal", cfg.ideal, "use c* = (gamma, ..., gamma)");
    sub->add_flag("--extremal", cfg.extremal, "use the one-right-root extension vector");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Root counts of prod (z + c_k) = 1 and doubly cyclic matrices"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* count = app.add_subcommand("count", "count roots by half plane, compare with c*");
    add_common(count, cfg);
    add_input(count, cfg);

    auto* path = app.add_subcommand("path", "trace roots along the path to c*");
    add_common(path, cfg);
    add_input(path, cfg);
    path->add_option("--plot", cfg.plot, "SVG file for trajectories and regions");
    path->add_flag("--mechanics-only", cfg.mechanics_only, "allow gamma >= 1");
    path->add_option("--safety", cfg.safety, "step safety factor in (0, 1]");
    path->add_option("--samples", cfg.samples, "uniform count samples along the path");

    auto* verify = app.add_subcommand("verify", "randomized invariant battery");
    add_common(verify, cfg);
    verify->add_option("--trials", cfg.trials, "number of random instances");
    verify->add_option("--n-max", cfg.n_max, "largest dimension sampled");
    verify->add_option("--replay", cfg.replay, "re-run a replay file");

    auto* construct = app.add_subcommand("construct", "vector or matrix with a prescribed count");
    add_common(construct, cfg);
    construct->add_option("-k,--k", cfg.k, "target right-half-plane count (odd)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : dcroots::cli::usage;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    try {
        return dcroots::cli::run(cfg);
    } catch (const dcroots::cli::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return dcroots::cli::usage;
    } catch (const dcroots::DomainError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return dcroots::cli::usage;
    } catch (const dcroots::CapacityError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return dcroots::cli::usage;
    } catch (const dcroots::TheoremViolation& e) {
        std::cerr << "theorem violation: " << e.what() << "\n";
        return dcroots::cli::violation;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return dcroots::cli::numerical;
    }
}
