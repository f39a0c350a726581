// cellcov: coverage and rate sweeps for PPP cellular downlinks.
//
//   cellcov sweep <config> [--out file.csv] [--seed N] [--check]
//   cellcov mc <config>
//   cellcov analytic <config>
//   cellcov paper-repro [--out-dir dir]
//
// Exit status: 0 success, 1 a --check or reproduction comparison failed,
// 2 bad input or runtime error.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>

#include "cellcov/repro.hpp"
#include "cellcov/sweep.hpp"

namespace {

using namespace cellcov;

enum Exit { kOk = 0, kCheckFailed = 1, kError = 2 };

void write_result(const SweepResult& result, const std::string& out) {
    if (out.empty() || out == "-")
        write_csv(result, std::cout);
    else
        emit_csv(result, out);
}

// keep only the outputs the subcommand is allowed to produce
void restrict_outputs(SweepSpec& spec, bool monte_carlo, std::vector<Output> fallback) {
    std::erase_if(spec.outputs, [&](Output o) { return is_monte_carlo(o) != monte_carlo; });
    if (spec.outputs.empty()) spec.outputs = std::move(fallback);
}

struct Common {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    unsigned threads = 1;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("config", c.config, "configuration file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", c.out, "CSV output path (default: stdout)");
    cmd->add_option("--seed", c.seed, "override the configured seed");
    cmd->add_option("--threads", c.threads, "worker threads for Monte Carlo runs (0 = all cores)");
}

SweepSpec load(const Common& c) {
    SweepSpec spec = load_config(c.config);
    if (c.seed) spec.base.seed = *c.seed;
    spec.base.threads = c.threads;
    return spec;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coverage probability and rate of PPP cellular networks under Suzuki fading"};
    app.require_subcommand(1);

    Common sweep_opts, mc_opts, analytic_opts;
    bool check = false;
    auto* sweep = app.add_subcommand("sweep", "evaluate the configured outputs over the sweep axis");
    add_common(sweep, sweep_opts);
    sweep->add_flag("--check", check, "compare analytic and Monte Carlo columns; exit 1 on disagreement");

    auto* mc = app.add_subcommand("mc", "Monte Carlo outputs only");
    add_common(mc, mc_opts);
    auto* analytic = app.add_subcommand("analytic", "closed-form outputs only");
    add_common(analytic, analytic_opts);

    std::string out_dir;
    bool skip_mc = false;
    unsigned repro_threads = 1;
    auto* repro_cmd = app.add_subcommand("paper-repro", "run the fixed reference checks and curve sweeps");
    repro_cmd->add_option("--out-dir", out_dir, "directory for curve CSVs and report.txt");
    repro_cmd->add_flag("--skip-mc", skip_mc, "skip the Monte Carlo checks");
    repro_cmd->add_option("--threads", repro_threads, "worker threads for Monte Carlo runs (0 = all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // help requests exit 0; usage errors map onto the input-error code
        return app.exit(e) == 0 ? kOk : kError;
    }

    try {
        if (*sweep) {
            const SweepSpec spec = load(sweep_opts);
            const SweepResult result = run_sweep(spec);
            write_result(result, sweep_opts.out);
            if (check) {
                const ComparisonReport report = compare_report(result);
                std::cerr << report.text;
                return report.pass ? kOk : kCheckFailed;
            }
            return kOk;
        }
        if (*mc) {
            SweepSpec spec = load(mc_opts);
            restrict_outputs(spec, true, {Output::McCoverage, Output::McRate, Output::McVariance});
            write_result(run_sweep(spec), mc_opts.out);
            return kOk;
        }
        if (*analytic) {
            SweepSpec spec = load(analytic_opts);
            restrict_outputs(spec, false, {Output::AnalyticCoverage, Output::AnalyticRate});
            write_result(run_sweep(spec), analytic_opts.out);
            return kOk;
        }
        if (*repro_cmd) {
            repro::Options options;
            if (!out_dir.empty()) options.out_dir = out_dir;
            options.monte_carlo = !skip_mc;
            options.threads = repro_threads;
            const repro::Report report = repro::run(options);
            std::cout << report.text();
            for (const auto& p : report.written) std::cerr << "wrote " << p.string() << '\n';
            return report.pass() ? kOk : kCheckFailed;
        }
    } catch (const std::exception& e) {
        std::cerr << "cellcov: " << e.what() << '\n';
        return kError;
    }
    return kError;
}
