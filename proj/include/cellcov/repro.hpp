#pragma once
// Fixed reproduction runs: reference-point checks and the curve sweeps.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cellcov/sweep.hpp"

namespace cellcov::repro {

struct Check {
    std::string name;
    bool pass = false;
    bool gating = true;  ///< false for report-only investigations
    std::string detail;
};

struct Options {
    std::optional<std::filesystem::path> out_dir;  ///< figure CSVs and report.txt when set
    bool monte_carlo = true;                       ///< include the simulation checks
    unsigned threads = 1;
};

struct Report {
    std::vector<Check> checks;
    std::vector<std::filesystem::path> written;
    bool pass() const noexcept;
    std::string text() const;
};

/// Reference configuration: lambda 0.25, alpha 3.5, SNR 10 dB,
/// epsilon 0.2 (3 of 15 RBs), zeta = rho = 1, T 0 dB, sigma_z 8 dB unit mean.
SweepSpec reference_spec();

// Individual checks. Each is self-contained and deterministic.
Check reference_analytic();
Check reference_monte_carlo(unsigned threads = 1);
Check shadowing_trend();
Check cross_path_grid(unsigned threads = 1);
Check closed_form_anchor();
Check high_snr_consistency();
Check alpha_epsilon_fit();

/// Figure-style sweeps (analytic columns), named by file stem.
std::vector<std::pair<std::string, SweepSpec>> figure_sweeps();

Report run(const Options& options);

}  // namespace cellcov::repro
