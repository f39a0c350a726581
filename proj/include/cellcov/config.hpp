#pragma once
// Flat key = value configuration for parameter sweeps.
//
//   # comment
//   lambda = 0.25
//   sigma_z_db = 5
//   mu_z_db = unit_mean            # track sigma_z so the shadowing has unit mean
//   window_radius = auto           # or a radius, or square:<side>
//   sweep = threshold_db: -10:1:20 # start:step:stop, or a comma list
//   outputs = analytic_coverage, mc_coverage, mc_variance
//
// Unspecified keys take the reference defaults: lambda 0.25, 15 RBs,
// SNR 10 dB, zeta 1, rho 1, T 0 dB, mu_z -7.3683 dB, sigma_z 8 dB,
// alpha 3.5, epsilon 0.2.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cellcov/montecarlo.hpp"

namespace cellcov {

/// Configuration problem tied to a key and (when known) a 1-based line.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, int line, const std::string& message);
    const std::string& key() const noexcept { return key_; }
    int line() const noexcept { return line_; }

private:
    std::string key_;
    int line_;
};

enum class SweepAxis { ThresholdDb, SnrDb, Epsilon, Lambda, SigmaZDb, Rho, Alpha };
enum class Output { AnalyticCoverage, HighSnrCoverage, McCoverage, AnalyticRate, McRate, McVariance };

std::string_view to_string(SweepAxis axis) noexcept;
std::string_view to_string(Output output) noexcept;
std::optional<SweepAxis> parse_axis(std::string_view name) noexcept;
std::optional<Output> parse_output(std::string_view name) noexcept;

bool is_monte_carlo(Output output) noexcept;

struct SweepSpec {
    SimulationConfig base;
    int hermite_order = 12;
    int legendre_order = 10;
    bool unit_mean_shadowing = false;  ///< mu_z follows sigma_z (see FadingParams::unit_mean)
    SweepAxis axis = SweepAxis::ThresholdDb;
    std::vector<double> values;        ///< defaults to the base value of the axis
    std::vector<Output> outputs{Output::AnalyticCoverage};

    /// Base configuration with the swept parameter set to `value`.
    SimulationConfig at(double value) const;
};

/// Reference defaults used when a key is absent.
SweepSpec default_spec();

SweepSpec parse_config(std::string_view text, std::string_view source = "<config>");
SweepSpec load_config(const std::filesystem::path& path);

/// Parses "start:step:stop" (inclusive) or "v1, v2, ...".
std::vector<double> parse_value_list(std::string_view text);

}  // namespace cellcov
