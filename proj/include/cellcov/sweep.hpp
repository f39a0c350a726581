#pragma once
// Sweep evaluation, CSV emission and analytic-vs-simulation comparison.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cellcov/config.hpp"

namespace cellcov {

inline constexpr std::string_view kToolVersion = "0.1.0";

struct SweepRow {
    double axis_value = 0.0;
    std::vector<double> values;  ///< one per requested output, in request order
};

struct SweepResult {
    SweepAxis axis = SweepAxis::ThresholdDb;
    std::vector<Output> outputs;
    std::vector<SweepRow> rows;
    std::uint64_t seed = 0;
    int hermite_order = 0;
    int legendre_order = 0;
    int runs = 0;
    int samples_per_run = 0;
    std::string timestamp;  ///< UTC, ISO 8601

    /// Column index of an output, if it was requested.
    std::optional<std::size_t> column(Output output) const;
};

/// Evaluates every requested output at every axis value. mc_variance is the
/// run variance of the coverage estimate.
SweepResult run_sweep(const SweepSpec& spec);

/// Writes '#' metadata lines, a header and one row per axis value, numbers
/// with six significant digits, LF line endings.
void write_csv(const SweepResult& result, std::ostream& out);
void emit_csv(const SweepResult& result, const std::filesystem::path& path);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> comments;  ///< metadata lines without the '#'
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv(const std::filesystem::path& path);

inline constexpr double kCoverageAgreement = 0.015;
inline constexpr double kRateAgreement = 0.05;
inline constexpr double kVarianceBound = 1e-3;

struct MetricComparison {
    std::string metric;                 ///< "coverage" or "rate"
    double tolerance = 0.0;
    std::vector<double> abs_diff;       ///< per row
    double max_abs_diff = 0.0;
    double fraction_within = 0.0;
};

struct ComparisonReport {
    std::vector<MetricComparison> metrics;
    std::vector<std::size_t> variance_flagged_rows;
    bool pass = false;
    std::string text;
};

/// Needs at least one analytic/MC column pair (coverage or rate). Throws
/// std::invalid_argument otherwise.
ComparisonReport compare_report(const SweepResult& result);

}  // namespace cellcov
