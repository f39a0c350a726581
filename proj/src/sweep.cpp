#include "cellcov/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "cellcov/analytic.hpp"

namespace cellcov {

std::optional<std::size_t> SweepResult::column(Output output) const {
    const auto it = std::find(outputs.begin(), outputs.end(), output);
    if (it == outputs.end()) return std::nullopt;
    return static_cast<std::size_t>(it - outputs.begin());
}

namespace {

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

SweepRow evaluate_row(const SweepSpec& spec, double value) {
    const SimulationConfig config = spec.at(value);
    validate(config);
    const Threshold threshold = Threshold::from_db(config.threshold_db);

    const bool needs_analytic = std::any_of(spec.outputs.begin(), spec.outputs.end(),
                                            [](Output o) { return !is_monte_carlo(o); });
    const bool needs_mc = std::any_of(spec.outputs.begin(), spec.outputs.end(), is_monte_carlo);

    std::optional<SuzukiDistribution> dist;
    if (needs_analytic) dist.emplace(config.fading, spec.hermite_order);
    const QuadratureRule gl = gauss_legendre(spec.legendre_order);
    std::optional<MonteCarloResult> mc;
    if (needs_mc) mc = estimate(config);

    SweepRow row{value, {}};
    for (Output o : spec.outputs) {
        switch (o) {
            case Output::AnalyticCoverage:
                row.values.push_back(average_coverage(threshold, config.params, *dist, gl).probability);
                break;
            case Output::HighSnrCoverage:
                row.values.push_back(coverage_high_snr(threshold, config.params, *dist, gl).probability);
                break;
            case Output::AnalyticRate:
                row.values.push_back(average_rate(config.params, *dist, gl, gl));
                break;
            case Output::McCoverage: row.values.push_back(mc->coverage.mean); break;
            case Output::McRate: row.values.push_back(mc->rate.mean); break;
            case Output::McVariance: row.values.push_back(mc->coverage.variance); break;
        }
    }
    return row;
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
    if (spec.values.empty()) throw std::invalid_argument("sweep has no values");
    if (spec.outputs.empty()) throw std::invalid_argument("sweep requests no outputs");
    SweepResult result;
    result.axis = spec.axis;
    result.outputs = spec.outputs;
    result.seed = spec.base.seed;
    result.hermite_order = spec.hermite_order;
    result.legendre_order = spec.legendre_order;
    result.runs = spec.base.runs;
    result.samples_per_run = spec.base.samples_per_run;
    result.timestamp = utc_timestamp();
    for (std::size_t i = 0; i < spec.values.size(); ++i) {
        try {
            result.rows.push_back(evaluate_row(spec, spec.values[i]));
        } catch (const std::exception& e) {
            throw std::runtime_error("row " + std::to_string(i) + " (" + std::string(to_string(spec.axis)) + " = " +
                                     format_number(spec.values[i]) + "): " + e.what());
        }
    }
    return result;
}

void write_csv(const SweepResult& result, std::ostream& out) {
    out << "# cellcov sweep\n";
    out << "# version: " << kToolVersion << '\n';
    out << "# axis: " << to_string(result.axis) << '\n';
    out << "# seed: " << result.seed << '\n';
    out << "# hermite_order: " << result.hermite_order << '\n';
    out << "# legendre_order: " << result.legendre_order << '\n';
    out << "# runs: " << result.runs << '\n';
    out << "# samples_per_run: " << result.samples_per_run << '\n';
    out << "# timestamp: " << result.timestamp << '\n';
    out << to_string(result.axis);
    for (Output o : result.outputs) out << ',' << to_string(o);
    out << '\n';
    for (const auto& row : result.rows) {
        out << format_number(row.axis_value);
        for (double v : row.values) out << ',' << format_number(v);
        out << '\n';
    }
}

void emit_csv(const SweepResult& result, const std::filesystem::path& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_csv(result, file);
    file.flush();
    if (!file) throw std::runtime_error("write failed: " + path.string());
}

CsvTable read_csv(std::istream& in) {
    CsvTable table;
    for (std::string line; std::getline(in, line);) {
        if (line.empty()) continue;
        if (line.front() == '#') {
            table.comments.push_back(line.substr(line.size() > 1 && line[1] == ' ' ? 2 : 1));
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
        if (table.header.empty()) {
            table.header = std::move(cells);
            continue;
        }
        if (cells.size() != table.header.size()) throw std::runtime_error("csv row width differs from header");
        std::vector<double> row;
        for (const auto& c : cells) row.push_back(std::strtod(c.c_str(), nullptr));
        table.rows.push_back(std::move(row));
    }
    return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream file(path);
    if (!file) throw std::runtime_error("cannot open " + path.string());
    return read_csv(file);
}

ComparisonReport compare_report(const SweepResult& result) {
    ComparisonReport report;
    struct Pair {
        const char* metric;
        Output analytic;
        Output mc;
        double tolerance;
    };
    const Pair pairs[] = {{"coverage", Output::AnalyticCoverage, Output::McCoverage, kCoverageAgreement},
                          {"rate", Output::AnalyticRate, Output::McRate, kRateAgreement}};
    std::ostringstream text;
    bool pass = true;
    for (const auto& pair : pairs) {
        const auto a = result.column(pair.analytic);
        const auto m = result.column(pair.mc);
        if (!a || !m) continue;
        MetricComparison cmp;
        cmp.metric = pair.metric;
        cmp.tolerance = pair.tolerance;
        std::size_t within = 0;
        text << pair.metric << " (analytic vs Monte Carlo, tolerance " << format_number(pair.tolerance) << ")\n";
        for (const auto& row : result.rows) {
            const double d = std::abs(row.values[*a] - row.values[*m]);
            cmp.abs_diff.push_back(d);
            cmp.max_abs_diff = std::max(cmp.max_abs_diff, d);
            if (d <= pair.tolerance) ++within;
            text << "  " << to_string(result.axis) << "=" << format_number(row.axis_value)
                 << "  analytic=" << format_number(row.values[*a]) << "  mc=" << format_number(row.values[*m])
                 << "  |d|=" << format_number(d) << (d <= pair.tolerance ? "" : "  OUTSIDE") << '\n';
        }
        cmp.fraction_within = static_cast<double>(within) / static_cast<double>(result.rows.size());
        const bool ok = within == result.rows.size();
        pass = pass && ok;
        text << (ok ? "PASS" : "FAIL") << " " << pair.metric << " max|d|=" << format_number(cmp.max_abs_diff)
             << " within=" << format_number(100.0 * cmp.fraction_within) << "%\n";
        report.metrics.push_back(std::move(cmp));
    }
    if (report.metrics.empty())
        throw std::invalid_argument("comparison needs analytic and Monte Carlo columns for the same metric");

    if (const auto v = result.column(Output::McVariance)) {
        for (std::size_t i = 0; i < result.rows.size(); ++i) {
            const double var = result.rows[i].values[*v];
            if (!(var < kVarianceBound)) {
                report.variance_flagged_rows.push_back(i);
                text << "FLAG row " << i << " (" << to_string(result.axis) << "="
                     << format_number(result.rows[i].axis_value) << ") run variance " << format_number(var)
                     << " is not below " << format_number(kVarianceBound) << '\n';
            }
        }
        if (report.variance_flagged_rows.empty())
            text << "PASS run variance below " << format_number(kVarianceBound) << " in every row\n";
        pass = pass && report.variance_flagged_rows.empty();
    }
    report.pass = pass;
    report.text = text.str();
    return report;
}

}  // namespace cellcov
