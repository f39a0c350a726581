#pragma once
// Monte Carlo estimator of coverage and ergodic rate.
//
// Each snapshot drops a PPP of base stations around the typical user at the
// origin, associates the user with the nearest one, marks every other BS as
// a co-channel interferer with probability epsilon, draws Suzuki gains for
// the serving and co-channel links and evaluates the SINR. Nothing here
// touches the Hermite or Legendre rules, so the estimates are an independent
// check of the analytic module.
//
// Interferers beyond the window are not dropped individually. Their
// aggregate is replaced by its mean,
//   eps rho E[g] lambda \int_{outside} |x|^-alpha dx,
// which for a disc of radius R is eps rho E[g] lambda 2 pi R^(2-alpha) / (alpha - 2).
// At alpha = 3 and the default window the truncated tail alone would bias
// coverage upward by about 0.015.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include <boost/random/poisson_distribution.hpp>

#include "cellcov/kernels.hpp"
#include "cellcov/model.hpp"
#include "cellcov/rng.hpp"

namespace cellcov {

class ConfigurationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Simulation region centred on the typical user.
struct Window {
    enum class Shape { Disc, Square };

    Shape shape = Shape::Disc;
    double size = 1.0;  ///< disc radius or square side length

    static Window disc(double radius);
    static Window square(double side);
    /// Disc of radius 15 / sqrt(lambda), about thirty mean cell radii.
    static Window automatic(double lambda);

    double area() const noexcept;
};

struct Point {
    double x;
    double y;
};

struct SimulationConfig {
    NetworkParams params;
    FadingParams fading;
    double threshold_db = 0.0;
    int runs = 5;
    int samples_per_run = 100000;
    std::uint64_t seed = 1;
    std::optional<Window> window;            ///< nullopt: Window::automatic(lambda)
    std::optional<double> serving_distance;  ///< condition on the nearest BS at this distance
    unsigned threads = 1;                    ///< worker threads for independent runs; 0 = hardware
    bool far_field = true;                   ///< add the mean interference from outside the window
    kernels::Backend backend = kernels::active().backend;

    Window resolved_window() const;
};

/// Throws ParameterError / ConfigurationError on invalid settings.
void validate(const SimulationConfig& config);

struct Interferer {
    double distance;
    double gain;
    bool active;  ///< shares the typical user's resource block
};

struct Snapshot {
    double serving_distance = 0.0;
    double serving_gain = 0.0;
    std::vector<Interferer> interferers;
    double far_field = 0.0;  ///< mean interference added for BSs beyond the window
    double sinr = 0.0;
};

struct MonteCarloEstimate {
    double mean = 0.0;
    std::vector<double> per_run_values;
    double variance = 0.0;  ///< population variance over runs; NaN for a single run
    int runs = 0;
    int samples_per_run = 0;
};

struct MonteCarloResult {
    MonteCarloEstimate coverage;
    MonteCarloEstimate rate;  ///< nats per symbol
};

/// Homogeneous PPP of intensity lambda in the window.
std::vector<Point> sample_ppp(double lambda, const Window& window, Rng& rng);

/// Mean received power, in units of P, of the co-channel BSs outside the
/// window (zero when far_field is off or epsilon is zero).
double far_field_interference(const SimulationConfig& config);

/// Draws snapshots for one configuration, reusing its scratch buffers.
/// Not thread safe; use one per thread.
class SnapshotSampler {
public:
    /// With record_all_gains false the gains of interferers that do not
    /// share the resource block are never drawn (they cannot affect the
    /// SINR) and last_snapshot() is unavailable.
    explicit SnapshotSampler(const SimulationConfig& config, bool record_all_gains = true);

    /// Draws a snapshot and returns its SINR (linear).
    double draw(Rng& rng);
    /// Full description of the most recent draw.
    Snapshot last_snapshot() const;

    std::size_t last_interferer_count() const noexcept { return sq_dist_.size(); }
    std::size_t last_active_count() const noexcept { return co_sq_.size(); }

private:
    void drop_base_stations(Rng& rng);

    SimulationConfig config_;
    bool record_all_gains_;
    double far_field_ = 0.0;
    Window window_;
    const kernels::KernelTable* kernels_;
    boost::random::poisson_distribution<long, double> count_dist_;
    double inner_sq_ = 0.0;
    double outer_sq_ = 0.0;
    double noise_ = 0.0;
    kernels::GainCoefficients serving_coeff_;
    kernels::GainCoefficients interferer_coeff_;

    double serving_sq_ = 0.0;
    double serving_shadow_ = 0.0;
    double serving_fast_ = 0.0;
    double last_sinr_ = 0.0;
    std::vector<double> sq_dist_;
    std::vector<double> shadow_;
    std::vector<double> fast_;
    std::vector<unsigned char> active_;
    // co-channel interferers only, in draw order
    std::vector<double> co_sq_;
    std::vector<double> co_shadow_;
    std::vector<double> co_fast_;
};

Snapshot simulate_snapshot(const SimulationConfig& config, Rng& rng);

/// Coverage and rate from the same snapshots.
MonteCarloResult estimate(const SimulationConfig& config);
MonteCarloEstimate estimate_coverage(const SimulationConfig& config);
MonteCarloEstimate estimate_rate(const SimulationConfig& config);

/// (1/n) sum (x_i - mean)^2 over the run-level values; needs at least two.
double run_variance(std::span<const double> per_run_values);

}  // namespace cellcov
