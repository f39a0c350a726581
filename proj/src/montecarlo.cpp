#include "cellcov/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace cellcov {

namespace {

constexpr int kMaxEmptyRedraws = 100;
constexpr double kLn10Over10 = std::numbers::ln10 / 10.0;

}  // namespace

Window Window::disc(double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw ParameterError("window_radius", "must be positive");
    return {Shape::Disc, radius};
}

Window Window::square(double side) {
    if (!(side > 0.0) || !std::isfinite(side)) throw ParameterError("window_radius", "square side must be positive");
    return {Shape::Square, side};
}

Window Window::automatic(double lambda) { return disc(15.0 / std::sqrt(lambda)); }

double Window::area() const noexcept {
    return shape == Shape::Disc ? std::numbers::pi * size * size : size * size;
}

Window SimulationConfig::resolved_window() const {
    return window ? *window : Window::automatic(params.lambda);
}

void validate(const SimulationConfig& config) {
    validate(config.params, config.fading);
    if (!std::isfinite(config.threshold_db)) throw ParameterError("threshold_db", "must be finite");
    if (config.runs < 1) throw ParameterError("runs", "must be at least 1");
    if (config.samples_per_run < 1) throw ParameterError("samples_per_run", "must be at least 1");
    const Window w = config.resolved_window();
    if (!(w.size > 0.0)) throw ParameterError("window_radius", "must be positive");
    if (config.serving_distance) {
        if (!(*config.serving_distance > 0.0)) throw ParameterError("serving_distance", "must be positive");
        if (w.shape != Window::Shape::Disc)
            throw ConfigurationError("a fixed serving distance requires a disc window");
        if (*config.serving_distance >= w.size)
            throw ConfigurationError("fixed serving distance lies outside the window; increase window_radius");
    }
    if (!kernels::available(config.backend))
        throw ConfigurationError("kernel backend unavailable: " + std::string(kernels::to_string(config.backend)));
}

std::vector<Point> sample_ppp(double lambda, const Window& window, Rng& rng) {
    if (!(lambda > 0.0)) throw ParameterError("lambda", "BS density must be positive");
    boost::random::poisson_distribution<long, double> count_dist(lambda * window.area());
    const long count = count_dist(rng);
    std::vector<Point> points;
    points.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
        if (window.shape == Window::Shape::Disc) {
            const double radius = window.size * std::sqrt(uniform_open01(rng));
            const double angle = 2.0 * std::numbers::pi * uniform_open01(rng);
            points.push_back({radius * std::cos(angle), radius * std::sin(angle)});
        } else {
            const double x = (uniform_open01(rng) - 0.5) * window.size;
            const double y = (uniform_open01(rng) - 0.5) * window.size;
            points.push_back({x, y});
        }
    }
    return points;
}

double far_field_interference(const SimulationConfig& config) {
    const auto& p = config.params;
    if (!config.far_field || p.epsilon == 0.0) return 0.0;
    const Window w = config.resolved_window();
    const double a = p.alpha;
    double integral = 0.0;  // of |x|^-alpha over the plane outside the window
    if (w.shape == Window::Shape::Disc) {
        integral = 2.0 * std::numbers::pi * std::pow(w.size, 2.0 - a) / (a - 2.0);
    } else {
        // eight octants; along angle theta the square edge is at (L/2) / cos(theta)
        const double half = 0.5 * w.size;
        auto octant = [&](double theta) { return std::pow(half / std::cos(theta), 2.0 - a) / (a - 2.0); };
        integral = 8.0 * boost::math::quadrature::gauss_kronrod<double, 31>::integrate(octant, 0.0,
                                                                                      std::numbers::pi / 4.0);
    }
    const double mu = config.fading.mu_z_db * kLn10Over10;
    const double sigma = config.fading.sigma_z_db * kLn10Over10;
    const double mean_gain = std::exp(mu + 0.5 * sigma * sigma);
    return p.epsilon * p.rho * mean_gain * p.lambda * integral;
}

SnapshotSampler::SnapshotSampler(const SimulationConfig& config, bool record_all_gains)
    : config_(config),
      record_all_gains_(record_all_gains),
      window_(config.resolved_window()),
      kernels_(&kernels::table(config.backend)),
      count_dist_(1.0) {
    validate(config_);
    const auto& p = config_.params;
    outer_sq_ = window_.size * window_.size;
    double area = window_.area();
    if (config_.serving_distance) {
        inner_sq_ = *config_.serving_distance * *config_.serving_distance;
        area = std::numbers::pi * (outer_sq_ - inner_sq_);
    }
    count_dist_ = boost::random::poisson_distribution<long, double>(p.lambda * area);
    noise_ = 1.0 / p.snr_linear();
    far_field_ = far_field_interference(config_);
    const double mu = config_.fading.mu_z_db * kLn10Over10;
    const double sigma = config_.fading.sigma_z_db * kLn10Over10;
    serving_coeff_ = {std::log(p.zeta) + mu, sigma, 0.5 * p.alpha};
    interferer_coeff_ = {std::log(p.rho) + mu, sigma, 0.5 * p.alpha};
    const auto reserve = static_cast<std::size_t>(p.lambda * area * 1.5 + 64.0);
    sq_dist_.reserve(reserve);
    active_.reserve(reserve);
    co_sq_.reserve(reserve);
    co_shadow_.reserve(reserve);
    co_fast_.reserve(reserve);
    if (record_all_gains_) {
        shadow_.reserve(reserve);
        fast_.reserve(reserve);
    }
}

// Squared distances of every BS; afterwards serving_sq_ holds the nearest
// one and sq_dist_ the rest, in draw order with the nearest removed.
void SnapshotSampler::drop_base_stations(Rng& rng) {
    if (config_.serving_distance) {
        const long count = count_dist_(rng);
        sq_dist_.resize(static_cast<std::size_t>(count));
        const double span = outer_sq_ - inner_sq_;
        for (double& d2 : sq_dist_) d2 = inner_sq_ + span * uniform_open01(rng);
        serving_sq_ = inner_sq_;
        return;
    }
    for (int attempt = 0; attempt < kMaxEmptyRedraws; ++attempt) {
        const long count = count_dist_(rng);
        if (count == 0) continue;
        sq_dist_.resize(static_cast<std::size_t>(count));
        if (window_.shape == Window::Shape::Disc) {
            for (double& d2 : sq_dist_) d2 = outer_sq_ * uniform_open01(rng);
        } else {
            for (double& d2 : sq_dist_) {
                const double x = (uniform_open01(rng) - 0.5) * window_.size;
                const double y = (uniform_open01(rng) - 0.5) * window_.size;
                d2 = x * x + y * y;
            }
        }
        const auto nearest = std::min_element(sq_dist_.begin(), sq_dist_.end());
        serving_sq_ = *nearest;
        sq_dist_.erase(nearest);
        return;
    }
    throw ConfigurationError("simulation window remained empty after " + std::to_string(kMaxEmptyRedraws) +
                             " draws; increase window_radius");
}

double SnapshotSampler::draw(Rng& rng) {
    drop_base_stations(rng);
    const double epsilon = config_.params.epsilon;
    serving_shadow_ = standard_normal(rng);
    serving_fast_ = unit_exponential(rng);
    const std::size_t n = sq_dist_.size();
    active_.resize(n);
    co_sq_.clear();
    co_shadow_.clear();
    co_fast_.clear();
    if (record_all_gains_) {
        shadow_.resize(n);
        fast_.resize(n);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const bool active = uniform_open01(rng) < epsilon;
        active_[i] = active;
        if (!active && !record_all_gains_) continue;
        const double shadow = standard_normal(rng);
        const double fast = unit_exponential(rng);
        if (record_all_gains_) {
            shadow_[i] = shadow;
            fast_[i] = fast;
        }
        if (active) {
            co_sq_.push_back(sq_dist_[i]);
            co_shadow_.push_back(shadow);
            co_fast_.push_back(fast);
        }
    }
    const double signal = kernels_->path_gain_sum(&serving_sq_, &serving_shadow_, &serving_fast_, 1, serving_coeff_);
    const double interference =
        kernels_->path_gain_sum(co_sq_.data(), co_shadow_.data(), co_fast_.data(), co_sq_.size(), interferer_coeff_);
    last_sinr_ = signal / (noise_ + far_field_ + interference);
    return last_sinr_;
}

Snapshot SnapshotSampler::last_snapshot() const {
    if (!record_all_gains_) throw std::logic_error("last_snapshot: sampler does not record every gain");
    const double mu = config_.fading.mu_z_db;
    const double sigma = config_.fading.sigma_z_db;
    auto gain = [&](double shadow, double fast) { return db_to_linear(mu + sigma * shadow) * fast; };
    Snapshot s;
    s.serving_distance = std::sqrt(serving_sq_);
    s.serving_gain = gain(serving_shadow_, serving_fast_);
    s.far_field = far_field_;
    s.sinr = last_sinr_;
    s.interferers.reserve(sq_dist_.size());
    for (std::size_t i = 0; i < sq_dist_.size(); ++i)
        s.interferers.push_back({std::sqrt(sq_dist_[i]), gain(shadow_[i], fast_[i]), active_[i] != 0});
    return s;
}

Snapshot simulate_snapshot(const SimulationConfig& config, Rng& rng) {
    SnapshotSampler sampler(config);
    sampler.draw(rng);
    return sampler.last_snapshot();
}

double run_variance(std::span<const double> values) {
    if (values.size() < 2) throw std::invalid_argument("run_variance: need at least two run values");
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) sum += (v - mean) * (v - mean);
    return sum / static_cast<double>(values.size());
}

namespace {

struct RunTotals {
    double coverage = 0.0;
    double rate = 0.0;
};

RunTotals simulate_run(const SimulationConfig& config, int run) {
    SnapshotSampler sampler(config, false);
    Rng rng = make_stream(config.seed, static_cast<std::uint64_t>(run));
    const double threshold = db_to_linear(config.threshold_db);
    long covered = 0;
    double rate_sum = 0.0;
    for (int s = 0; s < config.samples_per_run; ++s) {
        const double sinr = sampler.draw(rng);
        // outage is SINR < T; coverage counts the complement
        if (!(sinr < threshold)) ++covered;
        rate_sum += std::log1p(sinr);
    }
    const double n = static_cast<double>(config.samples_per_run);
    return {static_cast<double>(covered) / n, rate_sum / n};
}

MonteCarloEstimate summarize(std::vector<double> values, const SimulationConfig& config) {
    MonteCarloEstimate e;
    for (double v : values) e.mean += v;
    e.mean /= static_cast<double>(values.size());
    e.variance = values.size() >= 2 ? run_variance(values) : std::numeric_limits<double>::quiet_NaN();
    e.per_run_values = std::move(values);
    e.runs = config.runs;
    e.samples_per_run = config.samples_per_run;
    return e;
}

}  // namespace

MonteCarloResult estimate(const SimulationConfig& config) {
    validate(config);
    const auto runs = static_cast<std::size_t>(config.runs);
    std::vector<RunTotals> totals(runs);

    unsigned workers = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.threads;
    workers = std::min<unsigned>(workers, static_cast<unsigned>(runs));
    if (workers <= 1) {
        for (std::size_t r = 0; r < runs; ++r) totals[r] = simulate_run(config, static_cast<int>(r));
    } else {
        std::vector<std::exception_ptr> errors(workers);
        {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < workers; ++w) {
                pool.emplace_back([&, w] {
                    try {
                        for (std::size_t r = w; r < runs; r += workers)
                            totals[r] = simulate_run(config, static_cast<int>(r));
                    } catch (...) {
                        errors[w] = std::current_exception();
                    }
                });
            }
        }
        for (const auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    std::vector<double> coverage(runs), rate(runs);
    for (std::size_t r = 0; r < runs; ++r) {
        coverage[r] = totals[r].coverage;
        rate[r] = totals[r].rate;
    }
    return {summarize(std::move(coverage), config), summarize(std::move(rate), config)};
}

MonteCarloEstimate estimate_coverage(const SimulationConfig& config) { return estimate(config).coverage; }

MonteCarloEstimate estimate_rate(const SimulationConfig& config) { return estimate(config).rate; }

}  // namespace cellcov
