#include "cellcov/fading.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cellcov/kernels.hpp"

namespace cellcov {

SuzukiDistribution::SuzukiDistribution(FadingParams fading, int hermite_order)
    : SuzukiDistribution(fading, gauss_hermite(hermite_order)) {}

SuzukiDistribution::SuzukiDistribution(FadingParams fading, QuadratureRule rule)
    : fading_(fading), rule_(std::move(rule)) {
    if (rule_.kind() != RuleKind::Hermite)
        throw std::invalid_argument("SuzukiDistribution requires a Gauss-Hermite rule");
    if (!std::isfinite(fading_.mu_z_db)) throw ParameterError("mu_z_db", "must be finite");
    if (!(fading_.sigma_z_db >= 0.0) || !std::isfinite(fading_.sigma_z_db))
        throw ParameterError("sigma_z_db", "must be finite and non-negative");

    const auto nodes = rule_.nodes();
    const auto weights = rule_.weights();
    const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);
    gamma_.reserve(nodes.size());
    for (std::size_t n = 0; n < nodes.size(); ++n) {
        gamma_.push_back(db_to_linear(std::numbers::sqrt2 * fading_.sigma_z_db * nodes[n] + fading_.mu_z_db));
        prob_.push_back(weights[n] * inv_sqrt_pi);
        inv_gamma_.push_back(1.0 / gamma_.back());
    }
}

double SuzukiDistribution::pdf(double g) const {
    if (!(g >= 0.0)) throw DomainError("Suzuki pdf: gain must be non-negative");
    double sum = 0.0;
    for (std::size_t n = 0; n < gamma_.size(); ++n) sum += prob_[n] * inv_gamma_[n] * std::exp(-g * inv_gamma_[n]);
    return sum;
}

double SuzukiDistribution::ccdf(double g) const {
    if (!(g >= 0.0)) throw DomainError("Suzuki ccdf: gain must be non-negative");
    double sum = 0.0;
    for (std::size_t n = 0; n < gamma_.size(); ++n) sum += prob_[n] * std::exp(-g * inv_gamma_[n]);
    return sum;
}

double SuzukiDistribution::cdf(double g) const {
    if (!(g >= 0.0)) throw DomainError("Suzuki cdf: gain must be non-negative");
    double sum = 0.0;
    for (std::size_t n = 0; n < gamma_.size(); ++n) sum += prob_[n] * -std::expm1(-g * inv_gamma_[n]);
    return sum;
}

double SuzukiDistribution::cdf_clamped(double g) const { return std::clamp(cdf(g), 0.0, 1.0); }

double SuzukiDistribution::mgf(double s) const {
    if (!(s >= 0.0)) throw DomainError("Suzuki mgf: defined here for s >= 0 only");
    double sum = 0.0;
    for (std::size_t n = 0; n < gamma_.size(); ++n) sum += prob_[n] / (1.0 + s * gamma_[n]);
    return sum;
}

void SuzukiDistribution::cdf(std::span<const double> g, std::span<double> out) const {
    if (g.size() != out.size()) throw std::invalid_argument("Suzuki cdf: span sizes differ");
    for (double v : g)
        if (!(v >= 0.0)) throw DomainError("Suzuki cdf: gain must be non-negative");
    kernels::exponential_mixture(g, inv_gamma_, prob_, out);
    double total = 0.0;
    for (double p : prob_) total += p;
    for (double& v : out) v = total - v;
}

double SuzukiDistribution::sample(Rng& rng) const {
    const double shadow = standard_normal(rng);
    const double fast = unit_exponential(rng);
    return db_to_linear(fading_.mu_z_db + fading_.sigma_z_db * shadow) * fast;
}

double SuzukiDistribution::mean() const noexcept {
    const double s = fading_.sigma_z_db * std::numbers::ln10 / 10.0;
    return db_to_linear(fading_.mu_z_db) * std::exp(0.5 * s * s);
}

}  // namespace cellcov
