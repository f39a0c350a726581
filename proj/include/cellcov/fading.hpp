#pragma once
// Composite Rayleigh-Lognormal (Suzuki) power gain.
//
// The gain is g = X * E with 10 log10 X ~ Normal(mu_z, sigma_z^2) and
// E ~ Exp(1). Its density is an exponential mixture over the lognormal
// scale; the Gauss-Hermite rule discretizes that mixture into N_p
// exponential components with scales gamma(a_n) = 10^((sqrt(2) sigma_z a_n + mu_z)/10)
// and probabilities w_n / sqrt(pi).

#include <span>
#include <vector>

#include "cellcov/model.hpp"
#include "cellcov/quadrature.hpp"
#include "cellcov/rng.hpp"

namespace cellcov {

class SuzukiDistribution {
public:
    static constexpr int kDefaultOrder = 12;

    explicit SuzukiDistribution(FadingParams fading, int hermite_order = kDefaultOrder);
    SuzukiDistribution(FadingParams fading, QuadratureRule rule);

    const FadingParams& fading() const noexcept { return fading_; }
    const QuadratureRule& rule() const noexcept { return rule_; }
    int order() const noexcept { return rule_.order(); }

    /// gamma(a_n) for every Hermite node, in node order.
    std::span<const double> gamma_table() const noexcept { return gamma_; }
    /// w_n / sqrt(pi) for every node; sums to one up to rounding.
    std::span<const double> mixture_weights() const noexcept { return prob_; }

    double pdf(double g) const;
    /// Raw quadrature CDF; may exceed 1 by the approximation error.
    double cdf(double g) const;
    double cdf_clamped(double g) const;
    /// Complementary CDF, sum_n p_n exp(-g / gamma_n).
    double ccdf(double g) const;
    /// E[exp(-s g)] for s >= 0.
    double mgf(double s) const;

    /// Vectorized cdf over many points (used for goodness-of-fit checks).
    void cdf(std::span<const double> g, std::span<double> out) const;

    /// Exact product-form draw: independent of the Hermite discretization.
    double sample(Rng& rng) const;

    /// E[g] = 10^(mu/10) exp((sigma ln10 / 10)^2 / 2).
    double mean() const noexcept;

private:
    FadingParams fading_;
    QuadratureRule rule_;
    std::vector<double> gamma_;
    std::vector<double> prob_;
    std::vector<double> inv_gamma_;
};

}  // namespace cellcov
