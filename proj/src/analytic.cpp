#include "cellcov/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cellcov {

namespace {

constexpr double kPi = std::numbers::pi;

void require_legendre(const QuadratureRule& rule) {
    if (rule.kind() != RuleKind::Legendre) throw std::invalid_argument("expected a Gauss-Legendre rule");
}

void require_alpha(double alpha) {
    if (!(alpha > 2.0)) throw ParameterError("alpha", "must exceed 2, otherwise the I1 integral diverges");
}

// The serving-link factor for outer node n at distance r, shared by the
// conditional and averaged forms.
double serving_mixture(double r, double t_linear, const NetworkParams& p, const SuzukiDistribution& dist,
                       const std::vector<double>& profile) {
    const auto gamma = dist.gamma_table();
    const auto prob = dist.mixture_weights();
    const double noise_scale = t_linear * std::pow(r, p.alpha) / (p.zeta * p.snr_linear());
    const double area = kPi * p.lambda * p.epsilon * r * r;
    double sum = 0.0;
    for (std::size_t n = 0; n < gamma.size(); ++n) {
        double exponent = -noise_scale / gamma[n];
        if (p.epsilon > 0.0) exponent -= area * profile[n];
        sum += prob[n] * std::exp(exponent);
    }
    return sum;
}

}  // namespace

const QuadratureRule& default_legendre() {
    static const QuadratureRule rule = gauss_legendre(kDefaultLegendreOrder);
    return rule;
}

double CoverageValue::clamped() const noexcept { return std::clamp(probability, 0.0, 1.0); }

double nearest_distance_pdf(double lambda, double r) {
    if (!(lambda > 0.0)) throw DomainError("nearest_distance_pdf: lambda must be positive");
    if (!(r >= 0.0)) throw DomainError("nearest_distance_pdf: r must be non-negative");
    return 2.0 * kPi * lambda * r * std::exp(-lambda * kPi * r * r);
}

double interference_i1(double c, double alpha) {
    require_alpha(alpha);
    return (2.0 / alpha) * std::pow(c, 2.0 / alpha) * kPi / std::sin(kPi * (alpha - 2.0) / alpha);
}

double interference_i2(double c, double alpha, const QuadratureRule& gl) {
    require_legendre(gl);
    if (c == 0.0) return 0.0;
    const auto x = gl.nodes();
    const auto w = gl.weights();
    double sum = 0.0;
    for (std::size_t m = 0; m < x.size(); ++m) {
        const double t = 0.5 * (x[m] + 1.0);
        // C / (C + t^(a/2)), written to stay finite as C grows without bound
        sum += 0.5 * w[m] / (1.0 + std::pow(t, 0.5 * alpha) / c);
    }
    return sum;
}

InterferenceFunctional interference_functional(Threshold t, const NetworkParams& params,
                                               const SuzukiDistribution& dist,
                                               const QuadratureRule& gl, std::size_t n) {
    require_alpha(params.alpha);
    require_legendre(gl);
    const auto gamma = dist.gamma_table();
    const auto prob = dist.mixture_weights();
    if (n >= gamma.size()) throw std::out_of_range("interference_functional: Hermite index out of range");

    InterferenceFunctional out;
    out.index = n;
    out.terms.reserve(gamma.size());
    const double base = t.linear() * params.rho / params.zeta / gamma[n];
    for (std::size_t n1 = 0; n1 < gamma.size(); ++n1) {
        const double c = base * gamma[n1];
        const InterferenceTerm term{c, interference_i1(c, params.alpha), interference_i2(c, params.alpha, gl)};
        out.value += prob[n1] * (term.i1 - term.i2);
        out.terms.push_back(term);
    }
    return out;
}

std::vector<double> interference_profile(Threshold t, const NetworkParams& params,
                                         const SuzukiDistribution& dist, const QuadratureRule& gl) {
    require_alpha(params.alpha);
    require_legendre(gl);
    const auto gamma = dist.gamma_table();
    const auto prob = dist.mixture_weights();
    std::vector<double> profile(gamma.size(), 0.0);
    for (std::size_t n = 0; n < gamma.size(); ++n) {
        const double base = t.linear() * params.rho / params.zeta / gamma[n];
        double value = 0.0;
        for (std::size_t n1 = 0; n1 < gamma.size(); ++n1) {
            const double c = base * gamma[n1];
            value += prob[n1] * (interference_i1(c, params.alpha) - interference_i2(c, params.alpha, gl));
        }
        profile[n] = value;
    }
    return profile;
}

CoverageValue conditional_coverage(double r, Threshold t, const NetworkParams& params,
                                   const SuzukiDistribution& dist, const QuadratureRule& gl) {
    if (!(r >= 0.0)) throw DomainError("conditional_coverage: r must be non-negative");
    require_alpha(params.alpha);
    std::vector<double> profile;
    if (params.epsilon > 0.0) profile = interference_profile(t, params, dist, gl);
    return {serving_mixture(r, t.linear(), params, dist, profile), CoverageMethod::Conditional};
}

CoverageValue average_coverage(Threshold t, const NetworkParams& params, const SuzukiDistribution& dist,
                               const QuadratureRule& gl) {
    return average_coverage(t, params, dist, gl, gl);
}

CoverageValue average_coverage(Threshold t, const NetworkParams& params, const SuzukiDistribution& dist,
                               const QuadratureRule& interference_rule,
                               const QuadratureRule& distance_rule) {
    require_alpha(params.alpha);
    require_legendre(distance_rule);
    std::vector<double> profile;
    if (params.epsilon > 0.0) profile = interference_profile(t, params, dist, interference_rule);

    const auto x = distance_rule.nodes();
    const auto c = distance_rule.weights();
    double sum = 0.0;
    for (std::size_t m = 0; m < x.size(); ++m) {
        const double r = (x[m] + 1.0) / (1.0 - x[m]);
        const double jacobian = c[m] * (x[m] + 1.0) / std::pow(1.0 - x[m], 3);
        sum += jacobian * std::exp(-kPi * params.lambda * r * r) *
               serving_mixture(r, t.linear(), params, dist, profile);
    }
    return {4.0 * kPi * params.lambda * sum, CoverageMethod::FullSnr};
}

CoverageValue coverage_high_snr(Threshold t, const NetworkParams& params, const SuzukiDistribution& dist,
                                const QuadratureRule& gl) {
    require_alpha(params.alpha);
    const auto prob = dist.mixture_weights();
    double sum = 0.0;
    if (params.epsilon == 0.0) {
        for (double p : prob) sum += p;
        return {sum, CoverageMethod::HighSnr};
    }
    const auto profile = interference_profile(t, params, dist, gl);
    for (std::size_t n = 0; n < prob.size(); ++n) sum += prob[n] / (1.0 + params.epsilon * profile[n]);
    return {sum, CoverageMethod::HighSnr};
}

CoverageValue conditional_coverage_rayleigh(double r, Threshold t, const NetworkParams& params,
                                            const QuadratureRule& gl) {
    if (!(r >= 0.0)) throw DomainError("conditional_coverage_rayleigh: r must be non-negative");
    require_alpha(params.alpha);
    const double noise = t.linear() * std::pow(r, params.alpha) / (params.zeta * params.snr_linear());
    double interference = 0.0;
    if (params.epsilon > 0.0) {
        const double c = t.linear() * params.rho / params.zeta;
        const double f = interference_i1(c, params.alpha) - interference_i2(c, params.alpha, gl);
        interference = kPi * params.lambda * params.epsilon * r * r * f;
    }
    return {std::exp(-noise) * std::exp(-interference), CoverageMethod::Rayleigh};
}

double average_rate(const NetworkParams& params, const SuzukiDistribution& dist, const QuadratureRule& outer,
                    const QuadratureRule& inner) {
    require_legendre(outer);
    const auto x = outer.nodes();
    const auto c = outer.weights();
    double rate = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double level = (x[i] + 1.0) / (1.0 - x[i]);
        const double threshold = std::expm1(level);
        // beyond double range the coverage has long since underflowed
        if (!std::isfinite(threshold)) continue;
        const double coverage = average_coverage(Threshold::from_linear(threshold), params, dist, inner).probability;
        rate += 2.0 * c[i] / ((1.0 - x[i]) * (1.0 - x[i])) * coverage;
    }
    return rate;
}

}  // namespace cellcov
