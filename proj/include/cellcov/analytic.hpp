#pragma once
// Closed-form (quadrature) coverage and rate of the typical user.
//
// The typical user at the origin associates with its nearest base station
// at distance r. Interferers form a PPP outside r, each sharing the user's
// resource block with probability epsilon. Under Suzuki fading the
// coverage conditioned on r is
//
//   P_c(T, r) = sum_n p_n exp(-T r^alpha / (gamma_n zeta SNR)) exp(-pi lambda eps r^2 f_I(T, n))
//
// where p_n, gamma_n come from the Hermite discretization of the serving
// link and f_I(T, n) = sum_n1 p_n1 (I1(C) - I2(C)),
// C = T (rho / zeta) gamma_n1 / gamma_n, from the interferers' Laplace
// functional:
//
//   I1(C) = int_0^inf C t^(-a/2) / (1 + C t^(-a/2)) dt = (2/a) C^(2/a) pi / sin(pi (a - 2) / a)
//   I2(C) = int_0^1   C t^(-a/2) / (1 + C t^(-a/2)) dt  (Gauss-Legendre)

#include <cstddef>
#include <vector>

#include "cellcov/fading.hpp"
#include "cellcov/model.hpp"
#include "cellcov/quadrature.hpp"

namespace cellcov {

inline constexpr int kDefaultLegendreOrder = 10;

/// Shared default Legendre rule of order 10.
const QuadratureRule& default_legendre();

struct InterferenceTerm {
    double c;   ///< T (rho/zeta) gamma_n1 / gamma_n
    double i1;
    double i2;
};

struct InterferenceFunctional {
    std::size_t index = 0;              ///< outer Hermite index n
    double value = 0.0;                 ///< f_I(T, n)
    std::vector<InterferenceTerm> terms;  ///< one per inner index n1
};

enum class CoverageMethod { FullSnr, HighSnr, Rayleigh, Conditional };

struct CoverageValue {
    double probability = 0.0;  ///< raw quadrature value
    CoverageMethod method = CoverageMethod::FullSnr;

    double clamped() const noexcept;
};

/// f_R(r) = 2 pi lambda r exp(-lambda pi r^2), the nearest-BS distance density.
double nearest_distance_pdf(double lambda, double r);

/// I1(C) in closed form; requires alpha > 2.
double interference_i1(double c, double alpha);
/// I2(C) by Gauss-Legendre on [0, 1].
double interference_i2(double c, double alpha, const QuadratureRule& gl);

InterferenceFunctional interference_functional(Threshold t, const NetworkParams& params,
                                               const SuzukiDistribution& dist,
                                               const QuadratureRule& gl, std::size_t n);

/// f_I(T, n) for every outer index n, without the per-term breakdown.
std::vector<double> interference_profile(Threshold t, const NetworkParams& params,
                                         const SuzukiDistribution& dist, const QuadratureRule& gl);

CoverageValue conditional_coverage(double r, Threshold t, const NetworkParams& params,
                                   const SuzukiDistribution& dist,
                                   const QuadratureRule& gl = default_legendre());

/// Average over r with the substitution r = (1 + x) / (1 - x).
/// `gl` serves both the interference integral and the distance integral.
CoverageValue average_coverage(Threshold t, const NetworkParams& params,
                               const SuzukiDistribution& dist, const QuadratureRule& gl);
CoverageValue average_coverage(Threshold t, const NetworkParams& params,
                               const SuzukiDistribution& dist,
                               const QuadratureRule& interference_rule,
                               const QuadratureRule& distance_rule);

/// Interference-limited coverage sum_n p_n / (1 + eps f_I(T, n)); ignores
/// lambda and SNR entirely.
CoverageValue coverage_high_snr(Threshold t, const NetworkParams& params,
                                const SuzukiDistribution& dist, const QuadratureRule& gl);

/// Pure Rayleigh serving and interfering links (single exponential term).
CoverageValue conditional_coverage_rayleigh(double r, Threshold t, const NetworkParams& params,
                                            const QuadratureRule& gl = default_legendre());

/// Ergodic rate E[ln(1 + SINR)] in nats, by Gauss-Legendre over
/// t = (1 + x)/(1 - x) of the average coverage at threshold e^t - 1.
double average_rate(const NetworkParams& params, const SuzukiDistribution& dist,
                    const QuadratureRule& outer, const QuadratureRule& inner = default_legendre());

}  // namespace cellcov
