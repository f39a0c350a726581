// Scalar reference kernels. Compiled with -ffp-contract=off; every
// expression mirrors the AVX2 lane arithmetic in kernels_avx2.cpp.

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

#include "cellcov/kernels.hpp"
#include "kernels_constants.hpp"

namespace cellcov::kernels {
namespace {

using namespace consts;

double exp_ref(double x) {
    const bool over = x > kExpHi;
    const bool under = x < kExpLo;
    x = std::fmin(std::fmax(x, kExpLo), kExpHi);
    const double px = std::floor(kLog2e * x + 0.5);
    x = x - px * kExpC1;
    x = x - px * kExpC2;
    const double xx = x * x;
    const double p = x * ((kExpP0 * xx + kExpP1) * xx + kExpP2);
    const double q = ((kExpQ0 * xx + kExpQ1) * xx + kExpQ2) * xx + kExpQ3;
    double r = p / (q - p);
    r = 1.0 + 2.0 * r;
    const auto bits = static_cast<std::uint64_t>(static_cast<std::int64_t>(px) + 1023) << 52;
    double result = r * std::bit_cast<double>(bits);
    if (over) result = std::numeric_limits<double>::infinity();
    if (under) result = 0.0;
    return result;
}

double log_ref(double x) {
    const auto bits = std::bit_cast<std::uint64_t>(x);
    double e = static_cast<double>(bits >> 52) - 1022.0;
    const double m = std::bit_cast<double>((bits & 0x000FFFFFFFFFFFFFull) | 0x3FE0000000000000ull);
    const bool small = m < kSqrtHalf;
    if (small) e = e - 1.0;
    const double f = small ? (m + m) - 1.0 : m - 1.0;
    const double z = f * f;
    const double p = ((((kLogP0 * f + kLogP1) * f + kLogP2) * f + kLogP3) * f + kLogP4) * f + kLogP5;
    const double q = ((((f + kLogQ0) * f + kLogQ1) * f + kLogQ2) * f + kLogQ3) * f + kLogQ4;
    double y = f * (z * p / q);
    y = y - e * kLn2Lo;
    y = y - 0.5 * z;
    double r = f + y;
    r = r + e * kLn2Hi;
    return r;
}

void exp_n(const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = exp_ref(x[i]);
}

void log_n(const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = log_ref(x[i]);
}

double path_gain_sum(const double* sq_dist, const double* shadow, const double* weight,
                     std::size_t n, const GainCoefficients& c) {
    std::array<double, kLanes> acc{};
    for (std::size_t i = 0; i < n; ++i) {
        const double arg = (c.log_scale + c.shadow_scale * shadow[i]) - c.half_alpha * log_ref(sq_dist[i]);
        acc[i % kLanes] += weight[i] * exp_ref(arg);
    }
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

void exponential_mixture(const double* x, std::size_t n, const double* rate, const double* coeff,
                         std::size_t terms, double* out) {
    for (std::size_t j = 0; j < n; ++j) {
        double sum = 0.0;
        for (std::size_t k = 0; k < terms; ++k) sum += coeff[k] * exp_ref(-(rate[k] * x[j]));
        out[j] = sum;
    }
}

}  // namespace

namespace detail {
const KernelTable& scalar_table() noexcept {
    static constexpr KernelTable table{Backend::Scalar, exp_n, log_n, path_gain_sum, exponential_mixture};
    return table;
}
}  // namespace detail

}  // namespace cellcov::kernels
