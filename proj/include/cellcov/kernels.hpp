#pragma once
// Data-parallel inner loops shared by the analytic and Monte Carlo paths.
//
// Each kernel has a portable scalar reference and, on x86-64, an AVX2
// variant chosen at runtime. Both variants evaluate exp/log with the same
// rational approximations and the same operation order (no FMA contraction,
// four-lane accumulation), so their outputs are bit-identical.
//
// Domain notes shared by both backends:
//   exp: finite input; results below e^-708 flush to 0, above e^709 saturate to +inf.
//   log: positive, normal, finite input.

#include <cstddef>
#include <span>
#include <string_view>

namespace cellcov::kernels {

enum class Backend { Scalar, Avx2 };

std::string_view to_string(Backend backend) noexcept;

/// Coefficients of a per-link received power term
///   weight * exp(log_scale + shadow_scale * shadow - half_alpha * ln(sq_dist))
/// i.e. weight * power * 10^((mu + sigma z)/10) * d^-alpha with
/// log_scale = ln(power) + mu ln(10)/10 and shadow_scale = sigma ln(10)/10.
struct GainCoefficients {
    double log_scale = 0.0;
    double shadow_scale = 0.0;
    double half_alpha = 1.0;
};

struct KernelTable {
    Backend backend;
    void (*exp)(const double* x, double* out, std::size_t n);
    void (*log)(const double* x, double* out, std::size_t n);
    double (*path_gain_sum)(const double* sq_dist, const double* shadow, const double* weight,
                            std::size_t n, const GainCoefficients& c);
    // out[j] = sum_k coeff[k] * exp(-rate[k] * x[j])
    void (*exponential_mixture)(const double* x, std::size_t n, const double* rate,
                                const double* coeff, std::size_t terms, double* out);
};

bool available(Backend backend) noexcept;

/// Table for a specific backend. Throws std::invalid_argument if the CPU or
/// the build does not support it.
const KernelTable& table(Backend backend);

/// Backend picked at first use: AVX2 when supported, unless the environment
/// variable CELLCOV_KERNEL is set to "scalar".
const KernelTable& active() noexcept;

void exp(std::span<const double> x, std::span<double> out, const KernelTable& k = active());
void log(std::span<const double> x, std::span<double> out, const KernelTable& k = active());

double path_gain_sum(std::span<const double> sq_dist, std::span<const double> shadow,
                     std::span<const double> weight, const GainCoefficients& c,
                     const KernelTable& k = active());

void exponential_mixture(std::span<const double> x, std::span<const double> rate,
                         std::span<const double> coeff, std::span<double> out,
                         const KernelTable& k = active());

namespace detail {
const KernelTable& scalar_table() noexcept;
#if defined(CELLCOV_HAVE_AVX2)
const KernelTable& avx2_table() noexcept;
#endif
}  // namespace detail

}  // namespace cellcov::kernels
