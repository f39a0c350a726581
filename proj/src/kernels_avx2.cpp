// AVX2 kernels, four doubles per register. Built with -mavx2 and without
// -mfma: each lane performs exactly the scalar reference's operations.

#include <immintrin.h>

#include <array>
#include <cstdint>

#include "cellcov/kernels.hpp"
#include "kernels_constants.hpp"

namespace cellcov::kernels {
namespace {

using namespace consts;

inline __m256d set1(double v) { return _mm256_set1_pd(v); }

inline __m256d exp_pd(__m256d x) {
    const __m256d over = _mm256_cmp_pd(x, set1(kExpHi), _CMP_GT_OQ);
    const __m256d under = _mm256_cmp_pd(x, set1(kExpLo), _CMP_LT_OQ);
    x = _mm256_min_pd(_mm256_max_pd(x, set1(kExpLo)), set1(kExpHi));
    const __m256d px = _mm256_floor_pd(_mm256_add_pd(_mm256_mul_pd(set1(kLog2e), x), set1(0.5)));
    x = _mm256_sub_pd(x, _mm256_mul_pd(px, set1(kExpC1)));
    x = _mm256_sub_pd(x, _mm256_mul_pd(px, set1(kExpC2)));
    const __m256d xx = _mm256_mul_pd(x, x);
    __m256d p = _mm256_add_pd(_mm256_mul_pd(set1(kExpP0), xx), set1(kExpP1));
    p = _mm256_add_pd(_mm256_mul_pd(p, xx), set1(kExpP2));
    p = _mm256_mul_pd(x, p);
    __m256d q = _mm256_add_pd(_mm256_mul_pd(set1(kExpQ0), xx), set1(kExpQ1));
    q = _mm256_add_pd(_mm256_mul_pd(q, xx), set1(kExpQ2));
    q = _mm256_add_pd(_mm256_mul_pd(q, xx), set1(kExpQ3));
    __m256d r = _mm256_div_pd(p, _mm256_sub_pd(q, p));
    r = _mm256_add_pd(set1(1.0), _mm256_mul_pd(set1(2.0), r));

    // px is integral and |px| < 2^51: adding 2^52 + 2^51 places it in the
    // low mantissa bits, from which the biased exponent is built.
    const __m256d magic = set1(6755399441055744.0);
    const __m256i n = _mm256_sub_epi64(_mm256_castpd_si256(_mm256_add_pd(px, magic)),
                                       _mm256_castpd_si256(magic));
    const __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(n, _mm256_set1_epi64x(1023)), 52);
    __m256d result = _mm256_mul_pd(r, _mm256_castsi256_pd(bits));
    result = _mm256_blendv_pd(result, set1(__builtin_inf()), over);
    result = _mm256_blendv_pd(result, _mm256_setzero_pd(), under);
    return result;
}

inline __m256d log_pd(__m256d x) {
    const __m256i bits = _mm256_castpd_si256(x);
    // Biased exponent as a double: OR into the mantissa of 2^52 and subtract 2^52.
    const __m256d two52 = set1(4503599627370496.0);
    const __m256i ebits = _mm256_srli_epi64(bits, 52);
    __m256d e = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(ebits, _mm256_castpd_si256(two52))), two52);
    e = _mm256_sub_pd(e, set1(1022.0));
    const __m256i mant = _mm256_or_si256(_mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFll)),
                                         _mm256_set1_epi64x(0x3FE0000000000000ll));
    const __m256d m = _mm256_castsi256_pd(mant);
    const __m256d small = _mm256_cmp_pd(m, set1(kSqrtHalf), _CMP_LT_OQ);
    e = _mm256_blendv_pd(e, _mm256_sub_pd(e, set1(1.0)), small);
    const __m256d f = _mm256_blendv_pd(_mm256_sub_pd(m, set1(1.0)),
                                       _mm256_sub_pd(_mm256_add_pd(m, m), set1(1.0)), small);
    const __m256d z = _mm256_mul_pd(f, f);
    __m256d p = _mm256_add_pd(_mm256_mul_pd(set1(kLogP0), f), set1(kLogP1));
    p = _mm256_add_pd(_mm256_mul_pd(p, f), set1(kLogP2));
    p = _mm256_add_pd(_mm256_mul_pd(p, f), set1(kLogP3));
    p = _mm256_add_pd(_mm256_mul_pd(p, f), set1(kLogP4));
    p = _mm256_add_pd(_mm256_mul_pd(p, f), set1(kLogP5));
    __m256d q = _mm256_add_pd(f, set1(kLogQ0));
    q = _mm256_add_pd(_mm256_mul_pd(q, f), set1(kLogQ1));
    q = _mm256_add_pd(_mm256_mul_pd(q, f), set1(kLogQ2));
    q = _mm256_add_pd(_mm256_mul_pd(q, f), set1(kLogQ3));
    q = _mm256_add_pd(_mm256_mul_pd(q, f), set1(kLogQ4));
    __m256d y = _mm256_mul_pd(f, _mm256_div_pd(_mm256_mul_pd(z, p), q));
    y = _mm256_sub_pd(y, _mm256_mul_pd(e, set1(kLn2Lo)));
    y = _mm256_sub_pd(y, _mm256_mul_pd(set1(0.5), z));
    __m256d r = _mm256_add_pd(f, y);
    return _mm256_add_pd(r, _mm256_mul_pd(e, set1(kLn2Hi)));
}

// Copies a short tail into a full register's worth of lanes.
inline __m256d load_tail(const double* src, std::size_t count, double fill) {
    std::array<double, kLanes> buf;
    buf.fill(fill);
    for (std::size_t i = 0; i < count; ++i) buf[i] = src[i];
    return _mm256_loadu_pd(buf.data());
}

inline void store_tail(double* dst, std::size_t count, __m256d v) {
    std::array<double, kLanes> buf;
    _mm256_storeu_pd(buf.data(), v);
    for (std::size_t i = 0; i < count; ++i) dst[i] = buf[i];
}

void exp_n(const double* x, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) _mm256_storeu_pd(out + i, exp_pd(_mm256_loadu_pd(x + i)));
    if (i < n) store_tail(out + i, n - i, exp_pd(load_tail(x + i, n - i, 0.0)));
}

void log_n(const double* x, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) _mm256_storeu_pd(out + i, log_pd(_mm256_loadu_pd(x + i)));
    if (i < n) store_tail(out + i, n - i, log_pd(load_tail(x + i, n - i, 1.0)));
}

inline __m256d gain_term(__m256d d2, __m256d z, __m256d w, const GainCoefficients& c) {
    const __m256d arg = _mm256_sub_pd(_mm256_add_pd(set1(c.log_scale), _mm256_mul_pd(set1(c.shadow_scale), z)),
                                      _mm256_mul_pd(set1(c.half_alpha), log_pd(d2)));
    return _mm256_mul_pd(w, exp_pd(arg));
}

double path_gain_sum(const double* sq_dist, const double* shadow, const double* weight,
                     std::size_t n, const GainCoefficients& c) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes)
        acc = _mm256_add_pd(acc, gain_term(_mm256_loadu_pd(sq_dist + i), _mm256_loadu_pd(shadow + i),
                                           _mm256_loadu_pd(weight + i), c));
    if (i < n) {
        const std::size_t rem = n - i;
        const __m256d lane = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
        const __m256d live = _mm256_cmp_pd(lane, set1(static_cast<double>(rem)), _CMP_LT_OQ);
        const __m256d term = gain_term(load_tail(sq_dist + i, rem, 1.0), load_tail(shadow + i, rem, 0.0),
                                       load_tail(weight + i, rem, 0.0), c);
        acc = _mm256_add_pd(acc, _mm256_and_pd(term, live));
    }
    std::array<double, kLanes> lanes;
    _mm256_storeu_pd(lanes.data(), acc);
    return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

void exponential_mixture(const double* x, std::size_t n, const double* rate, const double* coeff,
                         std::size_t terms, double* out) {
    auto block = [&](__m256d xv) {
        __m256d sum = _mm256_setzero_pd();
        for (std::size_t k = 0; k < terms; ++k) {
            const __m256d arg = _mm256_xor_pd(_mm256_mul_pd(set1(rate[k]), xv), set1(-0.0));
            sum = _mm256_add_pd(sum, _mm256_mul_pd(set1(coeff[k]), exp_pd(arg)));
        }
        return sum;
    };
    std::size_t j = 0;
    for (; j + kLanes <= n; j += kLanes) _mm256_storeu_pd(out + j, block(_mm256_loadu_pd(x + j)));
    if (j < n) store_tail(out + j, n - j, block(load_tail(x + j, n - j, 0.0)));
}

}  // namespace

namespace detail {
const KernelTable& avx2_table() noexcept {
    static constexpr KernelTable table{Backend::Avx2, exp_n, log_n, path_gain_sum, exponential_mixture};
    return table;
}
}  // namespace detail

}  // namespace cellcov::kernels
