#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "cellcov/kernels.hpp"

using namespace cellcov::kernels;

namespace {

std::vector<double> uniform(std::size_t n, double lo, double hi, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> d(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

const KernelTable& scalar() { return table(Backend::Scalar); }

bool same_bits(double a, double b) { return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b); }

}  // namespace

TEST(Dispatch, ScalarAlwaysAvailable) {
    EXPECT_TRUE(available(Backend::Scalar));
    EXPECT_EQ(scalar().backend, Backend::Scalar);
    EXPECT_EQ(to_string(Backend::Scalar), "scalar");
    EXPECT_EQ(to_string(Backend::Avx2), "avx2");
    EXPECT_TRUE(available(active().backend));
}

TEST(Dispatch, UnavailableBackendThrows) {
    if (available(Backend::Avx2)) GTEST_SKIP() << "AVX2 present";
    EXPECT_THROW(table(Backend::Avx2), std::invalid_argument);
}

TEST(Dispatch, SpanSizesChecked) {
    std::vector<double> a(4), b(3);
    EXPECT_THROW(cellcov::kernels::exp(a, b), std::invalid_argument);
    EXPECT_THROW(cellcov::kernels::log(a, b), std::invalid_argument);
    EXPECT_THROW(path_gain_sum(a, b, a, {}), std::invalid_argument);
    EXPECT_THROW(exponential_mixture(a, a, b, a), std::invalid_argument);
}

TEST(ScalarExp, AccurateAgainstStd) {
    const auto x = uniform(200000, -700.0, 700.0, 1);
    std::vector<double> out(x.size());
    cellcov::kernels::exp(x, out, scalar());
    for (std::size_t i = 0; i < x.size(); ++i)
        ASSERT_NEAR(out[i] / std::exp(x[i]), 1.0, 4e-16) << x[i];
}

TEST(ScalarExp, SmallArguments) {
    const auto x = uniform(100000, -1.0, 1.0, 2);
    std::vector<double> out(x.size());
    cellcov::kernels::exp(x, out, scalar());
    for (std::size_t i = 0; i < x.size(); ++i) ASSERT_NEAR(out[i] / std::exp(x[i]), 1.0, 4e-16);
}

TEST(ScalarExp, FlushAndSaturate) {
    const std::vector<double> x = {-708.5, -1000.0, 709.5, 1000.0, 0.0};
    std::vector<double> out(x.size());
    cellcov::kernels::exp(x, out, scalar());
    EXPECT_EQ(out[0], 0.0);
    EXPECT_EQ(out[1], 0.0);
    EXPECT_EQ(out[2], std::numeric_limits<double>::infinity());
    EXPECT_EQ(out[3], std::numeric_limits<double>::infinity());
    EXPECT_EQ(out[4], 1.0);
}

TEST(ScalarLog, AccurateAgainstStd) {
    auto x = uniform(100000, -300.0, 300.0, 3);
    for (auto& v : x) v = std::pow(10.0, v);
    std::vector<double> out(x.size());
    cellcov::kernels::log(x, out, scalar());
    for (std::size_t i = 0; i < x.size(); ++i)
        ASSERT_NEAR(out[i], std::log(x[i]), 4e-16 * std::max(1.0, std::abs(std::log(x[i])))) << x[i];
}

TEST(ScalarLog, NearOne) {
    const auto x = uniform(100000, 0.5, 2.0, 4);
    std::vector<double> out(x.size());
    cellcov::kernels::log(x, out, scalar());
    for (std::size_t i = 0; i < x.size(); ++i) ASSERT_NEAR(out[i], std::log(x[i]), 3e-16);
    std::vector<double> one = {1.0};
    cellcov::kernels::log(one, one, scalar());
    EXPECT_EQ(one[0], 0.0);
}

TEST(PathGain, MatchesDirectFormula) {
    const std::size_t n = 1003;
    const auto d2 = uniform(n, 0.01, 900.0, 5);
    const auto z = uniform(n, -4.0, 4.0, 6);
    const auto w = uniform(n, 0.0, 5.0, 7);
    const GainCoefficients c{std::log(5.0) - 1.7, 1.84, 1.75};
    double direct = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        direct += w[i] * std::exp(c.log_scale + c.shadow_scale * z[i]) * std::pow(d2[i], -c.half_alpha);
    EXPECT_NEAR(path_gain_sum(d2, z, w, c, scalar()) / direct, 1.0, 1e-13);
    EXPECT_EQ(path_gain_sum({}, {}, {}, c, scalar()), 0.0);
}

TEST(Mixture, MatchesDirectSum) {
    const auto x = uniform(37, 0.0, 20.0, 8);
    const auto rate = uniform(12, 0.01, 3.0, 9);
    const auto coeff = uniform(12, 0.0, 1.0, 10);
    std::vector<double> out(x.size());
    exponential_mixture(x, rate, coeff, out, scalar());
    for (std::size_t j = 0; j < x.size(); ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < rate.size(); ++k) s += coeff[k] * std::exp(-rate[k] * x[j]);
        EXPECT_NEAR(out[j], s, 1e-15 * std::max(1.0, s));
    }
}

class Avx2Equivalence : public ::testing::Test {
protected:
    void SetUp() override {
        if (!available(Backend::Avx2)) GTEST_SKIP() << "AVX2 unavailable";
    }
    const KernelTable& simd() { return table(Backend::Avx2); }
};

TEST_F(Avx2Equivalence, ExpBitIdentical) {
    for (std::size_t n : {0, 1, 3, 4, 5, 7, 8, 31, 1000}) {
        auto x = uniform(n, -750.0, 750.0, 20 + n);
        if (n > 3) x[0] = 0.0, x[1] = -708.0, x[2] = 709.0, x[3] = -745.0;
        std::vector<double> a(n), b(n);
        cellcov::kernels::exp(x, a, scalar());
        cellcov::kernels::exp(x, b, simd());
        for (std::size_t i = 0; i < n; ++i) ASSERT_TRUE(same_bits(a[i], b[i])) << x[i] << " " << a[i] << " " << b[i];
    }
}

TEST_F(Avx2Equivalence, LogBitIdentical) {
    for (std::size_t n : {1, 2, 4, 6, 9, 1000}) {
        auto x = uniform(n, -300.0, 300.0, 40 + n);
        for (auto& v : x) v = std::pow(10.0, v);
        x[0] = 1.0;
        std::vector<double> a(n), b(n);
        cellcov::kernels::log(x, a, scalar());
        cellcov::kernels::log(x, b, simd());
        for (std::size_t i = 0; i < n; ++i) ASSERT_TRUE(same_bits(a[i], b[i])) << x[i];
    }
}

TEST_F(Avx2Equivalence, PathGainBitIdentical) {
    const GainCoefficients c{std::log(10.0) - 1.696, 1.842, 1.5};
    for (std::size_t n : {1, 2, 3, 4, 5, 6, 7, 8, 9, 141, 707}) {
        const auto d2 = uniform(n, 1e-4, 900.0, 60 + n);
        const auto z = uniform(n, -5.0, 5.0, 61 + n);
        auto w = uniform(n, 0.0, 8.0, 62 + n);
        for (std::size_t i = 0; i < n; i += 3) w[i] = 0.0;
        const double a = path_gain_sum(d2, z, w, c, scalar());
        const double b = path_gain_sum(d2, z, w, c, simd());
        ASSERT_TRUE(same_bits(a, b)) << n << " " << a << " " << b;
    }
}

TEST_F(Avx2Equivalence, MixtureBitIdentical) {
    for (std::size_t n : {1, 4, 6, 13, 100}) {
        const auto x = uniform(n, 0.0, 50.0, 80 + n);
        const auto rate = uniform(12, 1e-3, 40.0, 81 + n);
        const auto coeff = uniform(12, 0.0, 1.0, 82 + n);
        std::vector<double> a(n), b(n);
        exponential_mixture(x, rate, coeff, a, scalar());
        exponential_mixture(x, rate, coeff, b, simd());
        for (std::size_t i = 0; i < n; ++i) ASSERT_TRUE(same_bits(a[i], b[i])) << i;
    }
}
