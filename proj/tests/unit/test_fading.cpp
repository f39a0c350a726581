#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cellcov/fading.hpp"
#include "cellcov/rng.hpp"
#include "oracles.hpp"

using namespace cellcov;

namespace {

const FadingParams kRayleigh{0.0, 0.0};
const FadingParams kReference{-7.3683, 8.0};

}  // namespace

TEST(Pdf, RayleighValues) {
    const SuzukiDistribution d(kRayleigh);
    EXPECT_NEAR(d.pdf(1.0), std::exp(-1.0), 1e-12);
    EXPECT_NEAR(d.pdf(0.0), 1.0, 1e-12);
}

TEST(Pdf, NegativeGainIsDomainError) {
    const SuzukiDistribution d(kReference);
    EXPECT_THROW(d.pdf(-1e-9), DomainError);
    EXPECT_THROW(d.cdf(-1.0), DomainError);
    EXPECT_THROW(d.ccdf(-1.0), DomainError);
    EXPECT_THROW(d.mgf(-0.5), DomainError);
}

TEST(Pdf, MatchesExactDensity) {
    const SuzukiDistribution d(kReference, QuadratureRule::kMaxOrder);
    const double exact = oracle::suzuki_pdf(1.0, kReference.mu_z_db, kReference.sigma_z_db);
    EXPECT_NEAR(d.pdf(1.0) / exact, 1.0, 1e-4);
}

TEST(Pdf, HermiteErrorAcrossRange) {
    // The 12-node mixture is only good to a few percent pointwise at 8 dB
    // spread; the error shrinks steadily with order.
    double previous = 1.0;
    for (int n : {12, 24, 48, 64}) {
        const SuzukiDistribution d(kReference, n);
        double worst = 0.0;
        for (double g : {0.05, 0.2, 0.5, 1.0, 2.0, 5.0}) {
            const double exact = oracle::suzuki_pdf(g, kReference.mu_z_db, kReference.sigma_z_db);
            worst = std::max(worst, std::abs(d.pdf(g) / exact - 1.0));
        }
        EXPECT_LT(worst, n == 12 ? 0.1 : 0.5 * previous) << n;
        previous = worst;
    }
    EXPECT_LT(previous, 1e-4);
}

TEST(Cdf, Limits) {
    const SuzukiDistribution d(kReference);
    EXPECT_EQ(d.cdf(0.0), 0.0);
    EXPECT_NEAR(d.cdf(1e9), 1.0, 1e-10);
    EXPECT_NEAR(SuzukiDistribution(kRayleigh).cdf(std::numbers::ln2), 0.5, 1e-10);
    EXPECT_LE(d.cdf_clamped(1e9), 1.0);
    EXPECT_NEAR(d.cdf(3.0) + d.ccdf(3.0), 1.0, 1e-12);
}

TEST(Cdf, BatchedMatchesScalar) {
    const SuzukiDistribution d(kReference);
    std::vector<double> g;
    for (int i = 0; i < 101; ++i) g.push_back(0.01 * i * i);
    std::vector<double> out(g.size());
    d.cdf(g, out);
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(out[i], d.cdf(g[i]), 1e-14);
}

TEST(Mgf, Values) {
    const SuzukiDistribution d(kReference);
    EXPECT_NEAR(d.mgf(0.0), 1.0, 1e-12);
    EXPECT_NEAR(SuzukiDistribution(kRayleigh).mgf(1.0), 0.5, 1e-12);
    const double exact = oracle::suzuki_mgf(2.0, kReference.mu_z_db, kReference.sigma_z_db);
    EXPECT_NEAR(d.mgf(2.0) / exact, 1.0, 1e-4);
}

TEST(Property, Normalization) {
    for (FadingParams f : {kRayleigh, kReference, FadingParams{0.0, 4.0}, FadingParams{-2.88, 5.0},
                           FadingParams{3.0, 12.0}}) {
        const SuzukiDistribution d(f);
        const double top = 1e4 * d.mean();
        // integrate on a log grid; the density spans many decades
        const double mass = oracle::adaptive([&](double u) {
            const double g = std::exp(u);
            return d.pdf(g) * g;
        }, std::log(1e-12), std::log(top));
        EXPECT_GE(mass, 0.999) << f.mu_z_db << " " << f.sigma_z_db;
        EXPECT_LE(mass, 1.0 + 1e-9);
    }
}

TEST(Property, CdfDerivativeIsPdf) {
    const SuzukiDistribution d(kReference);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(std::log(0.01), std::log(20.0));
    for (int i = 0; i < 100; ++i) {
        const double g = std::exp(u(rng));
        const double h = 1e-5 * std::max(g, 0.05);
        const double fd = (d.cdf(g + h) - d.cdf(g - h)) / (2.0 * h);
        EXPECT_NEAR(fd, d.pdf(g), 1e-6) << g;
    }
}

TEST(Property, MgfIsLaplaceOfPdf) {
    const SuzukiDistribution d(kReference);
    for (double s : {0.1, 1.0, 10.0}) {
        const double laplace = oracle::adaptive([&](double u) {
            const double g = std::exp(u);
            return d.pdf(g) * std::exp(-s * g) * g;
        }, std::log(1e-14), std::log(1e4 * d.mean()));
        EXPECT_NEAR(d.mgf(s), laplace, 1e-6) << s;
    }
}

TEST(Property, RayleighDegeneracy) {
    const SuzukiDistribution d(kRayleigh);
    EXPECT_TRUE(kRayleigh.is_rayleigh());
    for (double g : {0.0, 0.1, 0.7, 1.0, 3.0, 12.0}) {
        EXPECT_NEAR(d.pdf(g), std::exp(-g), 1e-10);
        EXPECT_NEAR(d.cdf(g), -std::expm1(-g), 1e-10);
        EXPECT_NEAR(d.ccdf(g), std::exp(-g), 1e-10);
    }
    for (double s : {0.0, 0.5, 1.0, 40.0}) EXPECT_NEAR(d.mgf(s), 1.0 / (1.0 + s), 1e-10);
}

TEST(Sample, RayleighMean) {
    const SuzukiDistribution d(kRayleigh);
    Rng rng = make_stream(1, 0);
    double sum = 0.0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) sum += d.sample(rng);
    EXPECT_NEAR(sum / n, 1.0, 0.01);
}

TEST(Sample, ReferenceMean) {
    const SuzukiDistribution d(kReference);
    const double expected = std::pow(10.0, kReference.mu_z_db / 10.0) *
                            std::exp(0.5 * std::pow(kReference.sigma_z_db * std::numbers::ln10 / 10.0, 2));
    EXPECT_NEAR(d.mean(), expected, 1e-12);
    // cross-check the formula by integrating g f(g) with the exact density
    const double by_integral = oracle::adaptive([&](double u) {
        const double g = std::exp(u);
        return g * g * oracle::suzuki_pdf(g, kReference.mu_z_db, kReference.sigma_z_db);
    }, std::log(1e-10), std::log(1e4));
    EXPECT_NEAR(by_integral, expected, 1e-3 * expected);

    Rng rng = make_stream(2, 0);
    double sum = 0.0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) sum += d.sample(rng);
    EXPECT_NEAR(sum / n, expected, 0.02 * expected);
}

TEST(Sample, KolmogorovSmirnov) {
    for (FadingParams f : {kReference, kRayleigh, FadingParams{-2.88, 5.0}}) {
        const SuzukiDistribution d(f, 32);
        Rng rng = make_stream(3, 0);
        std::vector<double> x(100000);
        for (auto& v : x) v = d.sample(rng);
        const double ks = oracle::ks_statistic(x, [&](double g) { return d.cdf(g); });
        EXPECT_LT(ks, oracle::ks_critical_1pct(x.size())) << f.sigma_z_db;
    }
}

TEST(Sample, KolmogorovSmirnovDefaultOrder) {
    const SuzukiDistribution d(kReference);
    Rng rng = make_stream(4, 0);
    std::vector<double> x(100000);
    for (auto& v : x) v = d.sample(rng);
    EXPECT_LT(oracle::ks_statistic(x, [&](double g) { return d.cdf(g); }), oracle::ks_critical_1pct(x.size()));
}

TEST(Sample, ReproducibleStreams) {
    const SuzukiDistribution d(kReference);
    Rng a = make_stream(9, 3), b = make_stream(9, 3), c = make_stream(9, 4);
    for (int i = 0; i < 100; ++i) {
        const double x = d.sample(a);
        EXPECT_EQ(x, d.sample(b));
        EXPECT_NE(x, d.sample(c));
    }
}
