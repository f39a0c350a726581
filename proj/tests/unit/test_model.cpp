#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "cellcov/model.hpp"

using namespace cellcov;

TEST(Decibels, KnownValues) {
    EXPECT_DOUBLE_EQ(db_to_linear(10.0), 10.0);
    EXPECT_DOUBLE_EQ(db_to_linear(0.0), 1.0);
    EXPECT_NEAR(db_to_linear(-3.0), 0.501187233627, 1e-12);
}

TEST(Decibels, RoundTrip) {
    EXPECT_NEAR(db_to_linear(linear_to_db(3.7)), 3.7, 3.7e-12);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> db(-200.0, 200.0);
    for (int i = 0; i < 1000; ++i) {
        const double x = db(rng);
        EXPECT_NEAR(linear_to_db(db_to_linear(x)), x, 1e-12 * std::max(1.0, std::abs(x)));
    }
}

TEST(Decibels, NonPositiveLinearIsDomainError) {
    EXPECT_THROW(linear_to_db(0.0), DomainError);
    EXPECT_THROW(linear_to_db(-1.0), DomainError);
}

TEST(Validate, ReferenceParametersAreValid) {
    NetworkParams p;
    EXPECT_DOUBLE_EQ(p.alpha, 3.5);
    EXPECT_DOUBLE_EQ(p.lambda, 0.25);
    EXPECT_DOUBLE_EQ(p.epsilon, 0.2);
    const auto v = validate(p, FadingParams{});
    EXPECT_DOUBLE_EQ(v.network.alpha, 3.5);
    EXPECT_DOUBLE_EQ(v.fading.sigma_z_db, 8.0);
}

TEST(Validate, AlphaTwoDiverges) {
    NetworkParams p;
    p.alpha = 2.0;
    try {
        validate(p, FadingParams{});
        FAIL() << "alpha = 2 accepted";
    } catch (const ParameterError& e) {
        EXPECT_EQ(e.field(), "alpha");
        EXPECT_NE(std::string(e.what()).find("I1 integral diverges"), std::string::npos);
    }
}

TEST(Validate, UserRatioAboveOneFromCounts) {
    NetworkParams p;
    p.m_users = 13;
    p.n_rbs = 10;
    try {
        validate(resolve_user_ratio(p, false), FadingParams{});
        FAIL() << "epsilon 1.3 accepted";
    } catch (const ParameterError& e) {
        EXPECT_EQ(e.field(), "epsilon");
    }
}

TEST(Validate, CountsDetermineEpsilon) {
    NetworkParams p;
    p.m_users = 3;
    p.n_rbs = 15;
    p.epsilon = 0.9;
    const NetworkParams r = resolve_user_ratio(p, false);
    EXPECT_DOUBLE_EQ(r.epsilon, 0.2);
    EXPECT_NO_THROW(validate(r, FadingParams{}));
}

TEST(Validate, ExplicitEpsilonMustAgreeWithCounts) {
    NetworkParams p;
    p.m_users = 3;
    p.n_rbs = 15;
    p.epsilon = 0.5;
    EXPECT_THROW(resolve_user_ratio(p, true), ParameterError);
    p.epsilon = 0.2;
    EXPECT_NO_THROW(resolve_user_ratio(p, true));
}

TEST(Validate, InconsistentStoredCountsRejected) {
    NetworkParams p;
    p.m_users = 3;
    p.n_rbs = 15;
    p.epsilon = 0.5;
    EXPECT_THROW(validate(p, FadingParams{}), ParameterError);
}

TEST(Validate, FieldNamedForEveryViolation) {
    auto field_of = [](NetworkParams p, FadingParams f) -> std::string {
        try {
            validate(p, f);
        } catch (const ParameterError& e) {
            return e.field();
        }
        return "";
    };
    const double nan = std::numeric_limits<double>::quiet_NaN();
    NetworkParams p;
    FadingParams f;
    auto with = [&](auto edit) {
        NetworkParams q;
        edit(q);
        return field_of(q, f);
    };
    EXPECT_EQ(with([](NetworkParams& q) { q.lambda = 0.0; }), "lambda");
    EXPECT_EQ(with([&](NetworkParams& q) { q.lambda = nan; }), "lambda");
    EXPECT_EQ(with([](NetworkParams& q) { q.alpha = 1.5; }), "alpha");
    EXPECT_EQ(with([](NetworkParams& q) { q.zeta = 0.0; }), "zeta");
    EXPECT_EQ(with([](NetworkParams& q) { q.rho = -1.0; }), "rho");
    EXPECT_EQ(with([&](NetworkParams& q) { q.snr_db = nan; }), "snr_db");
    EXPECT_EQ(with([](NetworkParams& q) { q.epsilon = -0.1; }), "epsilon");
    EXPECT_EQ(with([](NetworkParams& q) { q.epsilon = 1.1; }), "epsilon");
    EXPECT_EQ(field_of(p, {.mu_z_db = 0.0, .sigma_z_db = -1.0}), "sigma_z_db");
    EXPECT_EQ(field_of(p, {.mu_z_db = nan, .sigma_z_db = 1.0}), "mu_z_db");
    EXPECT_EQ(field_of(p, f), "");
}

TEST(Validate, TotalOnRandomFiniteInputs) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> any(-10.0, 10.0);
    for (int i = 0; i < 2000; ++i) {
        NetworkParams p{any(rng), any(rng), any(rng), any(rng), 10 * any(rng), any(rng) / 5, {}, {}};
        FadingParams f{any(rng), any(rng)};
        try {
            validate(p, f);
        } catch (const ParameterError& e) {
            EXPECT_FALSE(e.field().empty());
        }
    }
}

TEST(Fading, UnitMeanShadowing) {
    const FadingParams f = FadingParams::unit_mean(8.0);
    EXPECT_NEAR(f.mu_z_db, -7.3683, 5e-5);
    EXPECT_DOUBLE_EQ(FadingParams::unit_mean(0.0).mu_z_db, 0.0);
    EXPECT_TRUE(FadingParams::unit_mean(0.0).is_rayleigh());
}

TEST(ThresholdType, Conversions) {
    EXPECT_DOUBLE_EQ(Threshold::from_db(0.0).linear(), 1.0);
    EXPECT_DOUBLE_EQ(Threshold::from_db(10.0).linear(), 10.0);
    EXPECT_NEAR(Threshold::from_linear(2.0).db(), 3.0103, 1e-4);
    EXPECT_THROW(Threshold::from_linear(-1.0), ParameterError);
    EXPECT_THROW(Threshold::from_db(std::numeric_limits<double>::infinity()), ParameterError);
}

TEST(Query, DistanceMustBePositive) {
    EXPECT_NO_THROW(validate(CoverageQuery{0.0, 1.0}));
    EXPECT_NO_THROW(validate(CoverageQuery{0.0, std::nullopt}));
    EXPECT_THROW(validate(CoverageQuery{0.0, 0.0}), ParameterError);
}
