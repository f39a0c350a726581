#pragma once
// Parameter and result types shared by the analytic and Monte Carlo paths.
//
// Every quantity that is conventionally quoted in dB (thresholds, SNR, the
// shadowing mean and spread) is accepted in dB at the boundary and converted
// once; all internal math is linear.

#include <optional>
#include <stdexcept>
#include <string>

namespace cellcov {

/// Raised when a parameter violates a model invariant. `field()` names the
/// offending parameter so callers (config loader, CLI) can point at it.
class ParameterError : public std::invalid_argument {
public:
    ParameterError(std::string field, const std::string& message)
        : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Raised for arguments outside a function's mathematical domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

double db_to_linear(double x_db) noexcept;
double linear_to_db(double x);

/// Deployment and radio parameters of the downlink PPP network.
///
/// Distances use an arbitrary length unit; `lambda` is in base stations per
/// square unit of that length. The model is scale invariant, so only
/// consistency matters.
struct NetworkParams {
    double lambda = 0.25;      ///< BS density
    double alpha = 3.5;        ///< pathloss exponent, must exceed 2
    double zeta = 1.0;         ///< serving-BS power adjustment (linear)
    double rho = 1.0;          ///< interfering-BS power ratio (linear)
    double snr_db = 10.0;      ///< P / sigma^2 at the transmitter
    double epsilon = 0.2;      ///< user ratio M/N, probability an interferer shares the RB
    std::optional<int> m_users;
    std::optional<int> n_rbs;

    double snr_linear() const noexcept { return db_to_linear(snr_db); }
};

/// Lognormal shadowing component of the Suzuki channel, in dB.
struct FadingParams {
    double mu_z_db = -7.3683;
    double sigma_z_db = 8.0;

    /// Shadowing whose linear-scale mean is exactly one:
    /// mu_z = -sigma_z^2 ln(10) / 20. At sigma_z = 8 dB this is -7.3683 dB.
    static FadingParams unit_mean(double sigma_z_db) noexcept;

    bool is_rayleigh() const noexcept { return sigma_z_db == 0.0; }
};

/// SINR threshold, stored linearly. Constructed only through the named
/// factories so dB and linear values cannot be confused.
class Threshold {
public:
    static Threshold from_db(double t_db);
    static Threshold from_linear(double t_linear);

    double linear() const noexcept { return linear_; }
    double db() const noexcept { return linear_to_db(linear_); }

private:
    explicit Threshold(double linear) noexcept : linear_(linear) {}
    double linear_;
};

struct CoverageQuery {
    double threshold_db = 0.0;
    std::optional<double> distance;  ///< fixed serving distance for conditional queries
};

struct ValidatedParams {
    NetworkParams network;
    FadingParams fading;
};

/// Checks every invariant of the two parameter sets and returns them
/// unchanged. Throws ParameterError naming the first offending field.
ValidatedParams validate(const NetworkParams& params, const FadingParams& fading);

/// Resolves epsilon from m_users / n_rbs when those are present.
/// Throws ParameterError if an explicit epsilon disagrees with M/N.
NetworkParams resolve_user_ratio(NetworkParams params, bool epsilon_explicit);

void validate(const CoverageQuery& query);

}  // namespace cellcov
