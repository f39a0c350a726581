#include "cellcov/model.hpp"

#include <cmath>
#include <numbers>

namespace cellcov {

double db_to_linear(double x_db) noexcept { return std::pow(10.0, x_db / 10.0); }

double linear_to_db(double x) {
    if (!(x > 0.0)) throw DomainError("linear_to_db: argument must be positive");
    return 10.0 * std::log10(x);
}

FadingParams FadingParams::unit_mean(double sigma_z_db) noexcept {
    return {-sigma_z_db * sigma_z_db * std::numbers::ln10 / 20.0, sigma_z_db};
}

Threshold Threshold::from_db(double t_db) {
    if (!std::isfinite(t_db)) throw ParameterError("threshold_db", "must be finite");
    return Threshold(db_to_linear(t_db));
}

Threshold Threshold::from_linear(double t_linear) {
    if (!(t_linear >= 0.0) || !std::isfinite(t_linear))
        throw ParameterError("threshold", "linear threshold must be finite and non-negative");
    return Threshold(t_linear);
}

namespace {

void require_finite(const char* field, double value) {
    if (!std::isfinite(value)) throw ParameterError(field, "must be finite");
}

}  // namespace

NetworkParams resolve_user_ratio(NetworkParams params, bool epsilon_explicit) {
    if (params.m_users.has_value() != params.n_rbs.has_value()) {
        // n_rbs alone is informational; m_users alone is not interpretable.
        if (params.m_users) throw ParameterError("m_users", "requires n_rbs");
        return params;
    }
    if (!params.m_users) return params;
    if (*params.n_rbs <= 0) throw ParameterError("n_rbs", "must be a positive integer");
    if (*params.m_users < 0) throw ParameterError("m_users", "must be non-negative");
    const double ratio = static_cast<double>(*params.m_users) / static_cast<double>(*params.n_rbs);
    if (epsilon_explicit && std::abs(ratio - params.epsilon) > 1e-12)
        throw ParameterError("epsilon", "disagrees with m_users / n_rbs = " + std::to_string(ratio));
    params.epsilon = ratio;
    return params;
}

ValidatedParams validate(const NetworkParams& p, const FadingParams& f) {
    require_finite("lambda", p.lambda);
    require_finite("alpha", p.alpha);
    require_finite("zeta", p.zeta);
    require_finite("rho", p.rho);
    require_finite("snr_db", p.snr_db);
    require_finite("epsilon", p.epsilon);
    require_finite("mu_z_db", f.mu_z_db);
    require_finite("sigma_z_db", f.sigma_z_db);

    if (!(p.lambda > 0.0)) throw ParameterError("lambda", "BS density must be positive");
    if (!(p.alpha > 2.0))
        throw ParameterError("alpha", "must exceed 2, otherwise the I1 integral diverges");
    if (!(p.zeta > 0.0)) throw ParameterError("zeta", "must be positive");
    if (!(p.rho > 0.0)) throw ParameterError("rho", "must be positive");
    if (p.n_rbs && *p.n_rbs <= 0) throw ParameterError("n_rbs", "must be a positive integer");
    if (p.m_users && *p.m_users < 0) throw ParameterError("m_users", "must be non-negative");
    if (p.m_users && p.n_rbs) {
        const double ratio = static_cast<double>(*p.m_users) / static_cast<double>(*p.n_rbs);
        if (std::abs(ratio - p.epsilon) > 1e-12)
            throw ParameterError("epsilon", "must equal m_users / n_rbs");
    }
    if (!(p.epsilon >= 0.0 && p.epsilon <= 1.0))
        throw ParameterError("epsilon", "user ratio must lie in [0, 1], got " + std::to_string(p.epsilon));
    if (!(f.sigma_z_db >= 0.0)) throw ParameterError("sigma_z_db", "must be non-negative");
    return {p, f};
}

void validate(const CoverageQuery& query) {
    if (!std::isfinite(query.threshold_db)) throw ParameterError("threshold_db", "must be finite");
    if (query.distance && !(*query.distance > 0.0))
        throw ParameterError("distance", "must be positive when given");
}

}  // namespace cellcov
