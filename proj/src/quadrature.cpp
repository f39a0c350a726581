#include "cellcov/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cellcov/model.hpp"

namespace cellcov {

EvaluationError::EvaluationError(std::size_t node_index, double node, double value)
    : std::runtime_error("integrand not finite at node " + std::to_string(node_index) + " (x=" +
                         std::to_string(node) + ", f=" + std::to_string(value) + ")"),
      index_(node_index) {}

QuadratureRule::QuadratureRule(RuleKind kind, std::vector<double> nodes, std::vector<double> weights)
    : kind_(kind), nodes_(std::move(nodes)), weights_(std::move(weights)) {
    if (nodes_.size() != weights_.size())
        throw std::invalid_argument("QuadratureRule: node and weight counts differ");
}

namespace {

constexpr int kMaxNewtonSteps = 100;

void check_order(int order) {
    if (order < 1 || order > QuadratureRule::kMaxOrder)
        throw ParameterError("order", "quadrature order must lie in [1, " +
                                          std::to_string(QuadratureRule::kMaxOrder) + "], got " +
                                          std::to_string(order));
}

bool converged(double step, double z) { return std::abs(step) <= 1e-15 * (1.0 + std::abs(z)); }

}  // namespace

// Newton iteration on the three-term Legendre recurrence, one root per
// symmetric pair.
QuadratureRule gauss_legendre(int order) {
    check_order(order);
    const int n = order;
    std::vector<double> x(n), w(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < kMaxNewtonSteps; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            dp = n * (z * p1 - p2) / (z * z - 1.0);
            const double step = p1 / dp;
            z -= step;
            if (converged(step, z)) break;
        }
        if (2 * i + 1 == n) z = 0.0;
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    return QuadratureRule(RuleKind::Legendre, std::move(x), std::move(w));
}

// Newton iteration on the orthonormal Hermite recurrence, which stays in
// range for every supported order. Initial guesses for the largest roots
// follow the usual asymptotic estimates; later roots extrapolate from the
// two previous ones.
QuadratureRule gauss_hermite(int order) {
    check_order(order);
    const int n = order;
    const double pim4 = 1.0 / std::pow(std::numbers::pi, 0.25);
    std::vector<double> desc(n), w(n);
    double z = 0.0;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        if (i == 0)
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        else if (i == 1)
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        else if (i == 2)
            z = 1.86 * z - 0.86 * desc[0];
        else if (i == 3)
            z = 1.91 * z - 0.91 * desc[1];
        else
            z = 2.0 * z - desc[i - 2];

        double dp = 0.0;
        for (int it = 0; it < kMaxNewtonSteps; ++it) {
            double p1 = pim4, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 - std::sqrt(j / (j + 1.0)) * p3;
            }
            dp = std::sqrt(2.0 * n) * p2;
            const double step = p1 / dp;
            z -= step;
            if (converged(step, z)) break;
        }
        if (2 * i + 1 == n) z = 0.0;
        desc[i] = z;
        desc[n - 1 - i] = -z;
        w[i] = w[n - 1 - i] = 2.0 / (dp * dp);
    }
    std::reverse(desc.begin(), desc.end());
    std::reverse(w.begin(), w.end());
    return QuadratureRule(RuleKind::Hermite, std::move(desc), std::move(w));
}

double integrate(const QuadratureRule& rule, const std::function<double(double)>& f) {
    const auto nodes = rule.nodes();
    const auto weights = rule.weights();
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double value = f(nodes[i]);
        if (!std::isfinite(value)) throw EvaluationError(i, nodes[i], value);
        sum += weights[i] * value;
    }
    return sum;
}

}  // namespace cellcov
