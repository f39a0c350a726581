#pragma once
// Gauss-Hermite and Gauss-Legendre rules of arbitrary order.

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cellcov {

enum class RuleKind { Hermite, Legendre };

/// Thrown by integrate() when the integrand is not finite at a node.
class EvaluationError : public std::runtime_error {
public:
    EvaluationError(std::size_t node_index, double node, double value);
    std::size_t node_index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// Nodes and weights of an n-point Gaussian rule, nodes sorted ascending.
///
/// Hermite rules integrate against exp(-t^2) on the real line, Legendre
/// rules against 1 on [-1, 1].
class QuadratureRule {
public:
    static constexpr int kMaxOrder = 64;

    QuadratureRule(RuleKind kind, std::vector<double> nodes, std::vector<double> weights);

    RuleKind kind() const noexcept { return kind_; }
    int order() const noexcept { return static_cast<int>(nodes_.size()); }
    std::span<const double> nodes() const noexcept { return nodes_; }
    std::span<const double> weights() const noexcept { return weights_; }

private:
    RuleKind kind_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

QuadratureRule gauss_hermite(int order);
QuadratureRule gauss_legendre(int order);

/// Sum of weight_i * f(node_i). Throws EvaluationError for a non-finite term.
double integrate(const QuadratureRule& rule, const std::function<double(double)>& f);

}  // namespace cellcov
