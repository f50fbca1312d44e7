#pragma once

#include <cstddef>
#include <span>

namespace sharesig {

inline constexpr std::size_t kQuadratureNodes = 64;

/// Fixed 64-node Gauss-Legendre rule on [-1, 1], ascending nodes.
struct GaussLegendreRule {
  std::span<const double> nodes;
  std::span<const double> weights;
};

const GaussLegendreRule& gauss_legendre_64();

/// Integral of `f` over [a, b] with the 64-node rule.
template <typename F>
double integrate(F&& f, double a, double b) {
  const GaussLegendreRule& rule = gauss_legendre_64();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (std::size_t i = 0; i < kQuadratureNodes; ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return half * sum;
}

}  // namespace sharesig
