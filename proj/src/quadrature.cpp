#include "sharesig/quadrature.hpp"

#include <array>

#include <boost/math/quadrature/gauss.hpp>

namespace sharesig {

namespace {

struct RuleStorage {
  std::array<double, kQuadratureNodes> nodes{};
  std::array<double, kQuadratureNodes> weights{};

  RuleStorage() {
    // Boost stores the non-negative half of the symmetric rule.
    using Gauss = boost::math::quadrature::gauss<double, kQuadratureNodes>;
    const auto& abscissa = Gauss::abscissa();
    const auto& w = Gauss::weights();
    constexpr std::size_t half = kQuadratureNodes / 2;
    for (std::size_t i = 0; i < half; ++i) {
      nodes[half - 1 - i] = -abscissa[i];
      weights[half - 1 - i] = w[i];
      nodes[half + i] = abscissa[i];
      weights[half + i] = w[i];
    }
  }
};

}  // namespace

const GaussLegendreRule& gauss_legendre_64() {
  static const RuleStorage storage;
  static const GaussLegendreRule rule{storage.nodes, storage.weights};
  return rule;
}

}  // namespace sharesig
