#pragma once

#include <string>
#include <variant>
#include <vector>

#include "sharesig/quadrature.hpp"

namespace sharesig {

struct UniformPrior {
  double a = 0.0;
  double b = 1.0;
};

/// Beta(alpha, beta) on [0, 1].
struct BetaPrior {
  double alpha = 1.0;
  double beta = 1.0;
};

/// Density linear between knots, zero outside [x.front(), x.back()].
/// Heights are normalized at construction.
struct PiecewiseLinearPrior {
  std::vector<double> x;
  std::vector<double> y;
};

struct PointMassPrior {
  double x = 0.5;
};

using PriorKind =
    std::variant<UniformPrior, BetaPrior, PiecewiseLinearPrior, PointMassPrior>;

/// A prior-belief distribution on [0, 1] (F_S or F_R).
///
/// Uniform and point-mass moments are closed form; Beta moments use the
/// regularized incomplete beta function; piecewise-linear moments use the
/// 64-node Gauss-Legendre rule on each segment. Immutable after
/// construction.
class Distribution {
 public:
  struct Node {
    double x;
    double weight;
  };

  static Distribution uniform(double a = 0.0, double b = 1.0);
  static Distribution beta(double alpha, double beta);
  static Distribution piecewise_linear(std::vector<double> x,
                                       std::vector<double> y);
  static Distribution point_mass(double x);

  const PriorKind& kind() const { return kind_; }
  std::string kind_name() const;

  double density(double x) const;
  double cdf(double x) const;
  /// P(a <= p <= b).
  double mass(double a, double b) const;
  /// Integral of z dF(z) over [a, b].
  double partial_moment(double a, double b) const;
  /// E[p | a <= p <= b]. Throws SolverError(EmptyTruncation) when the
  /// interval carries no mass.
  double truncated_mean(double a, double b) const;
  double mean() const;
  double quantile(double u) const;

  double support_lo() const { return lo_; }
  double support_hi() const { return hi_; }
  bool is_degenerate() const;

  /// Quadrature nodes for expectations: the weights sum to one and
  /// integral g dF is approximated by sum w_i g(x_i).
  const std::vector<Node>& expectation_nodes() const { return nodes_; }

  template <typename G>
  double expect(G&& g) const {
    double sum = 0.0;
    for (const Node& n : nodes_) sum += n.weight * g(n.x);
    return sum;
  }

 private:
  explicit Distribution(PriorKind kind);
  void build_nodes();

  PriorKind kind_;
  double lo_ = 0.0;
  double hi_ = 1.0;
  std::vector<double> segment_cdf_;  // piecewise-linear: CDF at each knot
  std::vector<Node> nodes_;
};

/// Free-function form of Distribution::truncated_mean.
double truncated_mean(const Distribution& dist, double a, double b);

}  // namespace sharesig
