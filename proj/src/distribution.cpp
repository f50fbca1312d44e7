#include "sharesig/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/special_functions/beta.hpp>

#include "sharesig/error.hpp"

namespace sharesig {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void invalid(const std::string& what) {
  throw SolverError(ErrorKind::InvalidDistribution, what);
}

// Linear interpolation of a piecewise-linear density inside segment k.
double segment_density(const PiecewiseLinearPrior& d, std::size_t k,
                       double x) {
  const double h = d.x[k + 1] - d.x[k];
  const double t = (x - d.x[k]) / h;
  return d.y[k] + t * (d.y[k + 1] - d.y[k]);
}

}  // namespace

Distribution::Distribution(PriorKind kind) : kind_(std::move(kind)) {}

Distribution Distribution::uniform(double a, double b) {
  if (!(a >= 0.0 && a < b && b <= 1.0)) {
    invalid("uniform requires 0 <= a < b <= 1");
  }
  Distribution d(UniformPrior{a, b});
  d.lo_ = a;
  d.hi_ = b;
  d.build_nodes();
  return d;
}

Distribution Distribution::beta(double alpha, double beta) {
  if (!(alpha > 0.0 && beta > 0.0 && std::isfinite(alpha) &&
        std::isfinite(beta))) {
    invalid("beta requires positive finite shape parameters");
  }
  Distribution d(BetaPrior{alpha, beta});
  d.build_nodes();
  return d;
}

Distribution Distribution::piecewise_linear(std::vector<double> x,
                                            std::vector<double> y) {
  if (x.size() < 2 || x.size() != y.size()) {
    invalid("piecewise_linear needs >= 2 knots with matching heights");
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= 0.0 && x[i] <= 1.0)) invalid("knots must lie in [0, 1]");
    if (i > 0 && !(x[i] > x[i - 1])) invalid("knots must be increasing");
    if (!(y[i] >= 0.0 && std::isfinite(y[i]))) {
      invalid("heights must be finite and non-negative");
    }
  }
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < x.size(); ++k) {
    total += 0.5 * (y[k] + y[k + 1]) * (x[k + 1] - x[k]);
  }
  if (!(total > 0.0)) invalid("density has zero total mass");
  for (double& v : y) v /= total;

  Distribution d(PiecewiseLinearPrior{std::move(x), std::move(y)});
  const auto& pl = std::get<PiecewiseLinearPrior>(d.kind_);
  d.lo_ = pl.x.front();
  d.hi_ = pl.x.back();
  d.segment_cdf_.assign(pl.x.size(), 0.0);
  for (std::size_t k = 0; k + 1 < pl.x.size(); ++k) {
    d.segment_cdf_[k + 1] =
        d.segment_cdf_[k] + 0.5 * (pl.y[k] + pl.y[k + 1]) * (pl.x[k + 1] - pl.x[k]);
  }
  d.build_nodes();

  double check = 0.0;
  for (std::size_t k = 0; k + 1 < pl.x.size(); ++k) {
    check += integrate([&](double z) { return segment_density(pl, k, z); },
                       pl.x[k], pl.x[k + 1]);
  }
  if (std::abs(check - 1.0) > 1e-10) {
    invalid("density does not integrate to one");
  }
  return d;
}

Distribution Distribution::point_mass(double x) {
  if (!(x >= 0.0 && x <= 1.0)) invalid("point mass must lie in [0, 1]");
  Distribution d(PointMassPrior{x});
  d.lo_ = x;
  d.hi_ = x;
  d.build_nodes();
  return d;
}

void Distribution::build_nodes() {
  const GaussLegendreRule& rule = gauss_legendre_64();
  nodes_.clear();
  std::visit(
      Overloaded{
          [&](const UniformPrior& u) {
            for (std::size_t i = 0; i < kQuadratureNodes; ++i) {
              const double x = u.a + 0.5 * (u.b - u.a) * (1.0 + rule.nodes[i]);
              nodes_.push_back({x, 0.5 * rule.weights[i]});
            }
          },
          [&](const BetaPrior&) {
            // Probability-space nodes keep endpoint singularities integrable.
            for (std::size_t i = 0; i < kQuadratureNodes; ++i) {
              const double u = 0.5 * (1.0 + rule.nodes[i]);
              nodes_.push_back({quantile(u), 0.5 * rule.weights[i]});
            }
          },
          [&](const PiecewiseLinearPrior& d) {
            for (std::size_t k = 0; k + 1 < d.x.size(); ++k) {
              const double h = d.x[k + 1] - d.x[k];
              for (std::size_t i = 0; i < kQuadratureNodes; ++i) {
                const double x = d.x[k] + 0.5 * h * (1.0 + rule.nodes[i]);
                const double w = 0.5 * h * rule.weights[i] * segment_density(d, k, x);
                if (w > 0.0) nodes_.push_back({x, w});
              }
            }
          },
          [&](const PointMassPrior& p) { nodes_.push_back({p.x, 1.0}); },
      },
      kind_);
}

std::string Distribution::kind_name() const {
  return std::visit(Overloaded{
                        [](const UniformPrior&) { return "uniform"; },
                        [](const BetaPrior&) { return "beta"; },
                        [](const PiecewiseLinearPrior&) { return "piecewise"; },
                        [](const PointMassPrior&) { return "point"; },
                    },
                    kind_);
}

bool Distribution::is_degenerate() const {
  return std::holds_alternative<PointMassPrior>(kind_);
}

double Distribution::density(double x) const {
  return std::visit(
      Overloaded{
          [&](const UniformPrior& u) {
            return (x >= u.a && x <= u.b) ? 1.0 / (u.b - u.a) : 0.0;
          },
          [&](const BetaPrior& b) {
            if (x < 0.0 || x > 1.0) return 0.0;
            if ((x == 0.0 && b.alpha < 1.0) || (x == 1.0 && b.beta < 1.0)) {
              return std::numeric_limits<double>::infinity();
            }
            return boost::math::ibeta_derivative(b.alpha, b.beta, x);
          },
          [&](const PiecewiseLinearPrior& d) {
            if (x < d.x.front() || x > d.x.back()) return 0.0;
            auto it = std::upper_bound(d.x.begin(), d.x.end(), x);
            std::size_t k = static_cast<std::size_t>(it - d.x.begin());
            k = std::clamp<std::size_t>(k, 1, d.x.size() - 1) - 1;
            return segment_density(d, k, x);
          },
          [](const PointMassPrior&) { return 0.0; },
      },
      kind_);
}

double Distribution::cdf(double x) const {
  return std::visit(
      Overloaded{
          [&](const UniformPrior& u) {
            return std::clamp((x - u.a) / (u.b - u.a), 0.0, 1.0);
          },
          [&](const BetaPrior& b) {
            if (x <= 0.0) return 0.0;
            if (x >= 1.0) return 1.0;
            return boost::math::ibeta(b.alpha, b.beta, x);
          },
          [&](const PiecewiseLinearPrior& d) {
            if (x <= d.x.front()) return 0.0;
            if (x >= d.x.back()) return 1.0;
            auto it = std::upper_bound(d.x.begin(), d.x.end(), x);
            const std::size_t k = static_cast<std::size_t>(it - d.x.begin()) - 1;
            const double h = d.x[k + 1] - d.x[k];
            const double t = x - d.x[k];
            const double slope = (d.y[k + 1] - d.y[k]) / h;
            return std::min(1.0, segment_cdf_[k] + d.y[k] * t + 0.5 * slope * t * t);
          },
          [&](const PointMassPrior& p) { return x >= p.x ? 1.0 : 0.0; },
      },
      kind_);
}

double Distribution::mass(double a, double b) const {
  if (b < a) return 0.0;
  if (const auto* p = std::get_if<PointMassPrior>(&kind_)) {
    return (p->x >= a && p->x <= b) ? 1.0 : 0.0;
  }
  if (const auto* be = std::get_if<BetaPrior>(&kind_); be && a > 0.5) {
    // Upper tails through the complement keep their relative accuracy.
    const double sa = boost::math::ibetac(be->alpha, be->beta, a);
    const double sb = b >= 1.0 ? 0.0 : boost::math::ibetac(be->alpha, be->beta, b);
    return std::max(0.0, sa - sb);
  }
  return std::max(0.0, cdf(b) - cdf(a));
}

double Distribution::partial_moment(double a, double b) const {
  a = std::max(a, lo_);
  b = std::min(b, hi_);
  if (b < a) return 0.0;
  return std::visit(
      Overloaded{
          [&](const UniformPrior& u) {
            return 0.5 * (b * b - a * a) / (u.b - u.a);
          },
          [&](const BetaPrior& be) {
            const double scale = be.alpha / (be.alpha + be.beta);
            if (a > 0.5) {
              const double sa = boost::math::ibetac(be.alpha + 1.0, be.beta, a);
              const double sb = b >= 1.0 ? 0.0 : boost::math::ibetac(be.alpha + 1.0, be.beta, b);
              return scale * std::max(0.0, sa - sb);
            }
            const double upper = b >= 1.0 ? 1.0 : boost::math::ibeta(be.alpha + 1.0, be.beta, b);
            const double lower = a <= 0.0 ? 0.0 : boost::math::ibeta(be.alpha + 1.0, be.beta, a);
            return scale * std::max(0.0, upper - lower);
          },
          [&](const PiecewiseLinearPrior& d) {
            double sum = 0.0;
            for (std::size_t k = 0; k + 1 < d.x.size(); ++k) {
              const double s = std::max(a, d.x[k]);
              const double e = std::min(b, d.x[k + 1]);
              if (e <= s) continue;
              sum += integrate([&](double z) { return z * segment_density(d, k, z); }, s, e);
            }
            return sum;
          },
          [&](const PointMassPrior& p) { return p.x; },
      },
      kind_);
}

double Distribution::truncated_mean(double a, double b) const {
  const double m = mass(a, b);
  if (!(m > 0.0)) {
    throw SolverError(ErrorKind::EmptyTruncation,
                      "no probability mass on the truncation interval");
  }
  const double lo = std::max(a, lo_);
  const double hi = std::min(b, hi_);
  if (std::holds_alternative<UniformPrior>(kind_)) return 0.5 * (lo + hi);
  if (const auto* p = std::get_if<PointMassPrior>(&kind_)) return p->x;
  return std::clamp(partial_moment(a, b) / m, lo, hi);
}

double Distribution::mean() const {
  return std::visit(
      Overloaded{
          [](const UniformPrior& u) { return 0.5 * (u.a + u.b); },
          [](const BetaPrior& b) { return b.alpha / (b.alpha + b.beta); },
          [&](const PiecewiseLinearPrior&) { return partial_moment(lo_, hi_); },
          [](const PointMassPrior& p) { return p.x; },
      },
      kind_);
}

double Distribution::quantile(double u) const {
  u = std::clamp(u, 0.0, 1.0);
  return std::visit(
      Overloaded{
          [&](const UniformPrior& un) { return un.a + (un.b - un.a) * u; },
          [&](const BetaPrior& b) {
            if (u <= 0.0) return 0.0;
            if (u >= 1.0) return 1.0;
            return boost::math::ibeta_inv(b.alpha, b.beta, u);
          },
          [&](const PiecewiseLinearPrior& d) {
            double lo = d.x.front();
            double hi = d.x.back();
            for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
              const double mid = 0.5 * (lo + hi);
              if (cdf(mid) < u) lo = mid; else hi = mid;
            }
            return 0.5 * (lo + hi);
          },
          [](const PointMassPrior& p) { return p.x; },
      },
      kind_);
}

double truncated_mean(const Distribution& dist, double a, double b) {
  return dist.truncated_mean(a, b);
}

}  // namespace sharesig
