#pragma once

namespace sharesig {

struct BisectResult {
  double x;
  int iterations;
  bool converged;  // bracket width reached tol within the iteration cap
};

inline constexpr int kMaxBisectIterations = 200;

/// Root of `f` on [lo, hi] given that f(lo) and f(hi) have opposite signs
/// (`f_lo_positive` says which). Stops once the bracket is no wider than
/// `tol` or f vanishes exactly at a midpoint.
template <typename F>
BisectResult bisect(F&& f, double lo, double hi, bool f_lo_positive,
                    double tol, int max_iterations = kMaxBisectIterations) {
  int it = 0;
  while (it < max_iterations && hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double v = f(mid);
    ++it;
    if (v == 0.0) return {mid, it, true};
    if ((v > 0.0) == f_lo_positive) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {0.5 * (lo + hi), it, hi - lo <= tol};
}

}  // namespace sharesig
