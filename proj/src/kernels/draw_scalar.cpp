#include <cmath>

#include "sharesig/distribution.hpp"
#include "sharesig/kernels/draw.hpp"
#include "sharesig/rng.hpp"

namespace sharesig::kernels {

namespace {

inline double variate(std::uint64_t key, std::uint64_t per_draw,
                      std::uint64_t i, std::uint64_t k) {
  return to_unit(mix64(key + (i * per_draw + k + 1) * kGolden));
}

}  // namespace

void AbilityTally::merge(const AbilityTally& o) {
  n += o.n;
  sigma1 += o.sigma1;
  shared_fake += o.shared_fake;
  for (int c = 0; c < 4; ++c) {
    count[c] += o.count[c];
    high[c] += o.high[c];
  }
}

void WorldviewTally::merge(const WorldviewTally& o) {
  n += o.n;
  sigma1 += o.sigma1;
  shared_fake += o.shared_fake;
  for (int c = 0; c < 3; ++c) {
    count[c] += o.count[c];
    for (int l = 0; l < kLanes; ++l) {
      sum[c][l] += o.sum[c][l];
      sumsq[c][l] += o.sumsq[c][l];
    }
  }
}

double WorldviewTally::total_sum(int cell) const {
  double s = 0.0;
  for (int l = 0; l < kLanes; ++l) s += sum[cell][l];
  return s;
}

double WorldviewTally::total_sumsq(int cell) const {
  double s = 0.0;
  for (int l = 0; l < kLanes; ++l) s += sumsq[cell][l];
  return s;
}

AbilityDraw ability_draw(const AbilityKernelParams& p, std::uint64_t i) {
  constexpr std::uint64_t K = kAbilityVariates;
  AbilityDraw d{};
  d.omega = variate(p.key, K, i, 0) < p.p_T;
  d.fake = variate(p.key, K, i, 1) < p.q;
  const double u_sigma = variate(p.key, K, i, 2);
  if (d.fake) {
    d.sigma = u_sigma < p.beta;
  } else {
    const bool right = u_sigma < p.eta;
    d.sigma = right == d.omega;
  }
  d.high = variate(p.key, K, i, 3) < p.lambda_S;
  const bool receiver_high = variate(p.key, K, i, 4) < p.lambda_R;
  const bool coin = variate(p.key, K, i, 5) < p.kappa0;
  // High types check and share proper surprising signals; low types share
  // any surprising signal with probability kappa0.
  d.shared = !d.sigma && (d.high ? !d.fake : coin);
  d.checked = d.shared && receiver_high;
  if (!d.shared) {
    d.cell = kCellEmpty;
  } else if (!d.checked) {
    d.cell = kCell0U;
  } else {
    d.cell = d.fake ? kCell0F : kCell0P;
  }
  return d;
}

void ability_block_scalar(const AbilityKernelParams& p, std::uint64_t first,
                          std::uint64_t count, AbilityTally& out) {
  for (std::uint64_t i = first; i < first + count; ++i) {
    const AbilityDraw d = ability_draw(p, i);
    ++out.n;
    out.sigma1 += d.sigma;
    out.shared_fake += d.shared && d.fake;
    ++out.count[d.cell];
    out.high[d.cell] += d.high;
  }
}

WorldviewDraw worldview_draw(const WorldviewKernelParams& p, std::uint64_t i) {
  constexpr std::uint64_t K = kWorldviewVariates;
  WorldviewDraw d{};
  d.omega = variate(p.key, K, i, 0) < p.p_T;
  d.fake = variate(p.key, K, i, 1) < p.q;
  const double u_sigma = variate(p.key, K, i, 2);
  if (d.fake) {
    d.sigma = u_sigma < p.beta;
  } else {
    const bool right = u_sigma < p.eta;
    d.sigma = right == d.omega;
  }
  const double u = variate(p.key, K, i, 3);
  d.p_S = p.general ? p.general->quantile(u) : p.ps_offset + p.ps_scale * u;
  if (!d.sigma && d.p_S <= p.p_Sl) {
    d.cell = kShare0;
  } else if (d.sigma && d.p_S >= p.p_Sh) {
    d.cell = kShare1;
  } else {
    d.cell = kNoShare;
  }
  d.shared = d.cell != kNoShare;
  return d;
}

void worldview_block_scalar(const WorldviewKernelParams& p, std::uint64_t first,
                            std::uint64_t count, WorldviewTally& out) {
  for (std::uint64_t i = first; i < first + count; ++i) {
    const WorldviewDraw d = worldview_draw(p, i);
    const int lane = static_cast<int>(i % kLanes);
    ++out.n;
    out.sigma1 += d.sigma;
    out.shared_fake += d.shared && d.fake;
    ++out.count[d.cell];
    out.sum[d.cell][lane] += d.p_S;
    out.sumsq[d.cell][lane] += d.p_S * d.p_S;
  }
}

}  // namespace sharesig::kernels
