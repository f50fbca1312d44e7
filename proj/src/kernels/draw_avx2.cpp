// Built with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include <algorithm>

#include "sharesig/kernels/draw.hpp"
#include "sharesig/rng.hpp"

namespace sharesig::kernels {

namespace {

// AVX2 has no 64-bit multiply; assemble it from 32x32->64 products.
inline __m256i mul64(__m256i a, __m256i b) {
  const __m256i lo = _mm256_mul_epu32(a, b);
  const __m256i a_hi = _mm256_srli_epi64(a, 32);
  const __m256i b_hi = _mm256_srli_epi64(b, 32);
  const __m256i cross =
      _mm256_add_epi64(_mm256_mul_epu32(a_hi, b), _mm256_mul_epu32(a, b_hi));
  return _mm256_add_epi64(lo, _mm256_slli_epi64(cross, 32));
}

inline __m256i mix64v(__m256i z) {
  const __m256i m1 = _mm256_set1_epi64x(static_cast<long long>(kMix1));
  const __m256i m2 = _mm256_set1_epi64x(static_cast<long long>(kMix2));
  z = mul64(_mm256_xor_si256(z, _mm256_srli_epi64(z, 30)), m1);
  z = mul64(_mm256_xor_si256(z, _mm256_srli_epi64(z, 27)), m2);
  return _mm256_xor_si256(z, _mm256_srli_epi64(z, 31));
}

inline __m256d to_unit_v(__m256i x) {
  const __m256i one_bits = _mm256_set1_epi64x(0x3FF0000000000000LL);
  const __m256d v =
      _mm256_castsi256_pd(_mm256_or_si256(_mm256_srli_epi64(x, 12), one_bits));
  return _mm256_sub_pd(v, _mm256_set1_pd(1.0));
}

// Uniforms for variate k of draws i..i+3, given base = (i+l)*K + 1 per lane.
inline __m256d uniforms(__m256i key, __m256i base, std::uint64_t k) {
  const __m256i golden = _mm256_set1_epi64x(static_cast<long long>(kGolden));
  const __m256i c = _mm256_add_epi64(base, _mm256_set1_epi64x(static_cast<long long>(k)));
  return to_unit_v(mix64v(_mm256_add_epi64(key, mul64(c, golden))));
}

inline __m256d less(__m256d u, double p) {
  return _mm256_cmp_pd(u, _mm256_set1_pd(p), _CMP_LT_OQ);
}

inline unsigned popcount(__m256d mask) {
  return static_cast<unsigned>(__builtin_popcount(_mm256_movemask_pd(mask)));
}

inline __m256i lane_base(std::uint64_t i, std::uint64_t K) {
  return _mm256_set_epi64x(static_cast<long long>((i + 3) * K + 1),
                           static_cast<long long>((i + 2) * K + 1),
                           static_cast<long long>((i + 1) * K + 1),
                           static_cast<long long>(i * K + 1));
}

// sigma = fake ? (u < beta) : ((u < eta) == omega)
inline __m256d signal(__m256d omega, __m256d fake, __m256d u, double eta,
                      double beta) {
  const __m256d all = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
  const __m256d right = less(u, eta);
  const __m256d proper_sigma = _mm256_xor_pd(_mm256_xor_pd(right, omega), all);
  return _mm256_or_pd(_mm256_and_pd(fake, less(u, beta)),
                      _mm256_andnot_pd(fake, proper_sigma));
}

}  // namespace

void ability_block_avx2(const AbilityKernelParams& p, std::uint64_t first,
                        std::uint64_t count, AbilityTally& out) {
  constexpr std::uint64_t K = kAbilityVariates;
  const std::uint64_t end = first + count;
  std::uint64_t i = first;
  const std::uint64_t head = std::min<std::uint64_t>(end, (first + 3) / 4 * 4);
  ability_block_scalar(p, i, head - i, out);
  i = head;

  const __m256i key = _mm256_set1_epi64x(static_cast<long long>(p.key));
  for (; i + 4 <= end; i += 4) {
    const __m256i base = lane_base(i, K);
    const __m256d omega = less(uniforms(key, base, 0), p.p_T);
    const __m256d fake = less(uniforms(key, base, 1), p.q);
    const __m256d sigma = signal(omega, fake, uniforms(key, base, 2), p.eta, p.beta);
    const __m256d high = less(uniforms(key, base, 3), p.lambda_S);
    const __m256d rhigh = less(uniforms(key, base, 4), p.lambda_R);
    const __m256d coin = less(uniforms(key, base, 5), p.kappa0);

    const __m256d wants = _mm256_or_pd(_mm256_andnot_pd(fake, high),
                                       _mm256_andnot_pd(high, coin));
    const __m256d shared = _mm256_andnot_pd(sigma, wants);
    const __m256d checked = _mm256_and_pd(shared, rhigh);
    const __m256d cells[4] = {
        _mm256_andnot_pd(fake, checked),   // 0P
        _mm256_and_pd(fake, checked),      // 0F
        _mm256_andnot_pd(rhigh, shared),   // 0U
        _mm256_andnot_pd(shared, _mm256_castsi256_pd(_mm256_set1_epi64x(-1))),
    };
    out.n += 4;
    out.sigma1 += popcount(sigma);
    out.shared_fake += popcount(_mm256_and_pd(shared, fake));
    for (int c = 0; c < 4; ++c) {
      out.count[c] += popcount(cells[c]);
      out.high[c] += popcount(_mm256_and_pd(cells[c], high));
    }
  }
  ability_block_scalar(p, i, end - i, out);
}

void worldview_block_avx2(const WorldviewKernelParams& p, std::uint64_t first,
                          std::uint64_t count, WorldviewTally& out) {
  if (p.general != nullptr) {
    worldview_block_scalar(p, first, count, out);
    return;
  }
  constexpr std::uint64_t K = kWorldviewVariates;
  const std::uint64_t end = first + count;
  std::uint64_t i = first;
  const std::uint64_t head = std::min<std::uint64_t>(end, (first + 3) / 4 * 4);
  worldview_block_scalar(p, i, head - i, out);
  i = head;

  const __m256i key = _mm256_set1_epi64x(static_cast<long long>(p.key));
  const __m256d offset = _mm256_set1_pd(p.ps_offset);
  const __m256d scale = _mm256_set1_pd(p.ps_scale);
  const __m256d lo_cut = _mm256_set1_pd(p.p_Sl);
  const __m256d hi_cut = _mm256_set1_pd(p.p_Sh);
  __m256d sum[3];
  __m256d sq[3];
  for (int c = 0; c < 3; ++c) {
    sum[c] = _mm256_loadu_pd(out.sum[c].data());
    sq[c] = _mm256_loadu_pd(out.sumsq[c].data());
  }
  for (; i + 4 <= end; i += 4) {
    const __m256i base = lane_base(i, K);
    const __m256d omega = less(uniforms(key, base, 0), p.p_T);
    const __m256d fake = less(uniforms(key, base, 1), p.q);
    const __m256d sigma = signal(omega, fake, uniforms(key, base, 2), p.eta, p.beta);
    const __m256d ps = _mm256_add_pd(offset, _mm256_mul_pd(scale, uniforms(key, base, 3)));
    const __m256d ps2 = _mm256_mul_pd(ps, ps);

    const __m256d s0 = _mm256_andnot_pd(sigma, _mm256_cmp_pd(ps, lo_cut, _CMP_LE_OQ));
    const __m256d s1 = _mm256_and_pd(sigma, _mm256_cmp_pd(ps, hi_cut, _CMP_GE_OQ));
    const __m256d shared = _mm256_or_pd(s0, s1);
    const __m256d cells[3] = {
        s0, s1, _mm256_andnot_pd(shared, _mm256_castsi256_pd(_mm256_set1_epi64x(-1)))};
    out.n += 4;
    out.sigma1 += popcount(sigma);
    out.shared_fake += popcount(_mm256_and_pd(shared, fake));
    for (int c = 0; c < 3; ++c) {
      out.count[c] += popcount(cells[c]);
      sum[c] = _mm256_add_pd(sum[c], _mm256_and_pd(cells[c], ps));
      sq[c] = _mm256_add_pd(sq[c], _mm256_and_pd(cells[c], ps2));
    }
  }
  for (int c = 0; c < 3; ++c) {
    _mm256_storeu_pd(out.sum[c].data(), sum[c]);
    _mm256_storeu_pd(out.sumsq[c].data(), sq[c]);
  }
  worldview_block_scalar(p, i, end - i, out);
}

}  // namespace sharesig::kernels
