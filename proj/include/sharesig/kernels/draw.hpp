#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace sharesig {
class Distribution;
}

namespace sharesig::kernels {

enum class Isa { Auto, Scalar, Avx2 };

std::string_view to_string(Isa isa);
bool avx2_available();
/// Auto picks the widest available kernel; an unavailable request falls
/// back to Scalar.
Isa resolve(Isa requested);

inline constexpr std::uint64_t kAbilityVariates = 6;  // omega fake sigma thetaS thetaR coin
inline constexpr std::uint64_t kWorldviewVariates = 4;  // omega fake sigma p_S
inline constexpr int kLanes = 4;

// ---- ability game ----

enum AbilityCell : int { kCell0P = 0, kCell0F = 1, kCell0U = 2, kCellEmpty = 3 };

struct AbilityKernelParams {
  std::uint64_t key;
  double p_T, q, eta, beta, lambda_S, lambda_R, kappa0;
};

struct AbilityDraw {
  bool omega, fake, sigma, high, checked, shared;
  int cell;
};

struct AbilityTally {
  std::uint64_t n = 0;
  std::uint64_t sigma1 = 0;
  std::uint64_t shared_fake = 0;
  std::array<std::uint64_t, 4> count{};
  std::array<std::uint64_t, 4> high{};  // high-ability senders per cell

  void merge(const AbilityTally& o);
  bool operator==(const AbilityTally&) const = default;
};

AbilityDraw ability_draw(const AbilityKernelParams& p, std::uint64_t i);
void ability_block_scalar(const AbilityKernelParams& p, std::uint64_t first,
                          std::uint64_t count, AbilityTally& out);
void ability_block_avx2(const AbilityKernelParams& p, std::uint64_t first,
                        std::uint64_t count, AbilityTally& out);
void ability_block(Isa isa, const AbilityKernelParams& p, std::uint64_t first,
                   std::uint64_t count, AbilityTally& out);

// ---- worldview game ----

enum WorldviewCell : int { kShare0 = 0, kShare1 = 1, kNoShare = 2 };

/// p_S = ps_offset + ps_scale * u unless `general` is set, in which case
/// its quantile function is used (scalar path only).
struct WorldviewKernelParams {
  std::uint64_t key;
  double p_T, q, eta, beta, p_Sl, p_Sh;
  double ps_offset = 0.0;
  double ps_scale = 1.0;
  const Distribution* general = nullptr;
};

struct WorldviewDraw {
  bool omega, fake, sigma, shared;
  double p_S;
  int cell;
};

/// Sums are striped over kLanes by draw index so every kernel accumulates
/// in the same order.
struct WorldviewTally {
  std::uint64_t n = 0;
  std::uint64_t sigma1 = 0;
  std::uint64_t shared_fake = 0;
  std::array<std::uint64_t, 3> count{};
  std::array<std::array<double, kLanes>, 3> sum{};
  std::array<std::array<double, kLanes>, 3> sumsq{};

  void merge(const WorldviewTally& o);
  double total_sum(int cell) const;
  double total_sumsq(int cell) const;
  bool operator==(const WorldviewTally&) const = default;
};

WorldviewDraw worldview_draw(const WorldviewKernelParams& p, std::uint64_t i);
void worldview_block_scalar(const WorldviewKernelParams& p, std::uint64_t first,
                            std::uint64_t count, WorldviewTally& out);
void worldview_block_avx2(const WorldviewKernelParams& p, std::uint64_t first,
                          std::uint64_t count, WorldviewTally& out);
void worldview_block(Isa isa, const WorldviewKernelParams& p,
                     std::uint64_t first, std::uint64_t count,
                     WorldviewTally& out);

}  // namespace sharesig::kernels
