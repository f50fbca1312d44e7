#include "sharesig/kernels/draw.hpp"

namespace sharesig::kernels {

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Auto: return "auto";
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

bool avx2_available() {
#if defined(SHARESIG_HAVE_AVX2)
  static const bool ok = __builtin_cpu_supports("avx2");
  return ok;
#else
  return false;
#endif
}

Isa resolve(Isa requested) {
  if (requested == Isa::Scalar) return Isa::Scalar;
  return avx2_available() ? Isa::Avx2 : Isa::Scalar;
}

#if !defined(SHARESIG_HAVE_AVX2)
// Non-x86 builds: the entry points exist but forward to the scalar kernels.
void ability_block_avx2(const AbilityKernelParams& p, std::uint64_t first,
                        std::uint64_t count, AbilityTally& out) {
  ability_block_scalar(p, first, count, out);
}
void worldview_block_avx2(const WorldviewKernelParams& p, std::uint64_t first,
                          std::uint64_t count, WorldviewTally& out) {
  worldview_block_scalar(p, first, count, out);
}
#endif

void ability_block(Isa isa, const AbilityKernelParams& p, std::uint64_t first,
                   std::uint64_t count, AbilityTally& out) {
  if (resolve(isa) == Isa::Avx2) {
    ability_block_avx2(p, first, count, out);
  } else {
    ability_block_scalar(p, first, count, out);
  }
}

void worldview_block(Isa isa, const WorldviewKernelParams& p,
                     std::uint64_t first, std::uint64_t count,
                     WorldviewTally& out) {
  if (resolve(isa) == Isa::Avx2) {
    worldview_block_avx2(p, first, count, out);
  } else {
    worldview_block_scalar(p, first, count, out);
  }
}

}  // namespace sharesig::kernels
