// Built with -mavx2; only reached after a runtime CPUID check.
#include <immintrin.h>

#include "sbfly/kernels.hpp"

namespace sbfly::kernels::avx2 {
namespace {

// Per 64-bit lane: (x * (x - 1)) >> 1 for the low 32 bits of each lane.
inline __m256i choose2_even_lanes(__m256i x) {
  const __m256i xm1 = _mm256_sub_epi32(x, _mm256_set1_epi32(1));
  return _mm256_srli_epi64(_mm256_mul_epu32(x, xm1), 1);
}

inline __m256i choose2_all_lanes(__m256i x) {
  const __m256i even = choose2_even_lanes(x);
  const __m256i odd = choose2_even_lanes(_mm256_srli_epi64(x, 32));
  return _mm256_add_epi64(even, odd);
}

}  // namespace

std::uint64_t pair_sum(const std::uint32_t* a, const std::uint32_t* b, std::size_t n) noexcept {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i xa = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i xb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    acc = _mm256_add_epi64(acc, choose2_all_lanes(xa));
    acc = _mm256_add_epi64(acc, choose2_all_lanes(xb));
  }
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::uint64_t total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  if (i < n) total += scalar::pair_sum(a + i, b + i, n - i);
  return total;
}

}  // namespace sbfly::kernels::avx2
