#include "sbfly/kernels.hpp"

#include <algorithm>
#include <atomic>

namespace sbfly::kernels {
namespace {

using PairSumFn = std::uint64_t (*)(const std::uint32_t*, const std::uint32_t*, std::size_t) noexcept;

bool cpu_has_avx2() noexcept {
#if defined(SBFLY_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

PairSumFn pair_sum_for(Isa isa) noexcept {
#if defined(SBFLY_HAVE_AVX2)
  if (isa == Isa::Avx2) return &avx2::pair_sum;
#endif
  (void)isa;
  return &scalar::pair_sum;
}

struct Dispatch {
  std::atomic<Isa> isa{detected_isa()};
  std::atomic<PairSumFn> pair_sum{pair_sum_for(detected_isa())};
};

Dispatch& dispatch() noexcept {
  static Dispatch d;
  return d;
}

}  // namespace

const char* to_string(Isa isa) noexcept { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

Isa detected_isa() noexcept { return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar; }

Isa active_isa() noexcept { return dispatch().isa.load(std::memory_order_relaxed); }

bool set_active_isa(Isa isa) noexcept {
  if (isa == Isa::Avx2 && !cpu_has_avx2()) return false;
  auto& d = dispatch();
  d.isa.store(isa, std::memory_order_relaxed);
  d.pair_sum.store(pair_sum_for(isa), std::memory_order_relaxed);
  return true;
}

std::uint64_t pair_sum(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) noexcept {
  const auto n = std::min(a.size(), b.size());
  return dispatch().pair_sum.load(std::memory_order_relaxed)(a.data(), b.data(), n);
}

namespace scalar {

std::uint64_t pair_sum(const std::uint32_t* a, const std::uint32_t* b, std::size_t n) noexcept {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t x = a[i];
    const std::uint64_t y = b[i];
    total += x * (x - 1) / 2 + y * (y - 1) / 2;  // x == 0 gives 0 * (2^64 - 1) == 0
  }
  return total;
}

}  // namespace scalar
}  // namespace sbfly::kernels
