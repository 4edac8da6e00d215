#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

// Dense reduction kernels used by the tile model. Each kernel has a scalar
// reference and, on x86-64, an AVX2 variant; the variant is chosen once at
// startup from CPUID and can be overridden for equivalence testing.
namespace sbfly::kernels {

enum class Isa { Scalar, Avx2 };

const char* to_string(Isa isa) noexcept;

/// Best ISA supported by this CPU and build.
Isa detected_isa() noexcept;

/// ISA the dispatched entry points currently use.
Isa active_isa() noexcept;

/// Returns false (and leaves the selection unchanged) if `isa` is unavailable.
bool set_active_isa(Isa isa) noexcept;

/// Σ C(a[i], 2) + C(b[i], 2) over the common length. The caller guarantees the
/// result fits in 64 bits (true whenever Σ a + Σ b < 2^32).
std::uint64_t pair_sum(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) noexcept;

namespace scalar {
std::uint64_t pair_sum(const std::uint32_t* a, const std::uint32_t* b, std::size_t n) noexcept;
}

#if defined(SBFLY_HAVE_AVX2)
namespace avx2 {
std::uint64_t pair_sum(const std::uint32_t* a, const std::uint32_t* b, std::size_t n) noexcept;
}
#endif

}  // namespace sbfly::kernels
