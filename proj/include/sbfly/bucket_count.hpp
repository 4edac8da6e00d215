#pragma once

#include <cstdint>
#include <vector>

#include "sbfly/graph.hpp"

namespace sbfly {

enum class WedgeKind : std::uint8_t { Symmetric, Asymmetric };

constexpr WedgeKind wedge_kind(EdgeSign sign_uv, EdgeSign sign_vw) noexcept {
  return sign_uv == sign_vw ? WedgeKind::Symmetric : WedgeKind::Asymmetric;
}

/// Exact C(n, k) in 64 bits; throws Error{CountOverflow} if it does not fit.
std::uint64_t binomial(std::uint64_t n, unsigned k);

/// Adds with Error{CountOverflow} on wrap.
std::uint64_t checked_add(std::uint64_t a, std::uint64_t b);

/// Per-anchor symmetric (b1) and asymmetric (b2) wedge counters keyed by
/// endpoint. Backed by dense arrays with epoch stamps so that reset() is O(1)
/// and only touched endpoints are visited on reduction.
class WedgeBuckets {
 public:
  explicit WedgeBuckets(std::size_t endpoint_count = 0);

  void resize(std::size_t endpoint_count);

  /// Forget all counts.
  void reset() noexcept;

  void add(VertexId w, WedgeKind kind) noexcept {
    if (stamp_[w] != epoch_) {
      stamp_[w] = epoch_;
      b1_[w] = 0;
      b2_[w] = 0;
      touched_.push_back(w);
    }
    ++(kind == WedgeKind::Symmetric ? b1_[w] : b2_[w]);
  }

  std::uint32_t b1(VertexId w) const noexcept { return stamp_[w] == epoch_ ? b1_[w] : 0; }
  std::uint32_t b2(VertexId w) const noexcept { return stamp_[w] == epoch_ ? b2_[w] : 0; }

  /// Endpoints with at least one wedge since the last reset, in first-touch order.
  const std::vector<VertexId>& touched() const noexcept { return touched_; }

  /// Σ_w C(b1[w], 2) + C(b2[w], 2); throws Error{CountOverflow}.
  std::uint64_t pair_total() const;

  /// Σ_w C(b1[w], k) + C(b2[w], k); throws Error{CountOverflow}.
  std::uint64_t choose_total(unsigned k) const;

  /// Σ_w b1[w] + b2[w].
  std::uint64_t wedge_total() const noexcept;

 private:
  std::vector<std::uint32_t> b1_;
  std::vector<std::uint32_t> b2_;
  std::vector<std::uint32_t> stamp_;
  std::vector<VertexId> touched_;
  std::uint32_t epoch_ = 1;
};

/// Instrumentation filled by the bucket engines when requested.
struct WedgeCounters {
  std::uint64_t traversed = 0;   // (u, v, w) paths visited before filtering
  std::uint64_t admitted = 0;    // paths passing the once-per-butterfly filter
  std::uint64_t bucketed = 0;    // Σ over anchors of Σ_w b1[w] + b2[w]
  std::uint64_t cost_bound = 0;  // Σ_{u∈S} Σ_{v∈Γ(u)} |Γ(v)|
  std::uint64_t anchors = 0;
};

struct SerialOptions {
  /// Walk each center's neighbor list in ascending priority and stop at the
  /// first endpoint that fails p(w) < p(u). Same result, fewer visits.
  bool presort_by_priority = false;
};

/// Balanced (2,k)-bicliques with the size-2 side on `anchor_side`. Endpoints
/// are admitted when p(w) < p(u). For k == 2 this is the balanced butterfly
/// count. Throws Error{InvalidK} for k < 2 and Error{CountOverflow}.
std::uint64_t count_balanced_2k_serial(const SignedBipartiteGraph& g, int k, Side anchor_side,
                                       const SerialOptions& options = {}, WedgeCounters* counters = nullptr);

/// Balanced butterflies on the smaller side with `workers` threads pulling
/// anchors dynamically. Bit-identical for every worker count.
/// Throws Error{InvalidWorkers} for workers < 1 and Error{CountOverflow}.
std::uint64_t count_balanced_parallel(const SignedBipartiteGraph& g, int workers, WedgeCounters* counters = nullptr);

}  // namespace sbfly
