#include "sbfly/bucket_count.hpp"

#include <tbb/blocked_range.h>
#include <tbb/enumerable_thread_specific.h>
#include <tbb/global_control.h>
#include <tbb/info.h>
#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

#include <algorithm>
#include <optional>

namespace sbfly {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw Error(Errc::CountOverflow, "count exceeds 64-bit range");
  return out;
}

std::uint64_t binomial(std::uint64_t n, unsigned k) {
  if (k > n) return 0;
  if (k == 2) {
    // n(n-1) is even; halve the even factor first.
    const auto a = n % 2 == 0 ? n / 2 : n;
    const auto b = n % 2 == 0 ? n - 1 : (n - 1) / 2;
    std::uint64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) throw Error(Errc::CountOverflow, "binomial exceeds 64-bit range");
    return out;
  }
  k = static_cast<unsigned>(std::min<std::uint64_t>(k, n - k));
  unsigned __int128 acc = 1;
  for (unsigned i = 0; i < k; ++i) {
    // acc == C(n, i) here, so acc * (n - i) / (i + 1) == C(n, i + 1) exactly.
    acc = acc * (n - i) / (i + 1);
    if (acc > UINT64_MAX) throw Error(Errc::CountOverflow, "binomial exceeds 64-bit range");
  }
  return static_cast<std::uint64_t>(acc);
}

WedgeBuckets::WedgeBuckets(std::size_t endpoint_count) { resize(endpoint_count); }

void WedgeBuckets::resize(std::size_t endpoint_count) {
  b1_.assign(endpoint_count, 0);
  b2_.assign(endpoint_count, 0);
  stamp_.assign(endpoint_count, 0);
  touched_.clear();
  epoch_ = 1;
}

void WedgeBuckets::reset() noexcept {
  touched_.clear();
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
}

std::uint64_t WedgeBuckets::pair_total() const {
  std::uint64_t total = 0;
  for (const auto w : touched_) {
    const std::uint64_t x = b1_[w];
    const std::uint64_t y = b2_[w];
    total = checked_add(total, x * (x - 1) / 2 + y * (y - 1) / 2);
  }
  return total;
}

std::uint64_t WedgeBuckets::choose_total(unsigned k) const {
  std::uint64_t total = 0;
  for (const auto w : touched_) {
    total = checked_add(total, binomial(b1_[w], k));
    total = checked_add(total, binomial(b2_[w], k));
  }
  return total;
}

std::uint64_t WedgeBuckets::wedge_total() const noexcept {
  std::uint64_t total = 0;
  for (const auto w : touched_) total += std::uint64_t{b1_[w]} + b2_[w];
  return total;
}

namespace {

// p(w) < p(u) for two vertices on the same side: degree first, then index
// (which orders global ids within a side).
inline bool lower_priority(std::uint32_t deg_w, VertexId w, std::uint32_t deg_u, VertexId u) noexcept {
  return deg_w != deg_u ? deg_w < deg_u : w < u;
}

// Neighbor lists of the center side re-sorted by ascending endpoint priority.
struct PrioritySortedCenters {
  std::vector<std::size_t> offsets;
  std::vector<VertexId> endpoints;
  std::vector<EdgeSign> signs;

  PrioritySortedCenters(const SignedBipartiteGraph& g, Side anchor_side) {
    const Side center_side = other(anchor_side);
    const auto n = g.count(center_side);
    const auto deg = g.degrees(anchor_side);
    offsets.assign(n + 1, 0);
    endpoints.reserve(g.edge_count());
    signs.reserve(g.edge_count());
    std::vector<std::pair<VertexId, EdgeSign>> row;
    for (VertexId v = 0; v < n; ++v) {
      const auto nb = g.neighbors(center_side, v);
      const auto sg = g.signs(center_side, v);
      row.clear();
      for (std::size_t i = 0; i < nb.size(); ++i) row.emplace_back(nb[i], sg[i]);
      std::sort(row.begin(), row.end(), [&](const auto& a, const auto& b) {
        return lower_priority(deg[a.first], a.first, deg[b.first], b.first);
      });
      for (const auto& [w, s] : row) {
        endpoints.push_back(w);
        signs.push_back(s);
      }
      offsets[v + 1] = endpoints.size();
    }
  }
};

template <bool Instrument, bool Presorted>
void collect_wedges(const SignedBipartiteGraph& g, Side anchor_side, VertexId u, WedgeBuckets& buckets,
                    const PrioritySortedCenters* sorted, WedgeCounters* counters) {
  const Side center_side = other(anchor_side);
  const auto deg = g.degrees(anchor_side);
  const auto deg_u = deg[u];
  const auto centers = g.neighbors(anchor_side, u);
  const auto center_signs = g.signs(anchor_side, u);

  for (std::size_t i = 0; i < centers.size(); ++i) {
    const auto v = centers[i];
    const auto s_uv = center_signs[i];
    if constexpr (Instrument) counters->cost_bound += g.degree(center_side, v);

    if constexpr (Presorted) {
      const auto lo = sorted->offsets[v];
      const auto hi = sorted->offsets[v + 1];
      for (auto j = lo; j < hi; ++j) {
        const auto w = sorted->endpoints[j];
        if constexpr (Instrument) ++counters->traversed;
        if (!lower_priority(deg[w], w, deg_u, u)) break;
        if constexpr (Instrument) ++counters->admitted;
        buckets.add(w, wedge_kind(s_uv, sorted->signs[j]));
      }
    } else {
      const auto ends = g.neighbors(center_side, v);
      const auto end_signs = g.signs(center_side, v);
      for (std::size_t j = 0; j < ends.size(); ++j) {
        const auto w = ends[j];
        if constexpr (Instrument) ++counters->traversed;
        if (!lower_priority(deg[w], w, deg_u, u)) continue;
        if constexpr (Instrument) ++counters->admitted;
        buckets.add(w, wedge_kind(s_uv, end_signs[j]));
      }
    }
  }
}

void collect(const SignedBipartiteGraph& g, Side anchor_side, VertexId u, WedgeBuckets& buckets,
             const PrioritySortedCenters* sorted, WedgeCounters* counters) {
  buckets.reset();
  if (counters != nullptr) {
    ++counters->anchors;
    if (sorted != nullptr) {
      collect_wedges<true, true>(g, anchor_side, u, buckets, sorted, counters);
    } else {
      collect_wedges<true, false>(g, anchor_side, u, buckets, sorted, counters);
    }
    counters->bucketed += buckets.wedge_total();
  } else if (sorted != nullptr) {
    collect_wedges<false, true>(g, anchor_side, u, buckets, sorted, nullptr);
  } else {
    collect_wedges<false, false>(g, anchor_side, u, buckets, sorted, nullptr);
  }
}

void merge(WedgeCounters& into, const WedgeCounters& from) {
  into.traversed += from.traversed;
  into.admitted += from.admitted;
  into.bucketed += from.bucketed;
  into.cost_bound += from.cost_bound;
  into.anchors += from.anchors;
}

}  // namespace

std::uint64_t count_balanced_2k_serial(const SignedBipartiteGraph& g, int k, Side anchor_side,
                                       const SerialOptions& options, WedgeCounters* counters) {
  if (k < 2) throw Error(Errc::InvalidK, "k must be at least 2");
  const auto n = static_cast<VertexId>(g.count(anchor_side));
  WedgeBuckets buckets(n);
  std::optional<PrioritySortedCenters> sorted;
  if (options.presort_by_priority) sorted.emplace(g, anchor_side);
  const auto* sorted_ptr = sorted ? &*sorted : nullptr;

  std::uint64_t total = 0;
  for (VertexId u = 0; u < n; ++u) {
    collect(g, anchor_side, u, buckets, sorted_ptr, counters);
    total = checked_add(total, k == 2 ? buckets.pair_total() : buckets.choose_total(static_cast<unsigned>(k)));
  }
  return total;
}

std::uint64_t count_balanced_parallel(const SignedBipartiteGraph& g, int workers, WedgeCounters* counters) {
  if (workers < 1) throw Error(Errc::InvalidWorkers, "workers must be at least 1");
  const Side side = select_min_side(g);
  const auto n = static_cast<VertexId>(g.count(side));

  struct Local {
    WedgeBuckets buckets;
    WedgeCounters counters;
    std::uint64_t total = 0;
  };
  tbb::enumerable_thread_specific<Local> locals([n] { return Local{WedgeBuckets(n), {}, 0}; });

  // TBB caps workers at the hardware thread count unless told otherwise; the
  // requested count should hold even when it oversubscribes.
  const auto limit = std::max<std::size_t>(static_cast<std::size_t>(workers),
                                           static_cast<std::size_t>(tbb::info::default_concurrency()));
  tbb::global_control allow(tbb::global_control::max_allowed_parallelism, limit);
  tbb::task_arena arena(workers);
  arena.execute([&] {
    tbb::parallel_for(tbb::blocked_range<VertexId>(0, n), [&](const tbb::blocked_range<VertexId>& range) {
      auto& local = locals.local();
      auto* local_counters = counters != nullptr ? &local.counters : nullptr;
      for (auto u = range.begin(); u != range.end(); ++u) {
        collect(g, side, u, local.buckets, nullptr, local_counters);
        local.total = checked_add(local.total, local.buckets.pair_total());
      }
    });
  });

  std::uint64_t total = 0;
  for (const auto& local : locals) {
    total = checked_add(total, local.total);
    if (counters != nullptr) merge(*counters, local.counters);
  }
  return total;
}

}  // namespace sbfly
