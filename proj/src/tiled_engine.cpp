#include "sbfly/tiled_engine.hpp"

#include <tbb/parallel_for.h>

#include <algorithm>
#include <atomic>
#include <exception>
#include <numeric>
#include <queue>
#include <thread>

#include "sbfly/bucket_count.hpp"
#include "sbfly/kernels.hpp"

namespace sbfly::tiled {

const char* to_string(CooperationRegime r) noexcept {
  switch (r) {
    case CooperationRegime::Warp: return "warp";
    case CooperationRegime::PartialBlock: return "partial_block";
    case CooperationRegime::FullBlock: return "full_block";
  }
  return "unknown";
}

CooperationRegime select_regime(std::uint32_t degree, RegimeThresholds t) noexcept {
  if (degree < t.warp_max) return CooperationRegime::Warp;
  if (degree <= t.partial_max) return CooperationRegime::PartialBlock;
  return CooperationRegime::FullBlock;
}

std::uint64_t ScheduleReport::total_work() const noexcept {
  return std::accumulate(per_block_work.begin(), per_block_work.end(), std::uint64_t{0});
}

double load_imbalance(const ScheduleReport& report) {
  const auto total = report.total_work();
  if (report.per_block_work.empty() || total == 0) throw Error(Errc::NoWork, "schedule has no work");
  const auto max = *std::max_element(report.per_block_work.begin(), report.per_block_work.end());
  const double mean = static_cast<double>(total) / static_cast<double>(report.per_block_work.size());
  return static_cast<double>(max) / mean;
}

namespace {

void finish_report(ScheduleReport& report) {
  report.max_over_mean = report.total_work() == 0 ? 1.0 : load_imbalance(report);
}

// Fixed-capacity counter pair for one tile of endpoint ids.
class TileMap {
 public:
  explicit TileMap(std::uint32_t capacity) : b1_(capacity), b2_(capacity) {}

  void clear(std::uint32_t len) noexcept {
    std::fill_n(b1_.begin(), len, 0u);
    std::fill_n(b2_.begin(), len, 0u);
  }
  void add(std::uint32_t slot, WedgeKind kind) noexcept { ++(kind == WedgeKind::Symmetric ? b1_ : b2_)[slot]; }
  std::uint64_t reduce(std::uint32_t len) const noexcept {
    return kernels::pair_sum({b1_.data(), len}, {b2_.data(), len});
  }

 private:
  std::vector<std::uint32_t> b1_;
  std::vector<std::uint32_t> b2_;
};

struct AnchorResult {
  std::uint64_t count = 0;
  std::uint64_t work = 0;
  std::uint64_t tiles = 0;
};

AnchorResult run_tiled_anchor(const SignedBipartiteGraph& g, Side side, VertexId u, std::uint32_t tile_size,
                              TileMap& map, std::vector<std::size_t>& cursors) {
  const auto n = static_cast<VertexId>(g.count(side));
  const Side center_side = other(side);
  const auto centers = g.neighbors(side, u);
  const auto center_signs = g.signs(side, u);
  cursors.assign(centers.size(), 0);

  AnchorResult out;
  for (VertexId lo = 0; lo < n; lo += tile_size) {
    const auto len = std::min<VertexId>(tile_size, n - lo);
    const auto hi = lo + len;
    map.clear(len);
    // Each center's list is sorted, so its cursor only moves forward across tiles.
    for (std::size_t i = 0; i < centers.size(); ++i) {
      const auto ends = g.neighbors(center_side, centers[i]);
      const auto end_signs = g.signs(center_side, centers[i]);
      auto& c = cursors[i];
      for (; c < ends.size() && ends[c] < hi; ++c) {
        const auto w = ends[c];
        if (w > u) {
          map.add(w - lo, wedge_kind(center_signs[i], end_signs[c]));
          ++out.work;
        }
      }
    }
    out.count = checked_add(out.count, map.reduce(len));
    ++out.tiles;
    if (hi == n) break;
  }
  return out;
}

AnchorResult run_untiled_anchor(const SignedBipartiteGraph& g, Side side, VertexId u, WedgeBuckets& buckets) {
  const Side center_side = other(side);
  const auto centers = g.neighbors(side, u);
  const auto center_signs = g.signs(side, u);
  buckets.reset();
  AnchorResult out;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    const auto ends = g.neighbors(center_side, centers[i]);
    const auto end_signs = g.signs(center_side, centers[i]);
    // Sorted list: endpoints above u form a suffix.
    const auto first = std::upper_bound(ends.begin(), ends.end(), u) - ends.begin();
    for (auto j = static_cast<std::size_t>(first); j < ends.size(); ++j) {
      buckets.add(ends[j], wedge_kind(center_signs[i], end_signs[j]));
      ++out.work;
    }
  }
  out.count = buckets.pair_total();
  return out;
}

}  // namespace

TiledResult count_balanced_tiled(const SignedBipartiteGraph& g, TileConfig cfg) {
  if (cfg.tile_size < 1 || cfg.block_count < 1) {
    throw Error(Errc::InvalidTileConfig, "tile_size and block_count must be at least 1");
  }
  const Side side = select_min_side(g);
  const auto n = static_cast<VertexId>(g.count(side));
  const auto blocks = cfg.block_count;

  TiledResult result;
  auto& report = result.report;
  report.processing_side = side;
  report.per_block_work.assign(blocks, 0);
  report.per_anchor_work.assign(n, 0);
  report.task_order.resize(n);
  report.task_block.resize(n);
  std::iota(report.task_order.begin(), report.task_order.end(), VertexId{0});
  for (VertexId u = 0; u < n; ++u) report.task_block[u] = u % blocks;

  std::vector<std::uint64_t> block_count(blocks, 0);
  std::vector<std::uint64_t> block_tiles(blocks, 0);
  tbb::parallel_for(std::uint32_t{0}, blocks, [&](std::uint32_t b) {
    TileMap map(std::min<std::uint32_t>(cfg.tile_size, std::max<VertexId>(n, 1)));
    std::vector<std::size_t> cursors;
    // Grid-stride: this block owns anchors b, b + blocks, b + 2 * blocks, ...
    for (std::uint64_t u = b; u < n; u += blocks) {
      const auto r = run_tiled_anchor(g, side, static_cast<VertexId>(u), cfg.tile_size, map, cursors);
      block_count[b] = checked_add(block_count[b], r.count);
      report.per_block_work[b] += r.work;
      report.per_anchor_work[u] = r.work;
      block_tiles[b] += r.tiles;
    }
  });

  for (std::uint32_t b = 0; b < blocks; ++b) {
    result.count = checked_add(result.count, block_count[b]);
    report.tiles_processed += block_tiles[b];
  }
  finish_report(report);
  return result;
}

TiledResult count_balanced_dynamic(const SignedBipartiteGraph& g, std::uint32_t block_count,
                                   RegimeThresholds thresholds, DispatchMode mode) {
  if (thresholds.warp_max >= thresholds.partial_max) {
    throw Error(Errc::InvalidThresholds, "warp_max must be below partial_max");
  }
  if (block_count < 1) throw Error(Errc::InvalidTileConfig, "block_count must be at least 1");

  const Side side = select_min_side(g);
  const auto n = static_cast<VertexId>(g.count(side));

  // Host-side preprocessing: fanout scores and the heavy-first task list.
  std::vector<std::uint64_t> score(n);
  for (VertexId u = 0; u < n; ++u) score[u] = fanout(g, {side, u});
  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), VertexId{0});
  std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) { return score[a] > score[b]; });

  TiledResult result;
  auto& report = result.report;
  report.processing_side = side;
  report.per_block_work.assign(block_count, 0);
  report.per_anchor_work.assign(n, 0);
  report.task_order = order;
  report.task_block.assign(n, 0);
  for (const auto u : order) ++report.regime_histogram[static_cast<int>(select_regime(g.degree(side, u), thresholds))];

  if (mode == DispatchMode::Replay) {
    using Slot = std::pair<std::uint64_t, std::uint32_t>;  // (accumulated work, block)
    std::priority_queue<Slot, std::vector<Slot>, std::greater<>> idle;
    for (std::uint32_t b = 0; b < block_count; ++b) idle.push({0, b});
    WedgeBuckets buckets(n);
    for (std::size_t task = 0; task < order.size(); ++task) {
      const auto [load, b] = idle.top();
      idle.pop();
      const auto u = order[task];
      const auto r = run_untiled_anchor(g, side, u, buckets);
      result.count = checked_add(result.count, r.count);
      report.per_block_work[b] += r.work;
      report.per_anchor_work[u] = r.work;
      report.task_block[task] = b;
      idle.push({load + r.work, b});
    }
    finish_report(report);
    return result;
  }

  std::atomic<std::size_t> next_task{0};
  std::vector<std::uint64_t> block_totals(block_count, 0);
  std::vector<std::exception_ptr> errors(block_count);
  {
    std::vector<std::jthread> pool;
    pool.reserve(block_count);
    for (std::uint32_t b = 0; b < block_count; ++b) {
      pool.emplace_back([&, b] {
        try {
          WedgeBuckets buckets(n);
          while (true) {
            const auto task = next_task.fetch_add(1, std::memory_order_relaxed);
            if (task >= order.size()) break;
            const auto u = order[task];
            const auto r = run_untiled_anchor(g, side, u, buckets);
            block_totals[b] = checked_add(block_totals[b], r.count);
            report.per_block_work[b] += r.work;
            report.per_anchor_work[u] = r.work;
            report.task_block[task] = b;
          }
        } catch (...) {
          errors[b] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (const auto t : block_totals) result.count = checked_add(result.count, t);
  finish_report(report);
  return result;
}

}  // namespace sbfly::tiled
