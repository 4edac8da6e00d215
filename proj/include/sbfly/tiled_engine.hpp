#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "sbfly/graph.hpp"

// CPU execution models of the two GPU counting kernels. Both deduplicate with
// the raw-id rule w.id > u.id instead of degree priority, and both report how
// admitted wedge visits were spread over blocks.
namespace sbfly::tiled {

struct TileConfig {
  std::uint32_t tile_size = 128;  // endpoint ids per tile (shared-map capacity)
  std::uint32_t block_count = 1;  // persistent blocks
};

enum class CooperationRegime : std::uint8_t { Warp = 0, PartialBlock = 1, FullBlock = 2 };

const char* to_string(CooperationRegime r) noexcept;

struct RegimeThresholds {
  std::uint32_t warp_max = 32;
  std::uint32_t partial_max = 512;
};

/// Warp below warp_max, PartialBlock up to and including partial_max, FullBlock above.
CooperationRegime select_regime(std::uint32_t degree, RegimeThresholds t) noexcept;

struct ScheduleReport {
  std::vector<std::uint64_t> per_block_work;     // admitted wedge visits per block
  double max_over_mean = 1.0;
  std::vector<VertexId> task_order;              // anchors in dispatch order
  std::vector<std::uint32_t> task_block;         // block that ran task_order[i]
  std::array<std::uint64_t, 3> regime_histogram{};  // indexed by CooperationRegime
  std::vector<std::uint64_t> per_anchor_work;    // indexed by anchor id
  std::uint64_t tiles_processed = 0;             // tiled engine only
  Side processing_side = Side::U;

  std::uint64_t total_work() const noexcept;
};

struct TiledResult {
  std::uint64_t count = 0;
  ScheduleReport report;
};

/// Static grid-stride assignment (anchor i -> block i mod block_count); each
/// anchor sweeps the endpoint id space in tiles of tile_size with fixed-size
/// counter arrays. Throws Error{InvalidTileConfig} or Error{CountOverflow}.
TiledResult count_balanced_tiled(const SignedBipartiteGraph& g, TileConfig cfg);

enum class DispatchMode {
  /// block_count OS threads claim tasks from a shared atomic counter. The
  /// count is deterministic; the task -> block mapping is not.
  Threads,
  /// Deterministic interleaving: the block with the least accumulated work
  /// (lowest index on ties) claims the next task.
  Replay,
};

/// Anchors sorted by decreasing fanout (ascending id on ties) and claimed
/// through a monotone task counter. Throws Error{InvalidThresholds} when
/// warp_max >= partial_max, Error{InvalidTileConfig} for block_count < 1.
TiledResult count_balanced_dynamic(const SignedBipartiteGraph& g, std::uint32_t block_count,
                                   RegimeThresholds thresholds = {}, DispatchMode mode = DispatchMode::Threads);

/// max(per_block_work) / mean(per_block_work); 1.0 when perfectly even.
/// Throws Error{NoWork} when the total is zero.
double load_imbalance(const ScheduleReport& report);

}  // namespace sbfly::tiled
