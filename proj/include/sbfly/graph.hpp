#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sbfly/error.hpp"

namespace sbfly {

enum class EdgeSign : std::uint8_t { Positive = 0, Negative = 1 };

enum class Side : std::uint8_t { U = 0, V = 1 };

constexpr Side other(Side s) noexcept { return s == Side::U ? Side::V : Side::U; }

constexpr EdgeSign flip(EdgeSign s) noexcept {
  return s == EdgeSign::Positive ? EdgeSign::Negative : EdgeSign::Positive;
}

/// +1 / -1 view of a sign.
constexpr int sigma(EdgeSign s) noexcept { return s == EdgeSign::Positive ? 1 : -1; }

using VertexId = std::uint32_t;

struct VertexRef {
  Side side = Side::U;
  VertexId index = 0;

  friend bool operator==(const VertexRef&, const VertexRef&) = default;
};

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  EdgeSign sign = EdgeSign::Positive;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Size of the smaller side, average degree over it, and bipartite density.
/// The ratios are also kept as exact integer fractions.
struct GraphStats {
  std::uint64_t u_count = 0;
  std::uint64_t v_count = 0;
  std::uint64_t edge_count = 0;
  std::uint64_t n_min = 0;
  double d_min_avg = 0.0;
  double density = 0.0;

  /// density == edge_count / density_denominator() exactly.
  std::uint64_t density_denominator() const noexcept { return u_count * v_count; }
};

/// Immutable signed bipartite graph in compressed sparse form, one CSR per
/// side. Neighbor lists are sorted ascending and carry a parallel sign array.
class SignedBipartiteGraph {
 public:
  SignedBipartiteGraph() = default;

  /// Throws Error{DuplicateEdge} on a repeated (u, v) pair regardless of sign
  /// and Error{IndexOutOfRange} on an index outside its side.
  static SignedBipartiteGraph build(std::size_t u_count, std::size_t v_count, std::span<const Edge> edges);

  std::size_t u_count() const noexcept { return sides_[0].degree.size(); }
  std::size_t v_count() const noexcept { return sides_[1].degree.size(); }
  std::size_t count(Side s) const noexcept { return side(s).degree.size(); }
  std::size_t edge_count() const noexcept { return sides_[0].neighbors.size(); }

  std::span<const VertexId> neighbors(Side s, VertexId i) const noexcept {
    const auto& sd = side(s);
    return {sd.neighbors.data() + sd.offsets[i], sd.offsets[i + 1] - sd.offsets[i]};
  }
  std::span<const EdgeSign> signs(Side s, VertexId i) const noexcept {
    const auto& sd = side(s);
    return {sd.signs.data() + sd.offsets[i], sd.offsets[i + 1] - sd.offsets[i]};
  }
  std::uint32_t degree(Side s, VertexId i) const noexcept { return side(s).degree[i]; }
  std::uint32_t degree(VertexRef r) const noexcept { return degree(r.side, r.index); }
  std::span<const std::uint32_t> degrees(Side s) const noexcept { return side(s).degree; }

  /// Position in the joint order over U ∪ V: U vertices first, then V.
  std::uint64_t global_id(VertexRef r) const noexcept {
    return r.side == Side::U ? r.index : u_count() + r.index;
  }

  bool contains(VertexRef r) const noexcept { return r.index < count(r.side); }

  /// Sign of edge (u, v) if present.
  bool find_edge(VertexId u, VertexId v, EdgeSign& out) const noexcept;

  /// All edges sorted by (u, v).
  std::vector<Edge> edges() const;

 private:
  struct Csr {
    std::vector<std::size_t> offsets{0};
    std::vector<VertexId> neighbors;
    std::vector<EdgeSign> signs;
    std::vector<std::uint32_t> degree;
  };

  const Csr& side(Side s) const noexcept { return sides_[static_cast<int>(s)]; }

  Csr sides_[2];
};

/// Strict total order p(a) < p(b): lower degree first, ties broken by global id.
bool priority_less(const SignedBipartiteGraph& g, VertexRef a, VertexRef b) noexcept;

/// U unless V is strictly smaller.
Side select_min_side(const SignedBipartiteGraph& g) noexcept;

/// Sum of neighbor degrees plus the vertex's own degree.
std::uint64_t fanout(const SignedBipartiteGraph& g, VertexRef r) noexcept;

/// Throws Error{EmptySide} when either side has no vertices.
GraphStats stats(const SignedBipartiteGraph& g);
GraphStats stats(std::uint64_t u_count, std::uint64_t v_count, std::uint64_t edge_count);

}  // namespace sbfly
