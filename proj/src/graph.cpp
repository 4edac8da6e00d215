#include "sbfly/graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace sbfly {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::DuplicateEdge: return "DuplicateEdge";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::EmptySide: return "EmptySide";
    case Errc::MalformedLine: return "MalformedLine";
    case Errc::MissingValue: return "MissingValue";
    case Errc::InvalidSignValue: return "InvalidSignValue";
    case Errc::InvalidProbability: return "InvalidProbability";
    case Errc::InvalidK: return "InvalidK";
    case Errc::InvalidWorkers: return "InvalidWorkers";
    case Errc::InvalidTileConfig: return "InvalidTileConfig";
    case Errc::InvalidThresholds: return "InvalidThresholds";
    case Errc::CountOverflow: return "CountOverflow";
    case Errc::NoWork: return "NoWork";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

SignedBipartiteGraph SignedBipartiteGraph::build(std::size_t u_count, std::size_t v_count,
                                                 std::span<const Edge> edges) {
  constexpr auto kMaxIndex = std::numeric_limits<VertexId>::max();
  if (u_count > kMaxIndex || v_count > kMaxIndex) {
    throw Error(Errc::IndexOutOfRange, "side size exceeds 32-bit vertex ids");
  }
  for (const auto& e : edges) {
    if (e.u >= u_count || e.v >= v_count) {
      throw Error(Errc::IndexOutOfRange,
                  "edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) + ") out of range");
    }
  }

  SignedBipartiteGraph g;
  const std::size_t counts[2] = {u_count, v_count};
  for (int s = 0; s < 2; ++s) {
    auto& sd = g.sides_[s];
    sd.degree.assign(counts[s], 0);
    sd.offsets.assign(counts[s] + 1, 0);
    sd.neighbors.resize(edges.size());
    sd.signs.resize(edges.size());
  }
  for (const auto& e : edges) {
    ++g.sides_[0].degree[e.u];
    ++g.sides_[1].degree[e.v];
  }
  for (int s = 0; s < 2; ++s) {
    auto& sd = g.sides_[s];
    for (std::size_t i = 0; i < counts[s]; ++i) sd.offsets[i + 1] = sd.offsets[i] + sd.degree[i];
  }

  // Scatter, then sort each list; duplicates become adjacent.
  std::vector<std::size_t> cursor_u(g.sides_[0].offsets.begin(), g.sides_[0].offsets.end() - 1);
  std::vector<std::size_t> cursor_v(g.sides_[1].offsets.begin(), g.sides_[1].offsets.end() - 1);
  for (const auto& e : edges) {
    auto& su = g.sides_[0];
    su.neighbors[cursor_u[e.u]] = e.v;
    su.signs[cursor_u[e.u]++] = e.sign;
    auto& sv = g.sides_[1];
    sv.neighbors[cursor_v[e.v]] = e.u;
    sv.signs[cursor_v[e.v]++] = e.sign;
  }

  std::vector<std::pair<VertexId, EdgeSign>> scratch;
  for (int s = 0; s < 2; ++s) {
    auto& sd = g.sides_[s];
    for (std::size_t i = 0; i < counts[s]; ++i) {
      const auto lo = sd.offsets[i];
      const auto hi = sd.offsets[i + 1];
      scratch.clear();
      for (auto k = lo; k < hi; ++k) scratch.emplace_back(sd.neighbors[k], sd.signs[k]);
      std::sort(scratch.begin(), scratch.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      for (std::size_t k = 0; k < scratch.size(); ++k) {
        if (k > 0 && scratch[k].first == scratch[k - 1].first) {
          const auto u = s == 0 ? i : scratch[k].first;
          const auto v = s == 0 ? scratch[k].first : i;
          throw Error(Errc::DuplicateEdge,
                      "duplicate edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
        }
        sd.neighbors[lo + k] = scratch[k].first;
        sd.signs[lo + k] = scratch[k].second;
      }
    }
  }
  return g;
}

bool SignedBipartiteGraph::find_edge(VertexId u, VertexId v, EdgeSign& out) const noexcept {
  if (u >= u_count() || v >= v_count()) return false;
  const auto nbrs = neighbors(Side::U, u);
  const auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v);
  if (it == nbrs.end() || *it != v) return false;
  out = signs(Side::U, u)[static_cast<std::size_t>(it - nbrs.begin())];
  return true;
}

std::vector<Edge> SignedBipartiteGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (VertexId u = 0; u < u_count(); ++u) {
    const auto nbrs = neighbors(Side::U, u);
    const auto sg = signs(Side::U, u);
    for (std::size_t k = 0; k < nbrs.size(); ++k) out.push_back({u, nbrs[k], sg[k]});
  }
  return out;
}

bool priority_less(const SignedBipartiteGraph& g, VertexRef a, VertexRef b) noexcept {
  const auto da = g.degree(a);
  const auto db = g.degree(b);
  if (da != db) return da < db;
  return g.global_id(a) < g.global_id(b);
}

Side select_min_side(const SignedBipartiteGraph& g) noexcept {
  return g.v_count() < g.u_count() ? Side::V : Side::U;
}

std::uint64_t fanout(const SignedBipartiteGraph& g, VertexRef r) noexcept {
  std::uint64_t total = g.degree(r);
  const auto far = other(r.side);
  for (const auto v : g.neighbors(r.side, r.index)) total += g.degree(far, v);
  return total;
}

GraphStats stats(std::uint64_t u_count, std::uint64_t v_count, std::uint64_t edge_count) {
  if (u_count == 0 || v_count == 0) throw Error(Errc::EmptySide, "graph has an empty side");
  GraphStats st;
  st.u_count = u_count;
  st.v_count = v_count;
  st.edge_count = edge_count;
  st.n_min = std::min(u_count, v_count);
  st.d_min_avg = static_cast<double>(edge_count) / static_cast<double>(st.n_min);
  // u*v is exact in 64 bits for 32-bit sides; the exact fraction is edge_count / density_denominator().
  st.density = static_cast<double>(edge_count) / static_cast<double>(u_count * v_count);
  return st;
}

GraphStats stats(const SignedBipartiteGraph& g) { return stats(g.u_count(), g.v_count(), g.edge_count()); }

}  // namespace sbfly
