#pragma once

#include <array>
#include <cstdint>
#include <functional>

#include "sbfly/graph.hpp"

// Brute-force ground truth. Everything here enumerates butterflies (or
// k-subsets of common neighborhoods) explicitly and never relies on the wedge
// bucketing shortcut used by the fast engines.
namespace sbfly::oracle {

/// Canonical 4-cycle: u1 < u2, v1 < v2. Signs are ordered (u1v1, u1v2, u2v1, u2v2).
struct Butterfly {
  VertexId u1 = 0, u2 = 0;
  VertexId v1 = 0, v2 = 0;
  std::array<EdgeSign, 4> signs{};
};

struct ButterflyClassCounts {
  std::uint64_t coherent_pp_pp = 0;
  std::uint64_t coherent_pp_mm = 0;
  std::uint64_t coherent_mm_mm = 0;
  std::uint64_t incoherent_pm_pm = 0;
  std::uint64_t mixed_pp_pm = 0;
  std::uint64_t mixed_pm_mm = 0;

  std::uint64_t coherent() const noexcept { return coherent_pp_pp + coherent_pp_mm + coherent_mm_mm; }
  std::uint64_t balanced() const noexcept { return coherent() + incoherent_pm_pm; }
  std::uint64_t mixed() const noexcept { return mixed_pp_pm + mixed_pm_mm; }
  std::uint64_t total() const noexcept { return balanced() + mixed(); }
};

struct BruteforceCount {
  std::uint64_t balanced = 0;
  std::uint64_t total = 0;
};

using ButterflyVisitor = std::function<void(const Butterfly&)>;

/// Visits every butterfly once. With pivot U the visit order is lexicographic
/// in (u1, u2, v1, v2); with pivot V it is lexicographic in (v1, v2, u1, u2).
void enumerate_butterflies(const SignedBipartiteGraph& g, const ButterflyVisitor& visit, Side pivot = Side::U);

/// Even number of negative edges.
bool is_balanced(const Butterfly& b) noexcept;

BruteforceCount count_balanced_bruteforce(const SignedBipartiteGraph& g);
BruteforceCount count_balanced_bruteforce(const SignedBipartiteGraph& g, Side pivot);

/// Pairs are taken on `anchor_side`; every k-subset of a pair's common
/// neighborhood is tested for containing no unbalanced butterfly.
/// Throws Error{InvalidK} for k < 2.
std::uint64_t count_balanced_2k_bruteforce(const SignedBipartiteGraph& g, int k, Side anchor_side = Side::U);

/// Wedges are the two V-centered paths of each butterfly, with the U pair as
/// endpoints.
ButterflyClassCounts classify_butterflies(const SignedBipartiteGraph& g);

/// Single-butterfly form of the above; returns a counts struct with one entry set.
ButterflyClassCounts classify(const Butterfly& b) noexcept;

}  // namespace sbfly::oracle
