#include <gtest/gtest.h>

#include <limits>

#include "sbfly/bucket_count.hpp"
#include "sbfly/oracle.hpp"
#include "test_support.hpp"

namespace sbfly {
namespace {

using namespace sbfly::testing;

constexpr auto P = EdgeSign::Positive;
constexpr auto N = EdgeSign::Negative;

TEST(WedgeKind, BySignEquality) {
  static_assert(wedge_kind(P, P) == WedgeKind::Symmetric);
  static_assert(wedge_kind(N, N) == WedgeKind::Symmetric);
  static_assert(wedge_kind(P, N) == WedgeKind::Asymmetric);
  static_assert(wedge_kind(N, P) == WedgeKind::Asymmetric);
}

TEST(Binomial, SmallValues) {
  EXPECT_EQ(binomial(0, 2), 0u);
  EXPECT_EQ(binomial(1, 2), 0u);
  EXPECT_EQ(binomial(2, 2), 1u);
  EXPECT_EQ(binomial(10, 3), 120u);
  EXPECT_EQ(binomial(52, 5), 2598960u);
  EXPECT_EQ(binomial(7, 0), 1u);
  EXPECT_EQ(binomial(3, 5), 0u);
}

TEST(Binomial, Pascal) {
  for (std::uint64_t n = 1; n < 62; ++n) {
    for (unsigned k = 1; k <= n; ++k) EXPECT_EQ(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
  }
}

TEST(Binomial, LargeAndOverflow) {
  // C(2^32, 2) = 2^31 * (2^32 - 1) fits.
  EXPECT_EQ(binomial(std::uint64_t{1} << 32, 2), (std::uint64_t{1} << 31) * ((std::uint64_t{1} << 32) - 1));
  EXPECT_EQ(binomial(67, 33), 14226520737620288370ULL);
  for (const auto& [n, k] : {std::pair<std::uint64_t, unsigned>{std::uint64_t{1} << 40, 2}, {68, 34}, {1000, 50}}) {
    try {
      binomial(n, k);
      FAIL() << n << " choose " << k;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::CountOverflow);
    }
  }
}

TEST(CheckedAdd, Overflow) {
  EXPECT_EQ(checked_add(1, 2), 3u);
  const auto max = std::numeric_limits<std::uint64_t>::max();
  EXPECT_EQ(checked_add(max - 1, 1), max);
  EXPECT_THROW(checked_add(max, 1), Error);
}

TEST(Buckets, CountsAndReset) {
  WedgeBuckets b(8);
  b.add(3, WedgeKind::Symmetric);
  b.add(3, WedgeKind::Symmetric);
  b.add(3, WedgeKind::Asymmetric);
  b.add(5, WedgeKind::Asymmetric);
  b.add(5, WedgeKind::Asymmetric);
  b.add(5, WedgeKind::Asymmetric);
  EXPECT_EQ(b.b1(3), 2u);
  EXPECT_EQ(b.b2(3), 1u);
  EXPECT_EQ(b.b2(5), 3u);
  EXPECT_EQ(b.b1(0), 0u);
  EXPECT_EQ(b.touched(), (std::vector<VertexId>{3, 5}));
  EXPECT_EQ(b.pair_total(), 1u + 3u);
  EXPECT_EQ(b.choose_total(3), 1u);
  EXPECT_EQ(b.wedge_total(), 6u);
  b.reset();
  EXPECT_EQ(b.b1(3), 0u);
  EXPECT_TRUE(b.touched().empty());
  EXPECT_EQ(b.pair_total(), 0u);
  b.add(3, WedgeKind::Asymmetric);
  EXPECT_EQ(b.b1(3), 0u);
  EXPECT_EQ(b.b2(3), 1u);
}

TEST(Serial, CompleteGraphs) {
  EXPECT_EQ(count_balanced_2k_serial(complete_graph(2, 2), 2, Side::U), 1u);
  EXPECT_EQ(count_balanced_2k_serial(complete_graph(2, 3), 3, Side::U), 1u);
  EXPECT_EQ(count_balanced_2k_serial(complete_graph(2, 3), 2, Side::U), 3u);
  EXPECT_EQ(count_balanced_2k_serial(complete_graph(6, 6, N), 2, Side::V), 225u);
}

TEST(Serial, FourByFourThreeNegatives) {
  const auto g = k44_three_negatives();
  const auto expected = oracle::count_balanced_bruteforce(g).balanced;
  EXPECT_EQ(expected, 19u);
  EXPECT_EQ(count_balanced_2k_serial(g, 2, Side::U), expected);
  EXPECT_EQ(count_balanced_2k_serial(g, 2, Side::V), expected);
}

TEST(Serial, InvalidK) {
  try {
    count_balanced_2k_serial(complete_graph(2, 2), 1, Side::U);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidK);
  }
}

TEST(Serial, EveryConfigurationMatchesDenseOracle) {
  for (std::uint64_t seed = 1000; seed < 1080; ++seed) {
    const auto g = random_graph(seed);
    const auto expected = dense_bruteforce(g).balanced;
    for (const Side side : {Side::U, Side::V}) {
      for (const bool presort : {false, true}) {
        EXPECT_EQ(count_balanced_2k_serial(g, 2, side, {presort}), expected) << seed;
      }
    }
  }
}

TEST(Serial, GeneralKMatchesSubsetScan) {
  for (std::uint64_t seed = 1100; seed < 1140; ++seed) {
    const auto g = random_graph(seed, {9, 10, 0.6, 0.3});
    for (int k = 2; k <= 5; ++k) {
      const auto expected = dense_2k_bruteforce(g, k);
      EXPECT_EQ(count_balanced_2k_serial(g, k, Side::U), expected);
      EXPECT_EQ(count_balanced_2k_serial(g, k, Side::U, {true}), expected);
      EXPECT_EQ(count_balanced_2k_serial(transpose(g), k, Side::V), expected);
    }
  }
}

TEST(Serial, LargeKGivesZero) {
  const auto g = random_graph(77, {10, 10, 0.5, 0.5});
  EXPECT_EQ(count_balanced_2k_serial(g, 11, Side::U), 0u);
  EXPECT_EQ(count_balanced_2k_serial(g, 64, Side::V), 0u);
}

TEST(Counters, EveryAdmittedWedgeIsBucketedWithinCostBound) {
  for (std::uint64_t seed = 1200; seed < 1230; ++seed) {
    const auto g = random_graph(seed);
    for (const bool presort : {false, true}) {
      WedgeCounters c;
      count_balanced_2k_serial(g, 2, Side::U, {presort}, &c);
      EXPECT_EQ(c.bucketed, c.admitted);
      EXPECT_LE(c.admitted, c.traversed);
      EXPECT_LE(c.traversed, c.cost_bound);
      EXPECT_EQ(c.anchors, g.u_count());
    }
    WedgeCounters plain, sorted;
    count_balanced_2k_serial(g, 2, Side::U, {false}, &plain);
    count_balanced_2k_serial(g, 2, Side::U, {true}, &sorted);
    EXPECT_EQ(plain.admitted, sorted.admitted);
    EXPECT_LE(sorted.traversed, plain.traversed);

    WedgeCounters par;
    count_balanced_parallel(g, 4, &par);
    EXPECT_EQ(par.bucketed, par.admitted);
    EXPECT_LE(par.admitted, par.cost_bound);
  }
}

TEST(Counters, AdmittedWedgesFormEachButterflyOnce) {
  // Without presorting every wedge u-v-w is traversed; admission keeps those
  // with p(w) < p(u), so each unordered endpoint pair is seen from one side.
  const auto g = complete_graph(4, 3);
  WedgeCounters c;
  count_balanced_2k_serial(g, 2, Side::U, {}, &c);
  EXPECT_EQ(c.traversed, 4u * 3u * 4u);
  EXPECT_EQ(c.admitted, 3u * binomial(4, 2));
}

TEST(Parallel, AgreesWithSerialForEveryWorkerCount) {
  for (std::uint64_t seed = 1300; seed < 1360; ++seed) {
    const auto g = random_graph(seed);
    const auto expected = count_balanced_2k_serial(g, 2, select_min_side(g));
    EXPECT_EQ(expected, dense_bruteforce(g).balanced);
    for (const int w : {1, 2, 4, 8}) EXPECT_EQ(count_balanced_parallel(g, w), expected) << seed << " w=" << w;
  }
}

TEST(Parallel, TwoNegativeEdgesOnDiagonal) {
  const std::vector<Edge> edges{{0, 0, P}, {0, 1, N}, {1, 0, N}, {1, 1, P}};
  EXPECT_EQ(count_balanced_parallel(SignedBipartiteGraph::build(2, 2, edges), 3), 1u);
}

TEST(Parallel, InvalidWorkers) {
  try {
    count_balanced_parallel(complete_graph(2, 2), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidWorkers);
  }
}

TEST(Invariants, SignTransformations) {
  for (std::uint64_t seed = 1400; seed < 1430; ++seed) {
    const auto g = random_graph(seed);
    const auto base = count_balanced_parallel(g, 2);
    EXPECT_EQ(count_balanced_parallel(flip_all(g), 2), base);
    EXPECT_EQ(count_balanced_parallel(transpose(g), 2), base);
    EXPECT_EQ(count_balanced_2k_serial(switch_vertex(g, {Side::U, 0}), 2, Side::V), base);
    EXPECT_EQ(count_balanced_2k_serial(switch_vertex(g, {Side::V, 0}), 2, Side::U), base);
  }
}

}  // namespace
}  // namespace sbfly
