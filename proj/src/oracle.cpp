#include "sbfly/oracle.hpp"

#include <vector>

namespace sbfly::oracle {
namespace {

struct CommonNeighbor {
  VertexId id;
  EdgeSign sign_a;
  EdgeSign sign_b;
};

// Sorted-list intersection of the neighborhoods of a and b on side s.
void common_neighbors(const SignedBipartiteGraph& g, Side s, VertexId a, VertexId b,
                      std::vector<CommonNeighbor>& out) {
  out.clear();
  const auto na = g.neighbors(s, a);
  const auto nb = g.neighbors(s, b);
  const auto sa = g.signs(s, a);
  const auto sb = g.signs(s, b);
  std::size_t i = 0, j = 0;
  while (i < na.size() && j < nb.size()) {
    if (na[i] < nb[j]) {
      ++i;
    } else if (nb[j] < na[i]) {
      ++j;
    } else {
      out.push_back({na[i], sa[i], sb[j]});
      ++i;
      ++j;
    }
  }
}

bool pair_balanced(const CommonNeighbor& x, const CommonNeighbor& y) {
  const int neg = (x.sign_a == EdgeSign::Negative) + (x.sign_b == EdgeSign::Negative) +
                  (y.sign_a == EdgeSign::Negative) + (y.sign_b == EdgeSign::Negative);
  return neg % 2 == 0;
}

}  // namespace

void enumerate_butterflies(const SignedBipartiteGraph& g, const ButterflyVisitor& visit, Side pivot) {
  const auto n = static_cast<VertexId>(g.count(pivot));
  std::vector<CommonNeighbor> common;
  for (VertexId a = 0; a < n; ++a) {
    if (g.degree(pivot, a) < 2) continue;
    for (VertexId b = a + 1; b < n; ++b) {
      common_neighbors(g, pivot, a, b, common);
      for (std::size_t i = 0; i < common.size(); ++i) {
        for (std::size_t j = i + 1; j < common.size(); ++j) {
          const auto& x = common[i];
          const auto& y = common[j];
          Butterfly bf;
          if (pivot == Side::U) {
            bf.u1 = a;
            bf.u2 = b;
            bf.v1 = x.id;
            bf.v2 = y.id;
            bf.signs = {x.sign_a, y.sign_a, x.sign_b, y.sign_b};
          } else {
            bf.u1 = x.id;
            bf.u2 = y.id;
            bf.v1 = a;
            bf.v2 = b;
            bf.signs = {x.sign_a, x.sign_b, y.sign_a, y.sign_b};
          }
          visit(bf);
        }
      }
    }
  }
}

bool is_balanced(const Butterfly& b) noexcept {
  int neg = 0;
  for (const auto s : b.signs) neg += s == EdgeSign::Negative;
  return neg % 2 == 0;
}

BruteforceCount count_balanced_bruteforce(const SignedBipartiteGraph& g, Side pivot) {
  BruteforceCount out;
  enumerate_butterflies(
      g,
      [&](const Butterfly& b) {
        ++out.total;
        out.balanced += is_balanced(b);
      },
      pivot);
  return out;
}

BruteforceCount count_balanced_bruteforce(const SignedBipartiteGraph& g) {
  return count_balanced_bruteforce(g, select_min_side(g));
}

std::uint64_t count_balanced_2k_bruteforce(const SignedBipartiteGraph& g, int k, Side anchor_side) {
  if (k < 2) throw Error(Errc::InvalidK, "k must be at least 2");
  const auto n = static_cast<VertexId>(g.count(anchor_side));
  const auto kk = static_cast<std::size_t>(k);
  std::uint64_t total = 0;
  std::vector<CommonNeighbor> common;
  std::vector<std::size_t> pick(kk);

  for (VertexId a = 0; a < n; ++a) {
    for (VertexId b = a + 1; b < n; ++b) {
      common_neighbors(g, anchor_side, a, b, common);
      const auto m = common.size();
      if (m < kk) continue;
      // Lexicographic walk over all k-subsets of [0, m).
      for (std::size_t i = 0; i < kk; ++i) pick[i] = i;
      while (true) {
        bool ok = true;
        for (std::size_t i = 0; ok && i < kk; ++i) {
          for (std::size_t j = i + 1; ok && j < kk; ++j) ok = pair_balanced(common[pick[i]], common[pick[j]]);
        }
        total += ok;

        std::size_t i = kk;
        while (i > 0 && pick[i - 1] == m - kk + (i - 1)) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < kk; ++j) pick[j] = pick[j - 1] + 1;
      }
    }
  }
  return total;
}

ButterflyClassCounts classify(const Butterfly& b) noexcept {
  // Wedge through v1: (u1v1, u2v1); through v2: (u1v2, u2v2).
  const EdgeSign w1a = b.signs[0], w1b = b.signs[2];
  const EdgeSign w2a = b.signs[1], w2b = b.signs[3];
  const bool sym1 = w1a == w1b;
  const bool sym2 = w2a == w2b;

  ButterflyClassCounts c;
  if (sym1 && sym2) {
    const int negative_wedges = (w1a == EdgeSign::Negative) + (w2a == EdgeSign::Negative);
    if (negative_wedges == 0) {
      c.coherent_pp_pp = 1;
    } else if (negative_wedges == 1) {
      c.coherent_pp_mm = 1;
    } else {
      c.coherent_mm_mm = 1;
    }
  } else if (!sym1 && !sym2) {
    c.incoherent_pm_pm = 1;
  } else {
    const EdgeSign symmetric_sign = sym1 ? w1a : w2a;
    if (symmetric_sign == EdgeSign::Positive) {
      c.mixed_pp_pm = 1;
    } else {
      c.mixed_pm_mm = 1;
    }
  }
  return c;
}

ButterflyClassCounts classify_butterflies(const SignedBipartiteGraph& g) {
  ButterflyClassCounts total;
  enumerate_butterflies(g, [&](const Butterfly& b) {
    const auto c = classify(b);
    total.coherent_pp_pp += c.coherent_pp_pp;
    total.coherent_pp_mm += c.coherent_pp_mm;
    total.coherent_mm_mm += c.coherent_mm_mm;
    total.incoherent_pm_pm += c.incoherent_pm_pm;
    total.mixed_pp_pm += c.mixed_pp_pm;
    total.mixed_pm_mm += c.mixed_pm_mm;
  });
  return total;
}

}  // namespace sbfly::oracle
