#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sbfly/graph.hpp"

namespace sbfly::ingest {

enum class Format { WhitespaceSeparated };

/// One parsed line. Labels are already compacted to dense per-side indices;
/// the label tables live in ParsedEdgeList.
struct RawEdge {
  VertexId u = 0;
  VertexId v = 0;
  std::optional<double> value;
  std::optional<std::int64_t> timestamp;
};

struct ParsedEdgeList {
  std::vector<RawEdge> edges;
  std::vector<std::string> u_labels;  // index -> label, first-occurrence order
  std::vector<std::string> v_labels;
};

struct ExplicitSign {};

/// at_or_above_is_positive: value >= threshold is Positive; otherwise value > threshold.
struct RatingThreshold {
  double threshold = 0.0;
  bool at_or_above_is_positive = true;
};

struct RandomBernoulli {
  double p_positive = 0.7;
  std::uint64_t seed = 0;
};

using SignPolicy = std::variant<ExplicitSign, RatingThreshold, RandomBernoulli>;

struct SignedRawEdge {
  VertexId u = 0;
  VertexId v = 0;
  EdgeSign sign = EdgeSign::Positive;
  std::optional<std::int64_t> timestamp;
};

/// Lines starting with '%' or '#' and blank lines are skipped. Each other line
/// holds "u v [value [timestamp]]". Throws MalformedLineError.
ParsedEdgeList parse_edge_list(std::istream& in, Format format = Format::WhitespaceSeparated);
ParsedEdgeList parse_edge_list(std::string_view text, Format format = Format::WhitespaceSeparated);

/// Uniform double in [0, 1) that depends only on (seed, ordinal).
double bernoulli_uniform(std::uint64_t seed, std::uint64_t ordinal) noexcept;

std::vector<SignedRawEdge> apply_sign_policy(std::span<const RawEdge> edges, const SignPolicy& policy);

/// Keeps, per (u, v), the entry with the largest timestamp (missing counts as
/// -inf); equal timestamps resolve to the later input position. Output follows
/// first-occurrence order of each pair.
std::vector<Edge> dedup_latest(std::span<const SignedRawEdge> edges);

struct LabeledGraph {
  SignedBipartiteGraph graph;
  std::vector<std::string> u_labels;
  std::vector<std::string> v_labels;
};

/// parse -> apply_sign_policy -> dedup_latest -> build.
LabeledGraph load(std::istream& in, const SignPolicy& policy);
LabeledGraph load_file(const std::string& path, const SignPolicy& policy);

/// "u v ±1" per edge, sorted by (u, v) index order.
void write_edge_list(std::ostream& out, const LabeledGraph& g);

}  // namespace sbfly::ingest
