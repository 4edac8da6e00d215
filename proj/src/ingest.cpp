#include "sbfly/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace sbfly::ingest {
namespace {

std::string_view strip_plus(std::string_view tok) {
  if (tok.size() > 1 && tok.front() == '+') tok.remove_prefix(1);
  return tok;
}

template <typename T>
bool parse_number(std::string_view tok, T& out) {
  tok = strip_plus(tok);
  const auto* end = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(tok.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

class LabelTable {
 public:
  explicit LabelTable(std::vector<std::string>& labels) : labels_(labels) {}

  VertexId intern(std::string_view label) {
    auto [it, inserted] = index_.try_emplace(std::string(label), static_cast<VertexId>(labels_.size()));
    if (inserted) labels_.emplace_back(label);
    return it->second;
  }

 private:
  std::vector<std::string>& labels_;
  std::unordered_map<std::string, VertexId> index_;
};

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

ParsedEdgeList parse_edge_list(std::istream& in, Format /*format*/) {
  ParsedEdgeList out;
  LabelTable u_table(out.u_labels);
  LabelTable v_table(out.v_labels);

  std::string line;
  std::size_t line_no = 0;
  std::string_view tokens[5];
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest(line);
    std::size_t n = 0;
    while (true) {
      const auto start = rest.find_first_not_of(" \t\r\v\f");
      if (start == std::string_view::npos) break;
      rest.remove_prefix(start);
      const auto stop = std::min(rest.find_first_of(" \t\r\v\f"), rest.size());
      if (n < 5) tokens[n] = rest.substr(0, stop);
      ++n;
      rest.remove_prefix(stop);
    }
    if (n == 0) continue;
    if (tokens[0].front() == '%' || tokens[0].front() == '#') continue;
    if (n == 1 || n > 4) {
      throw MalformedLineError(line_no, "expected 2-4 tokens, found " + std::to_string(n));
    }

    RawEdge e;
    if (n >= 3) {
      double value = 0.0;
      if (!parse_number(tokens[2], value)) throw MalformedLineError(line_no, "non-numeric value");
      e.value = value;
    }
    if (n == 4) {
      std::int64_t ts = 0;
      if (!parse_number(tokens[3], ts)) throw MalformedLineError(line_no, "non-numeric timestamp");
      e.timestamp = ts;
    }
    e.u = u_table.intern(tokens[0]);
    e.v = v_table.intern(tokens[1]);
    out.edges.push_back(e);
  }
  return out;
}

ParsedEdgeList parse_edge_list(std::string_view text, Format format) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in, format);
}

double bernoulli_uniform(std::uint64_t seed, std::uint64_t ordinal) noexcept {
  const auto bits = mix64(seed ^ mix64(ordinal));
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

std::vector<SignedRawEdge> apply_sign_policy(std::span<const RawEdge> edges, const SignPolicy& policy) {
  std::vector<SignedRawEdge> out;
  out.reserve(edges.size());

  auto missing = [](std::size_t ordinal) {
    return Error(Errc::MissingValue, "edge " + std::to_string(ordinal) + " has no value");
  };

  if (const auto* rb = std::get_if<RandomBernoulli>(&policy)) {
    if (!(rb->p_positive >= 0.0 && rb->p_positive <= 1.0)) {
      throw Error(Errc::InvalidProbability, "p_positive must lie in [0, 1]");
    }
  }

  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    EdgeSign sign = EdgeSign::Positive;
    if (std::holds_alternative<ExplicitSign>(policy)) {
      if (!e.value) throw missing(i);
      if (*e.value == 1.0) {
        sign = EdgeSign::Positive;
      } else if (*e.value == 0.0 || *e.value == -1.0) {
        sign = EdgeSign::Negative;
      } else {
        throw Error(Errc::InvalidSignValue, "edge " + std::to_string(i) + " sign token is not 1, 0 or -1");
      }
    } else if (const auto* rt = std::get_if<RatingThreshold>(&policy)) {
      if (!e.value) throw missing(i);
      const bool positive = rt->at_or_above_is_positive ? *e.value >= rt->threshold : *e.value > rt->threshold;
      sign = positive ? EdgeSign::Positive : EdgeSign::Negative;
    } else {
      const auto& rb = std::get<RandomBernoulli>(policy);
      sign = bernoulli_uniform(rb.seed, i) < rb.p_positive ? EdgeSign::Positive : EdgeSign::Negative;
    }
    out.push_back({e.u, e.v, sign, e.timestamp});
  }
  return out;
}

std::vector<Edge> dedup_latest(std::span<const SignedRawEdge> edges) {
  struct Survivor {
    std::optional<std::int64_t> timestamp;
    std::size_t out_pos;
  };
  std::unordered_map<std::uint64_t, Survivor> seen;
  seen.reserve(edges.size());
  std::vector<Edge> out;
  out.reserve(edges.size());

  for (const auto& e : edges) {
    const auto key = (static_cast<std::uint64_t>(e.u) << 32) | e.v;
    auto it = seen.find(key);
    if (it == seen.end()) {
      seen.emplace(key, Survivor{e.timestamp, out.size()});
      out.push_back({e.u, e.v, e.sign});
      continue;
    }
    // nullopt compares below every engaged value, which is the -inf rule.
    if (e.timestamp >= it->second.timestamp) {
      it->second.timestamp = e.timestamp;
      out[it->second.out_pos].sign = e.sign;
    }
  }
  return out;
}

LabeledGraph load(std::istream& in, const SignPolicy& policy) {
  auto parsed = parse_edge_list(in);
  const auto signed_edges = apply_sign_policy(parsed.edges, policy);
  const auto edges = dedup_latest(signed_edges);
  LabeledGraph out;
  out.graph = SignedBipartiteGraph::build(parsed.u_labels.size(), parsed.v_labels.size(), edges);
  out.u_labels = std::move(parsed.u_labels);
  out.v_labels = std::move(parsed.v_labels);
  return out;
}

LabeledGraph load_file(const std::string& path, const SignPolicy& policy) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot open " + path);
  return load(in, policy);
}

void write_edge_list(std::ostream& out, const LabeledGraph& g) {
  for (const auto& e : g.graph.edges()) {
    out << g.u_labels[e.u] << ' ' << g.v_labels[e.v] << ' ' << (e.sign == EdgeSign::Positive ? "1" : "-1")
        << '\n';
  }
}

}  // namespace sbfly::ingest
