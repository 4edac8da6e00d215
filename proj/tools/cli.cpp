#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "sbfly/bucket_count.hpp"
#include "sbfly/ingest.hpp"

namespace sbfly::cli {

using nlohmann::json;

json to_json(const GraphStats& s) {
  return {{"n_min", s.n_min}, {"d_min_avg", s.d_min_avg}, {"density", s.density}};
}

json to_json(const tiled::ScheduleReport& r) {
  json j{
      {"per_block_work", r.per_block_work},
      {"max_over_mean", r.max_over_mean},
      {"task_order", r.task_order},
      {"regime_histogram",
       {{"warp", r.regime_histogram[0]}, {"partial_block", r.regime_histogram[1]}, {"full_block", r.regime_histogram[2]}}},
      {"processing_side", r.processing_side == Side::U ? "u" : "v"},
  };
  if (r.tiles_processed > 0) j["tiles_processed"] = r.tiles_processed;
  return j;
}

json to_json(const oracle::ButterflyClassCounts& c) {
  return {
      {"coherent_pp_pp", c.coherent_pp_pp},     {"coherent_pp_mm", c.coherent_pp_mm},
      {"coherent_mm_mm", c.coherent_mm_mm},     {"incoherent_pm_pm", c.incoherent_pm_pm},
      {"mixed_pp_pm", c.mixed_pp_pm},           {"mixed_pm_mm", c.mixed_pm_mm},
  };
}

namespace {

// Thrown for argument combinations CLI11 cannot validate on its own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PolicyFlags {
  std::string policy = "explicit";
  double threshold = 0.0;
  bool strict = false;
  double p_pos = 0.7;
};

struct CommonFlags {
  std::string input;
  std::string format = "whitespace";
  std::uint64_t seed = 0;
  bool json = false;
  PolicyFlags policy;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--input", f.input, "Edge list path")->required();
  cmd->add_option("--format", f.format, "Input format")->check(CLI::IsMember({"whitespace"}));
  cmd->add_option("--seed", f.seed, "Seed for the random sign policy");
  cmd->add_flag("--json", f.json, "Machine-readable output");
  cmd->add_option("--policy", f.policy.policy, "Sign policy")->check(CLI::IsMember({"explicit", "rating", "random"}));
  cmd->add_option("--threshold", f.policy.threshold, "Rating threshold");
  cmd->add_flag("--strict", f.policy.strict, "Rating must be strictly above the threshold");
  cmd->add_option("--p-pos", f.policy.p_pos, "Positive probability for the random policy");
}

ingest::SignPolicy make_policy(const CommonFlags& f) {
  if (f.policy.policy == "rating") return ingest::RatingThreshold{f.policy.threshold, !f.policy.strict};
  if (f.policy.policy == "random") return ingest::RandomBernoulli{f.policy.p_pos, f.seed};
  return ingest::ExplicitSign{};
}

ingest::LabeledGraph load(const CommonFlags& f) { return ingest::load_file(f.input, make_policy(f)); }

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct EngineFlags {
  std::string algo = "parallel";
  int k = 2;
  std::string anchor_side = "u";
  int threads = 1;
  std::uint32_t tile_size = 128;
  std::uint32_t blocks = 8;
  std::uint32_t warp_max = 32;
  std::uint32_t partial_max = 512;
  bool replay = false;
};

struct EngineRun {
  std::uint64_t balanced = 0;
  std::optional<std::uint64_t> total;
  std::optional<tiled::ScheduleReport> schedule;
  int workers_or_blocks = 1;
  double wall_seconds = 0.0;
};

EngineRun run_engine(const SignedBipartiteGraph& g, const EngineFlags& e) {
  if (e.k != 2 && e.algo != "oracle" && e.algo != "bb2k") {
    throw UsageError("--k other than 2 is only supported by oracle and bb2k");
  }
  const Side anchor = e.anchor_side == "v" ? Side::V : Side::U;
  EngineRun run;
  const auto start = std::chrono::steady_clock::now();
  if (e.algo == "oracle") {
    if (e.k == 2) {
      const auto bf = oracle::count_balanced_bruteforce(g);
      run.balanced = bf.balanced;
      run.total = bf.total;
    } else {
      run.balanced = oracle::count_balanced_2k_bruteforce(g, e.k, anchor);
    }
  } else if (e.algo == "bb2k") {
    run.balanced = count_balanced_2k_serial(g, e.k, anchor);
  } else if (e.algo == "parallel") {
    run.balanced = count_balanced_parallel(g, e.threads);
    run.workers_or_blocks = e.threads;
  } else if (e.algo == "tiled") {
    auto r = tiled::count_balanced_tiled(g, {e.tile_size, e.blocks});
    run.balanced = r.count;
    run.schedule = std::move(r.report);
    run.workers_or_blocks = static_cast<int>(e.blocks);
  } else {
    auto r = tiled::count_balanced_dynamic(g, e.blocks, {e.warp_max, e.partial_max},
                                           e.replay ? tiled::DispatchMode::Replay : tiled::DispatchMode::Threads);
    run.balanced = r.count;
    run.schedule = std::move(r.report);
    run.workers_or_blocks = static_cast<int>(e.blocks);
  }
  run.wall_seconds = seconds_since(start);
  return run;
}

void add_engine_flags(CLI::App* cmd, EngineFlags& e) {
  cmd->add_option("--k", e.k, "Biclique width (oracle and bb2k)")->check(CLI::Range(2, 64));
  cmd->add_option("--anchor-side", e.anchor_side, "Size-2 side for (2,k) counting")
      ->check(CLI::IsMember({"u", "v"}));
  cmd->add_option("--tile-size", e.tile_size, "Endpoint ids per tile (tiled)")->check(CLI::PositiveNumber);
  cmd->add_option("--blocks", e.blocks, "Persistent blocks (tiled, dynamic)")->check(CLI::PositiveNumber);
  cmd->add_option("--warp-max", e.warp_max, "Degree below which a warp is used (dynamic)");
  cmd->add_option("--partial-max", e.partial_max, "Largest degree using a partial block (dynamic)");
  cmd->add_flag("--replay", e.replay, "Deterministic task claiming (dynamic)");
}

const std::vector<std::string> kAlgos = {"oracle", "bb2k", "parallel", "tiled", "dynamic"};

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Balanced butterfly counting in signed bipartite graphs", "bbc"};
  app.require_subcommand(1);

  CommonFlags convert_flags;
  std::string output;
  auto* convert = app.add_subcommand("convert", "Sign, deduplicate and write a normalized edge list");
  add_common(convert, convert_flags);
  convert->add_option("--output", output, "Output path")->required();

  CommonFlags count_flags;
  EngineFlags engine;
  std::string report_path;
  std::optional<std::uint64_t> expect;
  auto* count = app.add_subcommand("count", "Count balanced butterflies or (2,k)-bicliques");
  add_common(count, count_flags);
  add_engine_flags(count, engine);
  count->add_option("--algo", engine.algo, "Engine")->check(CLI::IsMember(kAlgos));
  count->add_option("--threads", engine.threads, "Worker threads (parallel)")->check(CLI::PositiveNumber);
  count->add_option("--report", report_path, "Write the schedule report JSON here (tiled, dynamic)");
  count->add_option("--expect", expect, "Exit 3 unless the balanced count equals this");

  CommonFlags classify_flags;
  auto* classify = app.add_subcommand("classify", "Coherent / incoherent / mixed butterfly totals");
  add_common(classify, classify_flags);

  CommonFlags stats_flags;
  auto* stats_cmd = app.add_subcommand("stats", "Structural statistics");
  add_common(stats_cmd, stats_flags);

  CommonFlags bench_flags;
  EngineFlags bench_engine;
  std::string bench_algos = "bb2k,parallel";
  std::string bench_threads = "1,8";
  int repeat = 3;
  auto* bench = app.add_subcommand("bench", "Time engines; CSV rows algo,workers,wall_seconds,count");
  add_common(bench, bench_flags);
  add_engine_flags(bench, bench_engine);
  bench->add_option("--algos", bench_algos, "Comma-separated engines");
  bench->add_option("--threads", bench_threads, "Comma-separated worker (or block) counts");
  bench->add_option("--repeat", repeat, "Runs per configuration; the minimum time is reported")
      ->check(CLI::PositiveNumber);

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back("bbc");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*convert) {
      const auto g = load(convert_flags);
      std::ofstream file(output);
      if (!file) throw Error(Errc::Io, "cannot write " + output);
      ingest::write_edge_list(file, g);
      std::uint64_t positive = 0;
      for (const auto& e : g.graph.edges()) positive += e.sign == EdgeSign::Positive;
      const auto m = g.graph.edge_count();
      const double fraction = m == 0 ? 0.0 : static_cast<double>(positive) / static_cast<double>(m);
      if (convert_flags.json) {
        out << json{{"edges", m},
                    {"u_count", g.graph.u_count()},
                    {"v_count", g.graph.v_count()},
                    {"positive_fraction", fraction}}
                   .dump()
            << '\n';
      } else {
        out << "edges " << m << "\nu_count " << g.graph.u_count() << "\nv_count " << g.graph.v_count()
            << "\npositive_fraction " << fraction << '\n';
      }
      return kOk;
    }

    if (*count) {
      const auto g = load(count_flags);
      const auto st = stats(g.graph);
      const auto run = run_engine(g.graph, engine);
      json result{
          {"algo", engine.algo},
          {"k", engine.k},
          {"balanced_count", run.balanced},
      };
      if (run.total) result["total_butterflies"] = *run.total;
      result["wall_seconds"] = run.wall_seconds;
      result["workers_or_blocks"] = run.workers_or_blocks;
      result["graph_stats"] = to_json(st);
      if (run.schedule) result["schedule"] = to_json(*run.schedule);
      out << result.dump() << '\n';

      if (!report_path.empty()) {
        if (!run.schedule) throw UsageError("--report needs --algo tiled or dynamic");
        std::ofstream file(report_path);
        if (!file) throw Error(Errc::Io, "cannot write " + report_path);
        file << to_json(*run.schedule).dump(2) << '\n';
      }
      if (expect && *expect != run.balanced) {
        err << "expected " << *expect << " balanced, got " << run.balanced << '\n';
        return kExpectationMismatch;
      }
      return kOk;
    }

    if (*classify) {
      const auto g = load(classify_flags);
      const auto classes = oracle::classify_butterflies(g.graph);
      const auto bf = oracle::count_balanced_bruteforce(g.graph);
      if (classes.total() != bf.total || classes.balanced() != bf.balanced) {
        err << "classification invariant violated: classes sum " << classes.total() << " vs total " << bf.total
            << ", coherent+incoherent " << classes.balanced() << " vs balanced " << bf.balanced << '\n';
        return kDataError;
      }
      auto j = to_json(classes);
      j["total"] = bf.total;
      j["balanced"] = bf.balanced;
      out << j.dump() << '\n';
      return kOk;
    }

    if (*stats_cmd) {
      const auto g = load(stats_flags);
      const auto st = stats(g.graph);
      if (stats_flags.json) {
        auto j = to_json(st);
        j["u_count"] = st.u_count;
        j["v_count"] = st.v_count;
        j["edge_count"] = st.edge_count;
        out << j.dump() << '\n';
      } else {
        out << "u_count " << st.u_count << "\nv_count " << st.v_count << "\nedge_count " << st.edge_count
            << "\nn_min " << st.n_min << std::setprecision(4) << "\nd_min_avg " << st.d_min_avg << "\ndensity "
            << st.density << '\n';
      }
      return kOk;
    }

    if (*bench) {
      const auto g = load(bench_flags);
      std::vector<int> workers;
      for (const auto& w : split_csv(bench_threads)) {
        const int n = std::stoi(w);
        if (n < 1) throw UsageError("worker counts must be positive");
        workers.push_back(n);
      }
      const auto algos = split_csv(bench_algos);
      for (const auto& a : algos) {
        if (std::find(kAlgos.begin(), kAlgos.end(), a) == kAlgos.end()) throw UsageError("unknown algo " + a);
      }
      out << "algo,workers,wall_seconds,count\n";
      std::optional<std::uint64_t> agreed;
      for (const auto& a : algos) {
        for (const int w : workers) {
          EngineFlags e = bench_engine;
          e.algo = a;
          e.threads = w;
          e.blocks = static_cast<std::uint32_t>(w);
          double best = 0.0;
          std::uint64_t balanced = 0;
          for (int r = 0; r < repeat; ++r) {
            const auto run = run_engine(g.graph, e);
            best = r == 0 ? run.wall_seconds : std::min(best, run.wall_seconds);
            balanced = run.balanced;
          }
          out << a << ',' << w << ',' << best << ',' << balanced << '\n';
          if (agreed && *agreed != balanced) {
            err << "count disagreement: " << a << " with " << w << " workers gave " << balanced << ", expected "
                << *agreed << '\n';
            return kExpectationMismatch;
          }
          agreed = balanced;
        }
      }
      return kOk;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kUsage;
}

}  // namespace sbfly::cli
