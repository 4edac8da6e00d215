#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "sbfly/ingest.hpp"
#include "test_support.hpp"

namespace sbfly::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sbfly_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto p = (dir_ / name).string();
    std::ofstream(p) << text;
    return p;
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string slurp(const std::string& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), {}};
  }

  std::string write_graph(const std::string& name, const SignedBipartiteGraph& g) {
    std::ostringstream s;
    for (const auto& e : g.edges()) s << 'u' << e.u << " v" << e.v << ' ' << sigma(e.sign) << '\n';
    return write(name, s.str());
  }

  fs::path dir_;
};

const std::string kSquare = "a x 1\na y 1\nb x 1\nb y 1\n";

TEST_F(CliTest, ConvertWritesNormalizedList) {
  const auto in = write("in.txt", "a x 1\nb x -1\na y 1\n");
  const auto r = invoke({"convert", "--input", in, "--output", path("out.txt"), "--json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(slurp(path("out.txt")), "a x 1\na y 1\nb x -1\n");
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["edges"], 3);
  EXPECT_NEAR(j["positive_fraction"].get<double>(), 2.0 / 3.0, 1e-12);
}

TEST_F(CliTest, ConvertRandomPolicyIsReproducible) {
  std::ostringstream s;
  for (int i = 0; i < 500; ++i) s << "u" << i % 37 << " v" << i << "\n";
  const auto in = write("in.txt", s.str());
  for (const auto* out : {"a.txt", "b.txt"}) {
    const auto r = invoke({"convert", "--input", in, "--output", path(out), "--policy", "random", "--p-pos", "0.7",
                           "--seed", "42"});
    ASSERT_EQ(r.code, kOk) << r.err;
  }
  EXPECT_EQ(slurp(path("a.txt")), slurp(path("b.txt")));
  const auto r = invoke({"convert", "--input", in, "--output", path("c.txt"), "--policy", "random", "--seed", "43"});
  ASSERT_EQ(r.code, kOk);
  EXPECT_NE(slurp(path("a.txt")), slurp(path("c.txt")));
}

TEST_F(CliTest, ConvertStrictRatingOnBoundary) {
  const auto in = write("in.txt", "a x 6\na y 7\n");
  const auto r = invoke({"convert", "--input", in, "--output", path("out.txt"), "--policy", "rating", "--threshold",
                         "6", "--strict"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(slurp(path("out.txt")), "a x -1\na y 1\n");
}

TEST_F(CliTest, CountEveryAlgoOnSquare) {
  const auto in = write("sq.txt", kSquare);
  for (const auto* algo : {"oracle", "bb2k", "parallel", "tiled", "dynamic"}) {
    const auto r = invoke({"count", "--input", in, "--algo", algo});
    ASSERT_EQ(r.code, kOk) << algo << ": " << r.err;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["balanced_count"], 1) << algo;
    EXPECT_EQ(j["algo"], algo);
    EXPECT_EQ(j["k"], 2);
    EXPECT_TRUE(j.contains("wall_seconds"));
    EXPECT_EQ(j["graph_stats"]["n_min"], 2);
  }
}

TEST_F(CliTest, CountAgreesAcrossAlgosOnRandomGraph) {
  const auto g = testing::random_graph(31337, {30, 30, 0.3, 0.5});
  const auto in = write_graph("g.txt", g);
  const auto expected = testing::dense_bruteforce(g).balanced;
  for (const auto* algo : {"oracle", "bb2k", "parallel", "tiled", "dynamic"}) {
    const auto r = invoke({"count", "--input", in, "--algo", algo, "--threads", "3", "--blocks", "4", "--tile-size",
                           "5", "--expect", std::to_string(expected)});
    EXPECT_EQ(r.code, kOk) << algo << ": " << r.err;
  }
}

TEST_F(CliTest, CountOracleReportsTotal) {
  const auto in = write("sq.txt", "a x 1\na y -1\nb x 1\nb y 1\n");
  const auto j = json::parse(invoke({"count", "--input", in, "--algo", "oracle"}).out);
  EXPECT_EQ(j["balanced_count"], 0);
  EXPECT_EQ(j["total_butterflies"], 1);
  const auto k = json::parse(invoke({"count", "--input", in, "--algo", "parallel"}).out);
  EXPECT_FALSE(k.contains("total_butterflies"));
  EXPECT_FALSE(k.contains("schedule"));
}

TEST_F(CliTest, CountGeneralK) {
  const auto in = write("k23.txt", "a x 1\na y 1\na z 1\nb x 1\nb y 1\nb z 1\n");
  for (const auto* algo : {"oracle", "bb2k"}) {
    const auto j = json::parse(invoke({"count", "--input", in, "--algo", algo, "--k", "3"}).out);
    EXPECT_EQ(j["balanced_count"], 1);
  }
  EXPECT_EQ(invoke({"count", "--input", in, "--algo", "parallel", "--k", "3"}).code, kUsage);
}

TEST_F(CliTest, DynamicReportHistogramCoversMinSide) {
  const auto g = testing::random_graph(8, {20, 30, 0.3, 0.5});
  const auto in = write_graph("g.txt", g);
  const auto r = invoke({"count", "--input", in, "--algo", "dynamic", "--report", path("r.json")});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto report = json::parse(slurp(path("r.json")));
  const auto& h = report["regime_histogram"];
  const auto st = stats(ingest::load_file(in, ingest::ExplicitSign{}).graph);
  EXPECT_EQ(h["warp"].get<std::uint64_t>() + h["partial_block"].get<std::uint64_t>() +
                h["full_block"].get<std::uint64_t>(),
            st.n_min);
  EXPECT_EQ(report["per_block_work"].size(), 8u);
  EXPECT_FALSE(report.contains("tiles_processed"));
  EXPECT_EQ(json::parse(r.out)["schedule"], report);
}

TEST_F(CliTest, ExpectMismatchExitsThree) {
  const auto in = write("sq.txt", kSquare);
  const auto r = invoke({"count", "--input", in, "--expect", "2"});
  EXPECT_EQ(r.code, kExpectationMismatch);
  EXPECT_NE(r.err.find("expected 2"), std::string::npos);
  EXPECT_EQ(invoke({"count", "--input", in, "--expect", "1"}).code, kOk);
}

TEST_F(CliTest, UsageAndDataErrors) {
  const auto in = write("sq.txt", kSquare);
  EXPECT_EQ(invoke({}).code, kUsage);
  EXPECT_EQ(invoke({"count"}).code, kUsage);
  EXPECT_EQ(invoke({"count", "--input", in, "--algo", "quantum"}).code, kUsage);
  EXPECT_EQ(invoke({"count", "--input", in, "--threads", "0"}).code, kUsage);
  EXPECT_EQ(invoke({"count", "--input", in, "--algo", "parallel", "--report", path("r.json")}).code, kUsage);
  EXPECT_EQ(invoke({"count", "--input", path("missing.txt")}).code, kDataError);
  EXPECT_EQ(invoke({"count", "--input", write("bad.txt", "a\n")}).code, kDataError);
  EXPECT_EQ(invoke({"count", "--input", write("sign.txt", "a x 5\n")}).code, kDataError);
  EXPECT_EQ(invoke({"count", "--input", in, "--algo", "dynamic", "--warp-max", "600"}).code, kDataError);
  const auto r = invoke({"count", "--input", write("bad2.txt", "a x 1\nb\n")});
  EXPECT_NE(r.err.find("MalformedLine"), std::string::npos);
  EXPECT_NE(r.err.find("line 2"), std::string::npos);
}

TEST_F(CliTest, ClassifySquare) {
  const auto in = write("sq.txt", kSquare);
  const auto r = invoke({"classify", "--input", in});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["coherent_pp_pp"], 1);
  for (const auto* k : {"coherent_pp_mm", "coherent_mm_mm", "incoherent_pm_pm", "mixed_pp_pm", "mixed_pm_mm"}) {
    EXPECT_EQ(j[k], 0) << k;
  }
}

TEST_F(CliTest, ClassifyOpposedEndpoints) {
  // a is positive to both shared neighbors, b negative to both.
  const auto in = write("opposed.txt", "a x 1\na y 1\nb x -1\nb y -1\n");
  const auto j = json::parse(invoke({"classify", "--input", in}).out);
  EXPECT_EQ(j["incoherent_pm_pm"], 1);
  EXPECT_EQ(j["balanced"], 1);
}

TEST_F(CliTest, ClassifySumsToTotal) {
  const auto g = testing::random_graph(99, {15, 15, 0.5, 0.5});
  const auto in = write_graph("g.txt", g);
  const auto j = json::parse(invoke({"classify", "--input", in}).out);
  std::uint64_t sum = 0;
  for (const auto* k : {"coherent_pp_pp", "coherent_pp_mm", "coherent_mm_mm", "incoherent_pm_pm", "mixed_pp_pm",
                        "mixed_pm_mm"}) {
    sum += j[k].get<std::uint64_t>();
  }
  const auto dense = testing::dense_bruteforce(g);
  EXPECT_EQ(sum, dense.total);
  EXPECT_EQ(j["total"], dense.total);
  EXPECT_EQ(j["balanced"], dense.balanced);
}

TEST_F(CliTest, StatsTextAndJson) {
  const auto in = write("sq.txt", "a x 1\na y 1\nb x 1\n");
  const auto t = invoke({"stats", "--input", in});
  ASSERT_EQ(t.code, kOk);
  EXPECT_NE(t.out.find("n_min 2\n"), std::string::npos);
  EXPECT_NE(t.out.find("d_min_avg 1.5\n"), std::string::npos);
  EXPECT_NE(t.out.find("density 0.75\n"), std::string::npos);
  const auto j = json::parse(invoke({"stats", "--input", in, "--json"}).out);
  EXPECT_EQ(j["edge_count"], 3);
  EXPECT_DOUBLE_EQ(j["density"].get<double>(), 0.75);
}

TEST_F(CliTest, BenchRowShapeAndAgreement) {
  const auto g = testing::random_graph(4242, {30, 30, 0.3, 0.5});
  const auto in = write_graph("g.txt", g);
  const auto r = invoke({"bench", "--input", in, "--algos", "bb2k,parallel,tiled", "--threads", "1,2,8", "--repeat",
                         "2"});
  ASSERT_EQ(r.code, kOk) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "algo,workers,wall_seconds,count");
  int rows = 0;
  const auto expected = std::to_string(testing::dense_bruteforce(g).balanced);
  while (std::getline(lines, line)) {
    ++rows;
    EXPECT_EQ(line.substr(line.rfind(',') + 1), expected) << line;
  }
  EXPECT_EQ(rows, 9);
  EXPECT_EQ(invoke({"bench", "--input", in, "--algos", "bogus"}).code, kUsage);
}

}  // namespace
}  // namespace sbfly::cli
