#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "kcheeger/kcheeger.hpp"

using json = nlohmann::json;
using namespace kcheeger;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(KCHEEGER_CLI) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

json run_json(const std::string& args, int expected_exit = 0) {
  auto r = run(args);
  EXPECT_EQ(r.exit_code, expected_exit) << args << "\n" << r.out;
  return json::parse(r.out);
}

class CliTest : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("kcheeger_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    auto path = dir_ / name;
    std::ofstream(path) << text;
    return path.string();
  }
  std::string graph_file(const std::string& name, const Graph& g) { return write(name, write_edge_list(g)); }

  std::filesystem::path dir_;
};

Graph two_k2() {
  std::vector<Graph> parts{complete_graph(2), complete_graph(2)};
  return disjoint_union(parts);
}

} // namespace

TEST_F(CliTest, GenCompleteWritesEdgeList) {
  auto r = run("gen complete --n 10");
  ASSERT_EQ(r.exit_code, 0);
  auto g = read_edge_list(r.out);
  EXPECT_EQ(g, complete_graph(10));
  EXPECT_EQ(r.out.substr(0, 5), "n 10\n");
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 46);
}

TEST_F(CliTest, GenPlantedIsDeterministic) {
  const std::string args = "gen planted --n 30 --k 3 --p-in 0.9 --p-out 0.05 --seed 7";
  auto a = run(args), b = run(args), c = run(args + "1");
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
}

TEST_F(CliTest, GenToFileEmitsReport) {
  auto path = (dir_ / "k5.el").string();
  auto doc = run_json("gen complete --n 5 --out " + path);
  EXPECT_EQ(doc["report_version"], 1);
  EXPECT_EQ(doc["command"]["subcommand"], "gen");
  EXPECT_EQ(doc["graph"]["edges"], 10);
  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)), {});
  EXPECT_EQ(read_edge_list(text), complete_graph(5));
}

TEST_F(CliTest, InvalidFlagExitsTwoAndNamesIt) {
  auto doc = run_json("gen gnp --n 5 --p 1.5", 2);
  EXPECT_EQ(doc["error"]["flag"], "--p");
  EXPECT_NE(doc["error"]["message"].get<std::string>().find("--p"), std::string::npos);
  run_json("gen planted --n 10 --k 2 --p-in 0.1 --p-out 0.4", 2);
  run_json("gen complete --n notanumber", 2);
  run_json("frobnicate", 2);
}

TEST_F(CliTest, SpectrumExamples) {
  auto k5 = run_json("spectrum " + graph_file("k5", complete_graph(5)));
  auto ev = k5["result"]["eigenvalues"];
  ASSERT_EQ(ev.size(), 5u);
  EXPECT_NEAR(ev[0].get<double>(), 0.0, 1e-12);
  for (int i = 1; i < 5; ++i) EXPECT_NEAR(ev[i].get<double>(), 1.25, 1e-12);
  for (const auto& r : k5["result"]["residual_norms"]) EXPECT_LE(r.get<double>(), 1e-8);

  auto d = run_json("spectrum " + graph_file("2k2", two_k2()));
  EXPECT_EQ(d["result"]["zero_eigenvalues"], 2);
  EXPECT_EQ(d["graph"]["components"], 2);

  auto c4 = run_json("spectrum --k 4 " + graph_file("c4", cycle_graph(4)));
  auto cv = c4["result"]["eigenvalues"];
  const double expected[] = {0.0, 1.0, 1.0, 2.0};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(cv[i].get<double>(), expected[i], 1e-12);
}

TEST_F(CliTest, SpectrumReadsStdin) {
  auto r = run("gen cycle --n 6 | " + std::string(KCHEEGER_CLI) + " spectrum -");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(json::parse(r.out)["graph"]["n"], 6);
}

TEST_F(CliTest, BoundsCompleteGraphK4) {
  auto doc = run_json("bounds --k 2 " + graph_file("k4", complete_graph(4)));
  EXPECT_NEAR(doc["result"]["lower_bound"].get<double>(), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(doc["result"]["lower_bound_statement_reading"].get<double>(), 7.0 / 12.0, 1e-12);
  EXPECT_EQ(doc["result"]["main_hypothesis_holds"], false);
}

TEST_F(CliTest, BoundsWithInjectedBasis) {
  const std::size_t n = 100, k = 4;
  std::vector<std::vector<double>> basis{std::vector<double>(n, 1.0 / std::sqrt(double(n)))};
  for (std::size_t i = 1; i < k; ++i) {
    std::vector<double> v(n, 0.0);
    v[2 * i - 2] = 1.0 / std::sqrt(2.0);
    v[2 * i - 1] = -1.0 / std::sqrt(2.0);
    basis.push_back(v);
  }
  auto g = graph_file("k100", complete_graph(n));
  auto b = write("basis", write_basis(basis));
  auto doc = run_json("bounds --k 4 --basis-file " + b + " " + g);
  const double target = 0.5 - 1.0 / 16.0;
  EXPECT_NEAR(doc["result"]["upper_bound_nonpos"].get<double>(), target, 0.02 * target);
  auto flags = doc["result"]["flags"];
  EXPECT_NE(std::find(flags.begin(), flags.end(), "injected-basis"), flags.end());

  basis[1][0] += 0.1;
  run_json("bounds --k 4 --basis-file " + write("bad", write_basis(basis)) + " " + g, 2);
}

TEST_F(CliTest, BoundsFlagsDisconnectedInput) {
  auto doc = run_json("bounds --k 2 " + graph_file("2k2", two_k2()));
  EXPECT_EQ(doc["result"]["multi_component"], true);
  auto flags = doc["result"]["flags"];
  EXPECT_NE(std::find(flags.begin(), flags.end(), "multi-component"), flags.end());
}

TEST_F(CliTest, ExactExamples) {
  auto k4 = run_json("exact --k 2 " + graph_file("k4", complete_graph(4)));
  EXPECT_EQ(k4["result"]["optimum"]["value"], "1/3");
  EXPECT_EQ(k4["result"]["witness"]["parts"][0].size(), 2u);
  EXPECT_EQ(k4["result"]["enumerated"], 7);

  auto p3 = run_json("exact --classical " + graph_file("p3", path_graph(3)));
  EXPECT_EQ(p3["result"]["optimum"]["value"], "1");

  auto worst = run_json("exact --k 2 --objective worst " + graph_file("k4b", complete_graph(4)));
  EXPECT_EQ(worst["result"]["optimum"]["value"], "2/3");

  auto big = run_json("exact --k 3 " + graph_file("p20", path_graph(20)), 3);
  EXPECT_EQ(big["error"]["type"], "capacity");
  run_json("exact " + graph_file("k4c", complete_graph(4)), 2);
}

TEST_F(CliTest, RoundIsReproducible) {
  auto g = graph_file("planted", planted_partition_graph(30, 3, 0.9, 0.05, 7));
  auto a = run_json("round --k 3 --trials 1 --seed 42 " + g);
  auto b = run_json("round --k 3 --trials 1 --seed 42 " + g);
  a.erase("timing_ms");
  b.erase("timing_ms");
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_EQ(a["command"]["seed"], 42);
  EXPECT_EQ(a["command"]["config"]["variant"].get<std::string>().empty(), false);
}

TEST_F(CliTest, RoundRejectsLargeDelta) {
  auto g = graph_file("k6", complete_graph(6));
  auto doc = run_json("round --k 2 --delta 0.6 " + g, 2);
  EXPECT_EQ(doc["error"]["flag"], "--delta");
}

TEST_F(CliTest, RoundReportsExpectationsAndConcentration) {
  auto g = graph_file("k12", complete_graph(12));
  auto doc = run_json("round --k 3 --trials 20 --delta 0.1 --expectation-trials 2000 --epsilon 0.5 --epsilon 1 " + g);
  const auto& ex = doc["result"]["expectation"];
  EXPECT_NEAR(ex["mu"].get<double>(), 0.8 * 132 / 4.0, 1e-9);
  EXPECT_TRUE(ex.contains("monte_carlo"));
  EXPECT_EQ(doc["result"]["concentration"].size(), 2u);
}

TEST_F(CliTest, VerifyCorpus) {
  auto doc = run_json("verify --corpus 6 --k-range 2..4");
  const auto& s = doc["result"]["summary"];
  EXPECT_EQ(s["pass"], true);
  EXPECT_EQ(s["violations"], 0);
  EXPECT_GE(s["graph_k_pairs"].get<int>(), 300);
}

TEST_F(CliTest, VerifyStatementReadingFlagsKnownErratum) {
  auto g = graph_file("k4", complete_graph(4));
  auto doc = run_json("verify --k-range 2..2 --lambda-reading statement " + g, 0);
  const auto& v = doc["result"]["violations"];
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0]["tag"], "known-erratum");
  EXPECT_EQ(v[0]["check"], "lower_bound");
  EXPECT_EQ(doc["result"]["summary"]["known_errata"], 1);
  auto proof = run_json("verify --k-range 2..2 " + g, 0);
  EXPECT_EQ(proof["result"]["violations"].size(), 0u);
  EXPECT_NEAR(proof["result"]["records"][0]["per_k"][0]["lower_bound"].get<double>(), 1.0 / 3.0, 1e-12);
}

TEST_F(CliTest, VerifyDisconnectedPasses) {
  auto doc = run_json("verify --k-range 2..2 " + graph_file("2k2", two_k2()));
  EXPECT_EQ(doc["result"]["summary"]["pass"], true);
  const auto& rec = doc["result"]["records"][0]["per_k"][0];
  EXPECT_EQ(rec["h_exact"]["value"], "0");
  EXPECT_LE(rec["lower_bound"].get<double>(), 1e-12);
}

TEST_F(CliTest, VerifyNeedsExactlyOneSource) {
  run_json("verify", 2);
  run_json("verify --corpus 3 " + graph_file("k4", complete_graph(4)), 2);
  run_json("verify --corpus 3 --k-range 5..2", 2);
}

TEST_F(CliTest, ThreadCountDoesNotChangeOutput) {
  auto a = run("verify --corpus 4");
  auto b = run("verify --corpus 4");
  setenv("KCHEEGER_THREADS", "1", 1);
  auto c = run("verify --corpus 4");
  unsetenv("KCHEEGER_THREADS");
  auto strip = [](const std::string& s) {
    auto d = json::parse(s);
    d.erase("timing_ms");
    return d.dump();
  };
  EXPECT_EQ(strip(a.out), strip(b.out));
  EXPECT_EQ(strip(a.out), strip(c.out));
}
