#include <gtest/gtest.h>

#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "matsym_cli.hpp"

#ifndef MATSYM_SAMPLES_DIR
#define MATSYM_SAMPLES_DIR "samples"
#endif

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = matsym::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(MATSYM_SAMPLES_DIR) + "/" + name; }

std::string temp_file(const std::string& text) {
  char name[] = "/tmp/matsym_cli_XXXXXX";
  int fd = mkstemp(name);
  if (fd >= 0) {
    if (write(fd, text.data(), text.size()) < 0) {
    }
    close(fd);
  }
  return name;
}

matsym::cli::Json json_of(const Result& r) { return matsym::cli::Json::parse(r.out); }

}  // namespace

TEST(Cli, RankFullSets) {
  auto r = run({"--json", "rank", "det:4x4x2", "full"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json_of(r)["rank"], 12);
  EXPECT_EQ(json_of(run({"--json", "rank", "symdet:4x2", "full"}))["rank"], 7);
  EXPECT_EQ(json_of(run({"--json", "rank", "rig:5x2", "full"}))["rank"], 7);
}

TEST(Cli, RankVerdicts) {
  auto j = json_of(run({"--json", "rank", "det:3x3x2", sample("k33.txt")}));
  EXPECT_EQ(j["verdict"], "circuit");
  EXPECT_EQ(j["defect"], 1);
  EXPECT_EQ(j["class"]["aut_order"], 36);
  j = json_of(run({"--json", "rank", "det:4x4x2", sample("det2_44_circuit.txt")}));
  EXPECT_EQ(j["verdict"], "circuit");
  EXPECT_EQ(j["class"]["aut_order"], 6);
  j = json_of(run({"--json", "rank", "rig:4x2", sample("k4.txt")}));
  EXPECT_EQ(j["verdict"], "circuit");
  j = json_of(run({"--json", "rank", "det:3x3x2", sample("k33_minus_edge.txt")}));
  EXPECT_EQ(j["verdict"], "independent");
  auto t = run({"rank", "det:4x4x1", sample("c8.txt")});
  EXPECT_NE(t.out.find("verdict circuit"), std::string::npos);
  EXPECT_NE(t.out.find("aut 8"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"rank", "det:2x2x2", sample("k33.txt")}).code, matsym::cli::kDimension);
  EXPECT_EQ(run({"rank", "det:3x3x2", temp_file("#x\n")}).code, matsym::cli::kMaskParse);
  EXPECT_EQ(run({"rank", "det:3x3x2", "/nonexistent/mask"}).code, matsym::cli::kMaskParse);
  EXPECT_EQ(run({"rank", "dot:3x3x2", "full"}).code, matsym::cli::kUsage);
  EXPECT_EQ(run({"bogus"}).code, matsym::cli::kUsage);
  EXPECT_EQ(run({}).code, matsym::cli::kUsage);
  EXPECT_EQ(run({"--primes", "15", "rank", "det:3x3x2", "full"}).code, matsym::cli::kUsage);
  EXPECT_EQ(run({"--trials", "0", "rank", "det:3x3x2", "full"}).code, matsym::cli::kUsage);
  EXPECT_EQ(run({"limits", "biprig:m7:r3", "--horizon", "3", "--horizon-cap", "3"}).code, matsym::cli::kHorizonCap);
  EXPECT_EQ(run({"limits", "biprig:r3", "--grid", "5"}).code, matsym::cli::kHorizonCap);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, Completable) {
  auto j = json_of(run({"--json", "completable", "det:3x3x2", sample("k33_minus_edge.txt")}));
  ASSERT_EQ(j["completable"].size(), 1u);
  EXPECT_EQ(j["completable"][0]["entry"], matsym::cli::Json({3, 3}));
  EXPECT_EQ(j["completable"][0]["witness"], matsym::cli::Json({"###", "###", "###"}));
  // a staircase truncation minus its last element completes nothing
  j = json_of(run({"--json", "completable", "det:4x4x2", temp_file("####\n###.\n....\n....\n")}));
  EXPECT_TRUE(j["completable"].empty());
  // a basis spans everything
  j = json_of(run({"--json", "completable", "det:4x4x2", temp_file("####\n####\n##..\n##..\n")}));
  EXPECT_EQ(j["rank"], 12);
  EXPECT_EQ(j["completable"].size(), 4u);
  EXPECT_EQ(run({"completable", "rig:4x2", "full"}).code, matsym::cli::kUsage);
}

TEST(Cli, CircuitsAndCount) {
  auto j = json_of(run({"--json", "circuits", "det:5x5x2", "--max-sig", "5,5"}));
  int at55 = 0;
  for (auto& c : j["classes"]) at55 += c["signature"] == matsym::cli::Json({5, 5});
  EXPECT_EQ(at55, 12);
  EXPECT_FALSE(j["partial"]);
  auto c = json_of(run({"--json", "count", "det:5x5x2"}));
  EXPECT_EQ(c["total"], 65650);
  EXPECT_EQ(json_of(run({"--json", "count", "rig:6x2"}))["total"], 642);
  auto t = run({"count", "det:5x5x2"});
  EXPECT_NE(t.out.find("(5,5)  12  127/32"), std::string::npos);
}

TEST(Cli, BudgetGivesPartial) {
  auto j = json_of(run({"--json", "count", "det:7x7x3", "--budget-ms", "200"}));
  EXPECT_TRUE(j["partial"]);
  EXPECT_FALSE(j.contains("total"));
}

TEST(Cli, Limits) {
  auto j = json_of(run({"--json", "limits", "biprig:m4:r2", "--horizon", "12"}));
  EXPECT_EQ(j["rho"], 2);
  EXPECT_EQ(j["kappa"], 3);
  EXPECT_EQ(j["alpha"], 11);
  j = json_of(run({"--json", "limits", "det:r2"}));
  EXPECT_EQ(j["boundary"], matsym::cli::Json::array({{3, 3}}));
  EXPECT_EQ(j["alpha"], 4);
  j = json_of(run({"--json", "limits", "rig:r2"}));
  EXPECT_EQ(j["rho"], 2);
  auto text = run({"limits", "det:m3:r1"});
  EXPECT_NE(text.out.find("staircase"), std::string::npos);
  EXPECT_EQ(run({"limits", "rig:m3:r2"}).code, matsym::cli::kUsage);
}

TEST(Cli, Moves) {
  auto j = json_of(run({"--json", "move", sample("k33.txt"), "--edge", "1,1", "--t", "2", "--rank", "2"}));
  EXPECT_EQ(j["verdict"], "circuit");
  EXPECT_EQ(j["signature"], matsym::cli::Json({4, 5}));
  j = json_of(run({"--json", "move", sample("k33_minus_edge.txt"), "--edge", "1,1", "--t", "2", "--partial"}));
  EXPECT_EQ(j["verdict"], "unique-circuit");
  j = json_of(run({"--json", "move", "--counterexample"}));
  EXPECT_TRUE(j["basis"]);
  EXPECT_EQ(j["edges"], 16);
  EXPECT_EQ(run({"move", sample("k33.txt"), "--edge", "1,1", "--t", "3", "--rank", "2"}).code,
            matsym::cli::kUsage);
}

TEST(Cli, Poly) {
  auto j = json_of(run({"--json", "poly", "det:3x3x2", "--minor", "1,2,3:1,2,3", "--evals", "20"}));
  EXPECT_TRUE(j["vanishes"]);
  EXPECT_TRUE(j["support_minimal"]);
  EXPECT_EQ(j["terms"], 6);
  j = json_of(run({"--json", "poly", "det:4x4x1", "--cycle", sample("c8.txt"), "--evals", "20"}));
  EXPECT_TRUE(j["support_minimal"]);
  j = json_of(run({"--json", "poly", "rig:4x2", "--cm", "1,2,3,4", "--evals", "20"}));
  EXPECT_TRUE(j["vanishes"]);
  auto bad = run({"poly", "det:2x2x1", "--expr", "x_1_1", "--evals", "3"});
  EXPECT_EQ(bad.code, matsym::cli::kVerification);
  EXPECT_EQ(run({"poly", "det:2x2x1"}).code, matsym::cli::kUsage);
  auto h = run({"--json", "poly", "det:2x2x1", "--expr", "x_1_1*x_2_2 - x_1_2*x_2_1", "--homogenize"});
  EXPECT_EQ(json_of(h)["multihomogenized"], "x_1_1 * x_2_2 * y_1_2 * y_2_1 - x_1_2 * x_2_1 * y_1_1 * y_2_2");
}

TEST(Cli, DeterministicJson) {
  std::vector<std::string> a{"--json", "--seed", "9", "circuits", "det:5x5x2", "--threads", "2"};
  EXPECT_EQ(run(a).out, run(a).out);
  std::vector<std::string> b{"--json", "--seed", "9", "limits", "biprig:r2", "--grid", "6"};
  EXPECT_EQ(run(b).out, run(b).out);
}

TEST(Cli, PrimeOverrides) {
  auto j = json_of(run({"--json", "--primes", "1048583", "rank", "det:4x4x2", "full"}));
  EXPECT_EQ(j["rank"], 12);
  setenv("MATSYM_PRIMES", "2000003,2147483647", 1);
  EXPECT_EQ(json_of(run({"--json", "rank", "det:4x4x2", "full"}))["rank"], 12);
  setenv("MATSYM_PRIMES", "12", 1);
  EXPECT_EQ(run({"rank", "det:4x4x2", "full"}).code, matsym::cli::kUsage);
  unsetenv("MATSYM_PRIMES");
}

// The real binary: SIGINT during a long enumeration yields flagged partial output.
TEST(CliBinary, InterruptGivesPartialOutput) {
  std::string out = "/tmp/matsym_sigint_out.json";
  pid_t pid = fork();
  ASSERT_GE(pid, 0);
  if (pid == 0) {
    if (!freopen(out.c_str(), "w", stdout)) _exit(99);
    execl(MATSYM_CLI_PATH, "matsym", "--json", "circuits", "det:7x7x3", static_cast<char*>(nullptr));
    _exit(98);
  }
  std::this_thread::sleep_for(std::chrono::milliseconds(1500));
  kill(pid, SIGINT);
  int status = 0;
  waitpid(pid, &status, 0);
  ASSERT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), matsym::cli::kInterrupted);
  std::ifstream in(out);
  auto j = matsym::cli::Json::parse(in);
  EXPECT_TRUE(j["partial"]);
  EXPECT_FALSE(j["classes"].empty());
}

TEST(CliBinary, ExitCodeFromProcess) {
  std::string cmd = std::string(MATSYM_CLI_PATH) + " rank det:2x2x2 " + sample("k33.txt") + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  EXPECT_EQ(WEXITSTATUS(status), matsym::cli::kDimension);
}
