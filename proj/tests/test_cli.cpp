#include <gtest/gtest.h>

#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
  int code;
  std::string out;
};

// Runs the binary through the shell, capturing stdout (and stderr when asked).
Run run(const std::string& args, bool merge_stderr = false) {
  std::string cmd = std::string(GFIX_BIN) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const std::string& name) { return std::string(GFIX_TEST_DATA) + "/" + name; }

}  // namespace

TEST(Cli, LawsPassExitsZero) {
  auto r = run("laws --model cms --laws conway --trials 20 --seed 1");
  EXPECT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["ok"].get<bool>());
  EXPECT_EQ(j["verdicts"].size(), 5u);
}

TEST(Cli, TextFormat) {
  auto r = run("laws --model presheaf --laws fix --trials 10 --sizes poset=chain2 --format text");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("presheaf/chain2 fix pass trials=10", 0), 0u) << r.out;
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("laws --model cms --trials 0").code, 2);
  EXPECT_EQ(run("laws --model nope").code, 2);
  EXPECT_EQ(run("laws --model cms --laws bogus").code, 2);
  EXPECT_EQ(run("laws --model cms --format xml").code, 2);
  EXPECT_EQ(run("laws --model cms --sizes set=zero").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("search nope").code, 2);
}

TEST(Cli, SolveWorkedSystem) {
  auto r = run("solve " + data("worked_system.txt") + " --depth 4 --format text");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "x1 = *(*(*(□,y2),c),y1)\nx2 = *(*(*(□,y1),y2),c)\n");
  auto c = run("solve " + data("worked_system.txt") + " --depth 8 --check --format text");
  EXPECT_EQ(c.code, 0);
  EXPECT_NE(c.out.find("solution square at depth 8: ok"), std::string::npos);
  auto j = nlohmann::json::parse(run("solve " + data("worked_system.txt") + " --depth 4").out);
  EXPECT_EQ(j["solutions"]["x2"], "*(*(*(□,y1),y2),c)");
}

TEST(Cli, SolveUnguardedNamesTheVariable) {
  auto r = run("solve " + data("unguarded.txt"), true);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("error: equation for x is unguarded"), std::string::npos) << r.out;
}

TEST(Cli, SolveMissingFile) { EXPECT_EQ(run("solve /nonexistent/system.txt").code, 2); }

TEST(Cli, SearchExitsZero) {
  auto r = run("search dd-lift --trials 2 --seed 3");
  EXPECT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["target"], "dd-lift");
  EXPECT_EQ(j["budget"], 2);
}

TEST(Cli, RepeatRunsAreByteIdentical) {
  for (const std::string args : {"laws --model presheaf --laws all --trials 15 --seed 42 --sizes poset=chain3",
                                 "laws --model citm --laws conway --trials 15 --seed 42",
                                 "search d2-conway --trials 3 --seed 8"}) {
    auto a = run(args), b = run(args);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out) << args;
  }
}

TEST(Cli, OutFile) {
  std::string path = ::testing::TempDir() + "gfix_cli_out.json";
  auto r = run("laws --model cms --laws fix --trials 5 --out " + path);
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  FILE* f = fopen(path.c_str(), "r");
  ASSERT_NE(f, nullptr);
  fclose(f);
  std::remove(path.c_str());
}
