#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Result {
  int status;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(PNSPACE_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int raw = ::pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::vector<nlohmann::json> lines(const std::string& out) {
  std::vector<nlohmann::json> v;
  std::istringstream in(out);
  std::string s;
  while (std::getline(in, s))
    if (!s.empty()) v.push_back(nlohmann::json::parse(s));
  return v;
}

}  // namespace

TEST(Cli, CheckTnormPasses) {
  const auto r = run("check-tnorm W --trials 500");
  EXPECT_EQ(r.status, 0);
  const auto js = lines(r.out);
  ASSERT_EQ(js.size(), 1u);
  EXPECT_EQ(js[0]["verdict"], "pass");
  EXPECT_EQ(js[0]["invocation"]["command"], "check-tnorm");
}

TEST(Cli, DominanceOfLiftMOverTauW) {
  const auto r = run("check-dominance lift:M tau:W --trials 100");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(run("check-dominance M W --trials 1000").status, 0);
  EXPECT_EQ(run("check-dominance W M --trials 1000").status, 1);
  EXPECT_EQ(run("check-dominance W* M* --trials 1000").status, 0);
}

TEST(Cli, KnownN3FailureExitsOne) {
  const auto r = run("verify-axioms alpha2-under-tauM");
  EXPECT_EQ(r.status, 1);
  const auto js = lines(r.out);
  ASSERT_EQ(js.size(), 1u);
  EXPECT_EQ(js[0]["verdict"], "fail");
  EXPECT_EQ(js[0]["witness"]["check"], "N3");
  EXPECT_EQ(js[0]["witness"]["inputs"]["mode"], "p=q");
}

TEST(Cli, UnknownNamesExitTwo) {
  EXPECT_EQ(run("check-tnorm Q").status, 2);
  EXPECT_EQ(run("verify-axioms no-such-space").status, 2);
  EXPECT_EQ(run("theorem thm99").status, 2);
  EXPECT_EQ(run("check-superadditive cube").status, 2);
  EXPECT_EQ(run("frobnicate").status, 2);
  EXPECT_EQ(run("--config /nonexistent.json check-tnorm M").status, 2);
}

TEST(Cli, SuperadditiveWithTau) {
  EXPECT_EQ(run("check-superadditive pow:2 --trials 2000").status, 0);
  EXPECT_EQ(run("check-superadditive sqrt --trials 2000").status, 1);
  const auto r = run("check-superadditive pow:2 --tau tau:W --trials 100");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(lines(r.out)[0]["invocation"]["tau"], "tau:W");
}

TEST(Cli, BuildProductWithVerify) {
  const auto r = run("build-product simple-lift-M --verify --trials 200");
  EXPECT_EQ(r.status, 0);
  const auto js = lines(r.out);
  ASSERT_EQ(js.size(), 2u);
  EXPECT_EQ(js[0]["details"]["dimension"], 3);
  EXPECT_EQ(js[1]["verdict"], "pass");
}

TEST(Cli, TheoremBundleLemma2) {
  const auto r = run("theorem lemma2 --trials 100000");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(lines(r.out)[0]["verdict"], "pass");
}

TEST(Cli, SameSeedSameBytes) {
  const auto a = run("theorem thm6 --seed 5");
  const auto b = run("theorem thm6 --seed 5");
  EXPECT_EQ(a.out, b.out);
  EXPECT_FALSE(a.out.empty());
}

TEST(Cli, JsonFileAndReplay) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto report = (dir / "pnspace-cli-report.jsonl").string();
  const auto r = run("verify-axioms alpha2-under-tauM --trials 300 --seed 3 --json " + report);
  EXPECT_EQ(r.status, 1);
  std::ifstream in(report);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), r.out);
  const auto replay = run("--replay " + report);
  EXPECT_EQ(replay.status, 0);
  const auto js = lines(replay.out);
  ASSERT_EQ(js.size(), 1u);
  EXPECT_EQ(js[0]["reproduced"], true);
  EXPECT_EQ(js[0]["witness"], lines(r.out)[0]["witness"]);
  std::filesystem::remove(report);
}

TEST(Cli, ReplayWithoutFailuresIsAUsageError) {
  const auto report = (std::filesystem::temp_directory_path() / "pnspace-cli-pass.jsonl").string();
  EXPECT_EQ(run("check-tnorm M --trials 50 --json " + report).status, 0);
  EXPECT_EQ(run("--replay " + report).status, 2);
  std::filesystem::remove(report);
}

TEST(Cli, TopologyExperiment) {
  const auto r = run("topology sigma-one-close");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(lines(r.out)[0]["anchor"], "sec5");
}
