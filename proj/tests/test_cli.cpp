#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "support/generators.hpp"

namespace {

struct Result {
  int status;
  std::string out;
};

Result run(const std::string& args) {
  const std::string command = std::string(IOSPEC_CLI) + " " + args + " 2>&1";
  FILE* pipe = ::popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buffer[4096];
  std::size_t n;
  while ((n = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) out.append(buffer, n);
  const int raw = ::pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string writeTemp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("iospec_cli_" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("check") {
  CHECK(run("check " + writeTemp("sum.spec", iospec::testing::kSumText)).status == 0);
  const Result bad = run("check " + writeTemp("bad.spec", "write { x_C }"));
  CHECK(bad.status == 1);
  CHECK(bad.out.find("UseBeforeRead") != std::string::npos);
  CHECK(run("check " + writeTemp("syntax.spec", "read x")).status == 1);
  CHECK(run("check /nonexistent.spec").status == 2);
  CHECK(run("frobnicate").status == 2);
}

TEST_CASE("interpret, accept and sample") {
  const std::string spec = writeTemp("prompt.spec", iospec::testing::kPromptingSumText);
  const Result i = run("interpret " + spec + " --inputs 2,3,7");
  CHECK(i.status == 0);
  CHECK(i.out == "?2 !{eps, 2} ?3 !{eps, 1} ?7 !{10} stop\n");
  CHECK(run("interpret " + spec + " --inputs 2,3").status == 2);

  CHECK(run("accept " + spec + " --trace '?2 ?5 ?3 !8 stop'").out == "True\n");
  CHECK(run("accept " + spec + " --trace '?2 ?5 ?3 !9 stop'").status == 1);

  const Result a = run("sample " + spec + " --seed 4 --count 3");
  const Result b = run("sample " + spec + " --seed 4 --count 3");
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("test against an executable") {
  const std::string spec = writeTemp("sum2.spec", iospec::testing::kSumText);
  const Result ok = run("test " + spec + " --program " + IOSPEC_SUM_FIXTURE + " --tests 5 --quiescence 20");
  CHECK(ok.status == 0);
  CHECK(ok.out == "+++ OK, passed 5 tests.\n");

  const Result fail = run("test " + writeTemp("wrong.spec", "write { 1 }") + " --program " + IOSPEC_CHATTY_FIXTURE +
                          " --tests 5 --quiescence 20 --format machine");
  CHECK(fail.status == 1);
  CHECK(fail.out.rfind("verdict=falsified\n", 0) == 0);

  CHECK(run("test " + spec + " --program /nonexistent --tests 1").status == 2);
  CHECK(run("test " + spec + " --program " + IOSPEC_SUM_FIXTURE + " --tests 0").status == 2);
}
