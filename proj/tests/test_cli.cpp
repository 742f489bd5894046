#include <doctest.h>

#include <array>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

// NSD_CLI_PATH is injected by the build; these tests drive the real binary.
// Reference strings: K4 = "C~", C5 = "Dhc", P3 = "Bg", K1,6 = "FsaC?".

namespace {

std::string temp_path() {
  static std::atomic<int> counter{0};
  return (std::filesystem::temp_directory_path() /
          ("nsd_cli_test_" + std::to_string(::getpid()) + "_" +
           std::to_string(counter.fetch_add(1))))
      .string();
}

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args, const std::string& stdin_text = "") {
  std::string in_file = temp_path();
  {
    std::ofstream f(in_file);
    f << stdin_text;
  }
  std::string cmd = std::string(NSD_CLI_PATH) + " " + args + " < " + in_file +
                    " 2>/dev/null";
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    res.out.append(buf.data(), got);
  int status = pclose(pipe);
  res.exit_code = WEXITSTATUS(status);
  std::filesystem::remove(in_file);
  return res;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

std::string write_temp(const std::string& content) {
  std::string path = temp_path();
  std::ofstream f(path);
  f << content;
  return path;
}

}  // namespace

TEST_CASE("cli mad") {
  auto res = run("mad -", "C~\nDhc\nD?{\n");
  CHECK(res.exit_code == 0);
  CHECK(contains(res.out, "RESULT mad C~ mad=3/1 lt3=false"));
  CHECK(contains(res.out, "RESULT mad Dhc mad=2/1 lt3=true"));
  // "D?{" is the 4-edge star on 5 vertices: mad = 8/5
  CHECK(contains(res.out, "RESULT mad D?{ mad=8/5 lt3=true"));

  SUBCASE("empty input exits 0 with empty report") {
    auto empty = run("mad -", "");
    CHECK(empty.exit_code == 0);
    CHECK(empty.out.empty());
  }
  SUBCASE("malformed lines reported, processing continues, exit 2") {
    auto bad = run("mad -", "C~\n!!!\nC~\n");
    CHECK(bad.exit_code == 2);
    size_t first = bad.out.find("RESULT mad C~");
    size_t second = bad.out.rfind("RESULT mad C~");
    CHECK(first != std::string::npos);
    CHECK(second != first);
  }
}

TEST_CASE("cli check verdicts") {
  SUBCASE("star colored 1..6 is proper and nsd") {
    std::string col = write_temp("0 1 1\n0 2 2\n0 3 3\n0 4 4\n0 5 5\n0 6 6\n");
    auto res = run("check FsaC? " + col);
    std::filesystem::remove(col);
    CHECK(res.exit_code == 0);
    CHECK(contains(res.out, "proper=true nsd=true"));
  }
  SUBCASE("an isolated edge always conflicts") {
    std::string col = write_temp("0 1 1\n");
    auto res = run("check A_ " + col);
    std::filesystem::remove(col);
    CHECK(res.exit_code == 1);
    CHECK(contains(res.out, "proper=true nsd=false"));
  }
  SUBCASE("improper coloring of P3") {
    std::string bad = write_temp("0 1 1\n1 2 1\n");
    auto res = run("check Bg " + bad);
    std::filesystem::remove(bad);
    CHECK(res.exit_code == 1);
    CHECK(contains(res.out, "proper=false"));
  }
  SUBCASE("edge mismatch is a usage error") {
    std::string bad = write_temp("0 2 1\n");
    auto res = run("check A_ " + bad);
    std::filesystem::remove(bad);
    CHECK(res.exit_code == 2);
  }
}

TEST_CASE("cli color, check and chi-sum round trip") {
  auto gen = run("generate --count 2 --seed 5 --min-n 9 --max-n 14 --delta 6");
  REQUIRE(gen.exit_code == 0);
  std::string first_line = gen.out.substr(0, gen.out.find('\n'));
  REQUIRE(!first_line.empty());

  auto colored = run("color -", gen.out);
  CHECK(colored.exit_code == 0);
  CHECK(contains(colored.out, "RESULT color"));
  CHECK(contains(colored.out, "nsd=true"));
  CHECK(!contains(colored.out, "nsd=false"));

  // the 'u v c' block after the first RESULT line feeds back into check
  size_t start = colored.out.find("RESULT color " + first_line);
  REQUIRE(start != std::string::npos);
  start = colored.out.find('\n', start) + 1;
  size_t end = colored.out.find("RESULT", start);
  std::string block = colored.out.substr(
      start, end == std::string::npos ? std::string::npos : end - start);
  std::string col_file = write_temp(block);
  auto check = run("check " + first_line + " " + col_file);
  std::filesystem::remove(col_file);
  CHECK(check.exit_code == 0);
  CHECK(contains(check.out, "proper=true nsd=true"));
}

TEST_CASE("cli color skips out-of-scope graphs with reasons") {
  auto res = run("color -", "Dhc\n");
  CHECK(contains(res.out, "reason=delta<6"));
  CHECK(res.exit_code == 0);  // skips are not failures
}

TEST_CASE("cli chi-sum requires a budget and solves C5") {
  auto no_budget = run("chi-sum -", "Dhc\n");
  CHECK(no_budget.exit_code == 2);
  auto res = run("chi-sum --budget 10000000 --quiet -", "Dhc\n");
  CHECK(res.exit_code == 0);
  CHECK(contains(res.out, "k=5"));
}

TEST_CASE("cli find-configs and discharge") {
  auto fc = run("find-configs --all -", "C~\n");
  CHECK(fc.exit_code == 0);
  CHECK(contains(fc.out, "count=0"));

  auto star = run("find-configs -", "FsaC?\n");
  CHECK(contains(star.out, "C8 k=6 roles: v=0"));

  auto dis = run("discharge -", "C~\n");
  CHECK(dis.exit_code == 0);
  CHECK(contains(dis.out, "ghost=pass"));

  auto dis_star = run("discharge -", "FsaC?\n");
  CHECK(contains(dis_star.out, "ghost=fail vertex=0 reason=V1-negative"));
}

TEST_CASE("cli verify-theorem is deterministic and clean") {
  std::string args = "verify-theorem --count 6 --max-n 16 --seed 11";
  auto a = run(args);
  auto b = run(args);
  CHECK(a.exit_code == 0);
  CHECK(contains(a.out, "failures=0"));
  // deterministic up to the trailing elapsed-time field
  auto strip = [](const std::string& s) {
    return s.substr(0, s.rfind(" elapsed="));
  };
  CHECK(strip(a.out) == strip(b.out));
}
