#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "test_util.hpp"

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code;
  std::string output;
};

const char* cli_path() { return std::getenv("TBECHART_CLI_BIN"); }

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(cli_path()) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof(buf), pipe)) output.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

fs::path make_temp_dir() {
  fs::path dir = fs::temp_directory_path() / "tbechart_cli_test";
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return text;
}

}  // namespace

TEST_CASE("cli requires the binary path from the environment") {
  REQUIRE_MESSAGE(cli_path() != nullptr,
                  "set TBECHART_CLI_BIN to the tbechart binary (ctest does)");
}

TEST_CASE("design prints limits and validates flags") {
  const RunResult ok = run_cli("design --alpha 0.0027 --eta 1 --beta 1");
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("LCL") != std::string::npos);
  CHECK(ok.output.find("0.001350912071") != std::string::npos);

  CHECK(run_cli("design --alpha 1.5 --eta 1 --beta 1").exit_code == 1);
  CHECK(run_cli("design --eta 1").exit_code == 1);
  CHECK(run_cli("design --bogus-flag 1").exit_code == 1);
}

TEST_CASE("design from a Phase I file doubles the exponential limits") {
  const fs::path dir = make_temp_dir();
  write_file(dir / "phase1.csv", "# phase I data\n1\n2\n3\n");
  const RunResult res = run_cli("design --alpha 0.0027 --eta 1 --phase1 " +
                                (dir / "phase1.csv").string() + " --format json");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("\"beta_hat\": 2.0") != std::string::npos);
  CHECK(res.output.find("\"source\": \"estimated\"") != std::string::npos);
}

TEST_CASE("eval reports known-case performance") {
  const RunResult res = run_cli("eval --case k --delta1 1 --delta2 1 --format json");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("370.370370") != std::string::npos);

  const RunResult shifted = run_cli("eval --case k --delta1 2 --eta 1");
  CHECK(shifted.exit_code == 0);
  CHECK(shifted.output.find("26.7254") != std::string::npos);

  CHECK(run_cli("eval --case u").exit_code == 1);  // missing --m
}

TEST_CASE("eval estimated case prints the analytic summary") {
  const RunResult res = run_cli("eval --case u --m 30 --alpha 0.0027");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("340.92") != std::string::npos);  // ECARL
  CHECK(res.output.find("0.52") != std::string::npos);    // EPC
}

TEST_CASE("monitor round-trips a stored design and sets exit codes") {
  const fs::path dir = make_temp_dir();
  const fs::path design = dir / "design.json";
  const RunResult d =
      run_cli("design --alpha 0.0027 --eta 1 --beta 1 --format json --out " +
              design.string());
  REQUIRE(d.exit_code == 0);
  const std::string stored = slurp(design);
  CHECK(stored.find("\"ucl\"") != std::string::npos);

  write_file(dir / "calm.csv", "1.0\n2.0\n0.5\n");
  const RunResult calm = run_cli("monitor --design " + design.string() + " --data " +
                                 (dir / "calm.csv").string());
  CHECK(calm.exit_code == 0);
  CHECK(calm.output.find("no signal") != std::string::npos);

  write_file(dir / "loud.csv", "1.0\n7.0\n");
  const RunResult loud = run_cli("monitor --design " + design.string() + " --data " +
                                 (dir / "loud.csv").string() + " --format json");
  CHECK(loud.exit_code == 2);
  CHECK(loud.output.find("\"first_signal\": 2") != std::string::npos);
  CHECK(loud.output.find("above_ucl") != std::string::npos);

  write_file(dir / "bad.csv", "1.0\nnot-a-number\n");
  CHECK(run_cli("monitor --design " + design.string() + " --data " +
                (dir / "bad.csv").string())
            .exit_code == 1);
}

TEST_CASE("table1 is deterministic for a fixed seed") {
  const fs::path dir = make_temp_dir();
  const std::string args = "table1 --m 30 --reps 1000 --seed 7 --format csv --out ";
  REQUIRE(run_cli(args + (dir / "a.csv").string()).exit_code == 0);
  REQUIRE(run_cli(args + (dir / "b.csv").string()).exit_code == 0);
  const std::string a = slurp(dir / "a.csv");
  CHECK(!a.empty());
  CHECK(a == slurp(dir / "b.csv"));
  CHECK(a.rfind("eta0,beta0,m,acarl", 0) == 0);
}

TEST_CASE("table1 accepts a config file") {
  const fs::path dir = make_temp_dir();
  write_file(dir / "study.json", R"({
    "alpha0": 0.0027,
    "param_grid": [[1.0, 1.0]],
    "m_list": [10, 20],
    "replications": 200,
    "seed": 11
  })");
  const RunResult res =
      run_cli("table1 --config " + (dir / "study.json").string() + " --format csv");
  CHECK(res.exit_code == 0);
  // header + two rows
  CHECK(std::count(res.output.begin(), res.output.end(), '\n') == 3);

  write_file(dir / "broken.json", "{\"alpha0\": 2}");
  CHECK(run_cli("table1 --config " + (dir / "broken.json").string()).exit_code == 1);
}

TEST_CASE("adjust reports the solution and distinguishes infeasibility") {
  const RunResult res =
      run_cli("adjust --m 30 --criterion ecarl --target 370.4 --format json");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("\"alpha_adj\": 0.00248") != std::string::npos);

  const RunResult infeasible =
      run_cli("adjust --m 30 --criterion sdcarl --epsilon 0.001");
  CHECK(infeasible.exit_code == 3);

  CHECK(run_cli("adjust --criterion ecarl").exit_code == 1);  // missing --m
}
