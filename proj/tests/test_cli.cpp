#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "gspf/csvio.hpp"
#include "gspf/kernels.hpp"

#ifndef GSPF_CLI_PATH
#error "GSPF_CLI_PATH must name the gspf binary"
#endif
#ifndef GSPF_DATA_DIR
#error "GSPF_DATA_DIR must point at the bundled graph fixtures"
#endif

using namespace gspf;
namespace fs = std::filesystem;

namespace {

std::string scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "gspf-cli" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::string& args, const std::string& dir) {
  const std::string cmd = std::string("\"") + GSPF_CLI_PATH + "\" " + args + " > " + dir +
                          "/stdout.txt 2> " + dir + "/stderr.txt";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(dir + "/stdout.txt");
  r.err = slurp(dir + "/stderr.txt");
  return r;
}

std::vector<std::string> dir_files(const std::string& dir) {
  std::vector<std::string> names;
  for (const fs::directory_entry& e : fs::directory_iterator(dir))
    names.push_back(e.path().filename().string());
  std::sort(names.begin(), names.end());
  return names;
}

}  // namespace

TEST_CASE("cli design: uniform hann translates give a constant response") {
  const std::string dir = scratch("design-uniform");
  const RunResult r = run_cli(
      "design --graph path:64 --window hann --M 8 --R 3 --warp none --out " + dir + "/d",
      dir);
  CHECK(r.code == 0);
  CHECK(r.out.find("tight") != std::string::npos);

  const CsvTable response = read_csv(dir + "/d/response.csv");
  REQUIRE(response.columns.size() == 2);
  REQUIRE(response.rows.size() == 1001);
  for (const std::vector<double>& row : response.rows)
    CHECK(row[1] == doctest::Approx(9.0 / 8.0).epsilon(1e-12));

  // Provenance comments lead every artifact.
  REQUIRE(response.comments.size() >= 2);
  CHECK(response.comments[0] == "gspf design");
  CHECK(response.comments[1].rfind("config-hash ", 0) == 0);

  const FilterBank bank = load_bank(dir + "/d/bank.json");
  CHECK(bank.size() == 8);
  CHECK(bank.kind == BankKind::uniform);
  CHECK(bank.frame_constant == doctest::Approx(9.0 / 8.0));
  CHECK(dir_files(dir + "/d").size() == 10);  // bank + 8 kernels + response
}

TEST_CASE("cli design: translate overlap below the window order is refused") {
  const std::string dir = scratch("design-bad-r");
  const RunResult r = run_cli("design --graph path:64 --R 2 --out " + dir + "/d", dir);
  CHECK(r.code == 2);
  CHECK(r.err.find("2 < R <= M") != std::string::npos);
}

TEST_CASE("cli cdf: exact knots collapse the simple path spectrum") {
  const std::string dir = scratch("cdf-exact");
  const RunResult r =
      run_cli("cdf --graph path:64 --method exact --out " + dir + "/c", dir);
  CHECK(r.code == 0);
  const CsvTable knots = read_csv(dir + "/c/knots.csv");
  CHECK(knots.rows.size() == 64);
  CHECK(knots.rows.front()[0] == 0.0);
  CHECK(knots.rows.front()[1] == 0.0);
  CHECK(knots.rows.back()[1] == 1.0);
}

TEST_CASE("cli cdf: a single slice is refused") {
  const std::string dir = scratch("cdf-bad-q");
  const RunResult r =
      run_cli("cdf --graph path:64 --method sliced --Q 1 --out " + dir + "/c", dir);
  CHECK(r.code == 2);
}

TEST_CASE("cli cdf: sliced estimate brackets the spectrum with Q+1 knots") {
  const std::string dir = scratch("cdf-sliced");
  const std::string edges = std::string(GSPF_DATA_DIR) + "/roadnet2642.edges";
  const RunResult r = run_cli("cdf --graph " + edges +
                                  " --method sliced --Q 20 --lambda-upper 8.440662 --out " +
                                  dir + "/c",
                              dir);
  CHECK(r.code == 0);
  const CsvTable knots = read_csv(dir + "/c/knots.csv");
  REQUIRE(knots.rows.size() == 21);
  CHECK(knots.rows.front()[0] == 0.0);
  CHECK(knots.rows.front()[1] == 0.0);
  CHECK(knots.rows.back()[0] == doctest::Approx(8.440662));
  CHECK(knots.rows.back()[1] == 1.0);
}

TEST_CASE("cli analyze: demo emits per-filter maps deterministically") {
  const std::string dir = scratch("analyze-demo");
  const std::string config =
      "analyze --graph path:128 --demo --seed 7"
      " --band 0.05:0.6 --band 0.7:1.4 --band 1.5:2.3 --band 2.4:3.1 --band 3.2:3.9";
  const RunResult r1 = run_cli(config + " --out " + dir + "/a", dir);
  CHECK(r1.code == 0);
  CHECK(r1.out.find("tight") != std::string::npos);

  const std::vector<std::string> files = dir_files(dir + "/a");
  int filter_maps = 0;
  for (const std::string& name : files) filter_maps += name.rfind("filter_", 0) == 0;
  CHECK(filter_maps == 15);
  CHECK(std::count(files.begin(), files.end(), "clusters.csv") == 1);
  CHECK(std::count(files.begin(), files.end(), "coefficients.csv") == 1);
  CHECK(std::count(files.begin(), files.end(), "bank.json") == 1);

  // Same config and seed into a different directory: byte-identical artifacts.
  const RunResult r2 = run_cli(config + " --out " + dir + "/b", dir);
  CHECK(r2.code == 0);
  REQUIRE(dir_files(dir + "/b") == files);
  for (const std::string& name : files)
    CHECK(slurp(dir + "/a/" + name) == slurp(dir + "/b/" + name));
}

TEST_CASE("cli analyze: a missing signal file is an I/O failure naming the path") {
  const std::string dir = scratch("analyze-missing");
  const RunResult r = run_cli("analyze --graph path:64 --signal " + dir +
                                  "/nope.csv --bank " + dir + "/nope_bank --out " + dir +
                                  "/a",
                              dir);
  CHECK(r.code == 4);
  CHECK(r.err.find("nope.csv") != std::string::npos);
}

TEST_CASE("cli reproduce: unknown suite is a usage error") {
  const std::string dir = scratch("reproduce-bad");
  const RunResult r = run_cli("reproduce nonsense --out " + dir + "/r", dir);
  CHECK(r.code == 2);
  CHECK(r.err.find("unknown reproduction suite") != std::string::npos);
}

TEST_CASE("cli config file: flags win and unknown keys are rejected") {
  const std::string dir = scratch("config");
  {
    std::ofstream cfg(dir + "/cfg.ini");
    cfg << "[design]\ngraph=\"path:64\"\nM=6\n";
  }
  const RunResult r1 = run_cli(
      "design --config " + dir + "/cfg.ini --M 8 --out " + dir + "/flags", dir);
  CHECK(r1.code == 0);
  const std::vector<std::string> flag_files = dir_files(dir + "/flags");
  CHECK(std::count(flag_files.begin(), flag_files.end(), "kernel_08.csv") == 1);

  const RunResult r2 =
      run_cli("design --config " + dir + "/cfg.ini --out " + dir + "/cfgonly", dir);
  CHECK(r2.code == 0);
  const std::vector<std::string> cfg_files = dir_files(dir + "/cfgonly");
  CHECK(std::count(cfg_files.begin(), cfg_files.end(), "kernel_06.csv") == 1);
  CHECK(std::count(cfg_files.begin(), cfg_files.end(), "kernel_07.csv") == 0);

  {
    std::ofstream cfg(dir + "/bad.ini");
    cfg << "[design]\ngraph=\"path:64\"\nbogus_key=3\n";
  }
  const RunResult r3 =
      run_cli("design --config " + dir + "/bad.ini --out " + dir + "/bad", dir);
  CHECK(r3.code == 2);
}
