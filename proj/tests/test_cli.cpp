#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "pswitch/cli.hpp"
#include "pswitch/io/config.hpp"
#include "pswitch/io/csv.hpp"

using namespace pswitch;
namespace fs = std::filesystem;

namespace {

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv = {"pswitch"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  return cli_main(static_cast<int>(argv.size()), argv.data());
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("pswitch_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string str() const { return path.string(); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config text round-trips through emit and parse") {
  RunConfig c;
  c.model.drift = 0.05;
  c.model.sigma = 0.3;
  c.model.a1 = 1.0;
  c.model.lambda = 0.3;
  c.model.g12 = 0.4;
  c.model.g21 = -0.2;
  c.model.profit2 = ProfitSpec::saturating(1.0, 1.0);
  c.n_nodes = 201;
  c.paths.seed = 99;
  c.formats = {"csv", "json"};
  const std::string text = emit_config(c);
  const RunConfig back = parse_config(text);
  CHECK(emit_config(back) == text);
  CHECK(back.model.g21 == -0.2);
  CHECK(back.n_nodes == 201);
  CHECK(back.formats == std::vector<std::string>{"csv", "json"});
}

TEST_CASE("config rejects unknown keys with the line number") {
  try {
    parse_config("drift = 0.05\nsigma = 0.3\nnope = 1\n");
    FAIL("expected a parse error");
  } catch (const std::exception& e) {
    const std::string msg = e.what();
    CHECK(msg.find("nope") != std::string::npos);
    CHECK(msg.find("line 3") != std::string::npos);
  }
  CHECK_THROWS(parse_config("drift 0.05\n"));
  CHECK_THROWS(parse_config("sigma = abc\n"));
}

TEST_CASE("apply_override mirrors the file syntax") {
  RunConfig c;
  apply_override(c, "g12=1.5");
  apply_override(c, "profit2=saturating(1,1)");
  apply_override(c, "n_nodes=129");
  CHECK(c.model.g12 == 1.5);
  CHECK(c.model.profit2 == ProfitSpec::saturating(1.0, 1.0));
  CHECK(c.n_nodes == 129);
  CHECK_THROWS(apply_override(c, "whatever"));
  CHECK_THROWS(apply_override(c, "bogus_key=3"));
}

TEST_CASE("value table CSV round-trips byte for byte") {
  ValueTable t;
  t.x = {0.01, 1.0, 100.0};
  t.v1 = {0.0, 0.12345678901234567, 3.0};
  t.v2 = {0.3, -1.0 / 3.0, 2e-17};
  t.g1 = {1.5, 0.0, -0.25};
  t.g2 = {-1.4, 0.1, 0.35};
  t.in_s1 = {0, 0, 1};
  t.in_s2 = {1, 0, 0};
  const std::string text = to_csv(t);
  CHECK(text.rfind("x,v1,v2,G1,G2,in_S1,in_S2\n", 0) == 0);
  const ValueTable back = value_table_from_csv(text);
  CHECK(to_csv(back) == text);
  CHECK_THROWS(value_table_from_csv("x,v1\n1,2\n"));
}

TEST_CASE("cell table CSV round-trips and rejects unsafe cells") {
  CellTable t;
  t.header = {"policy", "mean"};
  t.rows = {{"never", csv_num(0.25)}, {"threshold(1;2)", csv_num(-1e-9)}};
  const std::string text = to_csv(t);
  const CellTable back = cells_from_csv(text);
  CHECK(to_csv(back) == text);
  CellTable bad;
  bad.header = {"a"};
  bad.rows = {{"x,y"}};
  CHECK_THROWS(to_csv(bad));
}

TEST_CASE("validate and classify exit codes") {
  CHECK(run_cli({"validate", "--preset", "P1"}) == 0);
  CHECK(run_cli({"validate", "--preset", "P1", "--set", "sigma=0"}) == 1);
  CHECK(run_cli({"classify", "--preset", "P3"}) == 0);
  CHECK(run_cli({"classify", "--preset", "no_such_preset"}) == 1);
  CHECK(run_cli({"wrong_subcommand"}) == 1);
  CHECK(run_cli({"validate", "--preset", "P1", "--config", "x.cfg"}) == 1);
}

TEST_CASE("solve writes round-trippable values and a summary") {
  TempDir dir;
  CHECK(run_cli({"solve", "--preset", "P4", "--set", "n_nodes=201",
                 "--out", dir.str()}) == 0);
  const std::string csv = slurp(dir.path / "values.csv");
  REQUIRE(!csv.empty());
  const ValueTable t = value_table_from_csv(csv);
  CHECK(to_csv(t) == csv);
  CHECK(t.rows() == 201);
  // Membership flags mirror the sign of the comparison functions.
  for (std::size_t k = 0; k < t.rows(); ++k) {
    CHECK(t.in_s1[k] == (t.g1[k] <= 0.0 ? 1 : 0));
    CHECK(t.in_s2[k] == (t.g2[k] <= 0.0 ? 1 : 0));
  }
  const std::string summary = slurp(dir.path / "summary.txt");
  CHECK(summary.find("case_predicted = 4") != std::string::npos);
  CHECK(summary.find("converged = 1") != std::string::npos);
}

TEST_CASE("solve grid errors exit with the configuration code") {
  TempDir dir;
  CHECK(run_cli({"solve", "--preset", "P1", "--set", "x_min=5",
                 "--set", "x_max=2", "--out", dir.str()}) == 1);
}

TEST_CASE("optional formats are written on demand") {
  TempDir dir;
  CHECK(run_cli({"solve", "--preset", "P5", "--set", "n_nodes=201", "--out",
                 dir.str(), "--format", "csv,json,svg"}) == 0);
  CHECK(fs::exists(dir.path / "values.csv"));
  CHECK(fs::exists(dir.path / "summary.json"));
  const std::string svg = slurp(dir.path / "regions.svg");
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(run_cli({"solve", "--preset", "P5", "--format", "bmp",
                 "--out", dir.str()}) == 1);
}

TEST_CASE("verify accepts every battery preset") {
  TempDir dir;
  for (const char* p : {"P1", "P2", "P3", "P4", "P5"})
    CHECK(run_cli({"verify", "--preset", p, "--set", "n_nodes=201",
                   "--out", dir.str()}) == 0);
}

TEST_CASE("sweep walks the exit reward across the case boundaries") {
  TempDir dir;
  CHECK(run_cli({"sweep", "--param", "g21", "--from", "-1.3", "--to", "0.3",
                 "--steps", "5", "--preset-base", "P1",
                 "--set", "n_nodes=201", "--out", dir.str()}) == 0);
  const CellTable t = cells_from_csv(slurp(dir.path / "sweep.csv"));
  REQUIRE(t.rows.size() == 5);
  CHECK(t.header[0] == "g21");
  CHECK(t.rows.front()[1] == "3");
  CHECK(t.rows.back()[1] == "1");
  bool saw_case2 = false;
  for (const auto& row : t.rows) saw_case2 |= row[1] == "2";
  CHECK(saw_case2);
  // Observed structure agreed at every step.
  for (const auto& row : t.rows) CHECK(row[1] == row[2]);
}

TEST_CASE("simulate writes the tournament table") {
  TempDir dir;
  CHECK(run_cli({"simulate", "--preset", "P5", "--set", "n_nodes=201",
                 "--set", "n_paths=2000", "--out", dir.str()}) == 0);
  const CellTable t = cells_from_csv(slurp(dir.path / "tournament.csv"));
  CHECK(t.header ==
        std::vector<std::string>{"policy", "mean", "se", "mean_diff",
                                 "se_diff", "mean_switches"});
  REQUIRE(t.rows.size() >= 5);
  CHECK(t.rows[0][0] == "optimal");
}
