#include "cli.hpp"

#include <catch_amalgamated.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using sae::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

int count_lines(const std::string &s) {
  return int(std::count(s.begin(), s.end(), '\n'));
}

fs::path temp_file(const std::string &name) {
  return fs::temp_directory_path() / ("sae_cli_test_" + name);
}

void write_file(const fs::path &p, const std::string &text) {
  std::ofstream(p) << text;
}

} // namespace

TEST_CASE("spectrum: hydrogen") {
  const auto r = call({"spectrum", "--model", "coulomb", "--Z", "1", "--lmax",
                       "0", "--nper", "3", "--fast"});
  REQUIRE(r.code == 0);
  CHECK(count_lines(r.out) == 4);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  for (int n = 1; n <= 3; ++n) {
    std::getline(in, line);
    CHECK(line.rfind("coulomb,1,,0," + std::to_string(n) + ",1s" +
                         std::to_string(n) + "s,", 0) == 0);
    // epsilon is the seventh field
    std::istringstream fields(line);
    std::string f;
    for (int i = 0; i < 7; ++i)
      std::getline(fields, f, ',');
    CHECK(std::abs(std::stod(f) + 0.5 / (n * n)) < 1e-9);
  }
}

TEST_CASE("spectrum: JSON output is parseable") {
  const auto r = call({"spectrum", "--model", "h2", "--lmax", "1", "--nper",
                       "2", "--fast", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.size() == 4);
  CHECK(j[0]["label"] == "1s1s");
  CHECK(j[0]["ref"] == -2.90372);
  CHECK(j[3]["label"] == "1s3p");
}

TEST_CASE("exit code contract") {
  CHECK(call({}).code == 2);
  CHECK(call({"spectrum", "--bogus"}).code == 2);
  const auto a = call({"spectrum", "--model", "h2", "--alpha", "1.5"});
  CHECK(a.code == 2);
  CHECK(a.err.find("(0, 1)") != std::string::npos);
  CHECK(call({"spectrum", "--model", "h9"}).code == 2);
  CHECK(call({"spectrum", "--knots", "cubic"}).code == 2);
  CHECK(call({"spectrum", "--nper", "0"}).code == 2);
  CHECK(call({"oracle", "--points", "0"}).code == 2);
  CHECK(call({"oracle", "--variant", "fk"}).code == 2);
  CHECK(call({"fit-alpha", "--bracket", "0.9,0.1"}).code == 2);
  CHECK(call({"fit-alpha", "--bracket", "0.3"}).code == 2);
  CHECK(call({"validate", "--rows", "L9"}).code == 2);
  CHECK(call({"spectrum", "--help"}).code == 0);
  const auto io = call({"spectrum", "--lmax", "0", "--nper", "1", "--fast",
                        "--output", "/nonexistent/dir/x.csv"});
  CHECK(io.code == 1);
}

TEST_CASE("config echo reproduces the run") {
  const std::vector<std::string> flags{"spectrum", "--model", "h1",  "--lmax",
                                       "2",        "--nper",  "2",   "--fast",
                                       "--alpha",  "0.3",     "--knots", "linear"};
  const auto direct = call(flags);
  REQUIRE(direct.code == 0);

  auto echo_flags = flags;
  echo_flags.push_back("--echo-config");
  const auto echo = call(echo_flags);
  REQUIRE(echo.code == 0);
  CHECK(echo.out.find("splines = 300") != std::string::npos);
  CHECK(echo.out.find("knots = linear") != std::string::npos);

  const auto cfg = temp_file("echo.cfg");
  write_file(cfg, echo.out);
  const auto again = call({"spectrum", "--config", cfg.string()});
  REQUIRE(again.code == 0);
  CHECK(again.out == direct.out);

  // the echo of the echo is a fixed point
  const auto echo2 = call({"spectrum", "--config", cfg.string(), "--echo-config"});
  CHECK(echo2.out == echo.out);
  fs::remove(cfg);
}

TEST_CASE("command-line flags override the config file") {
  const auto cfg = temp_file("override.cfg");
  write_file(cfg, "# test\nmodel = coulomb\nZ = 1   # hydrogen\nlmax = 0\n"
                  "nper = 2\nfast = true\n");
  const auto r = call({"spectrum", "--config", cfg.string(), "--nper", "3"});
  REQUIRE(r.code == 0);
  CHECK(count_lines(r.out) == 4);
  CHECK(r.out.find("coulomb,1,") != std::string::npos);

  write_file(cfg, "lmax = 0\nnonsense = 4\n");
  CHECK(call({"spectrum", "--config", cfg.string()}).code == 2);
  write_file(cfg, "lmax 0\n");
  CHECK(call({"spectrum", "--config", cfg.string()}).code == 2);
  write_file(cfg, "lmax = zero\n");
  CHECK(call({"spectrum", "--config", cfg.string()}).code == 2);
  CHECK(call({"spectrum", "--config", "/nonexistent.cfg"}).code == 2);
  fs::remove(cfg);
}

TEST_CASE("output is byte-identical across runs and backends") {
  const std::vector<std::string> flags{"spectrum", "--lmax", "2", "--nper",
                                       "3", "--fast"};
  const auto a = call(flags);
  const auto b = call(flags);
  CHECK(a.out == b.out);
  auto scalar = flags;
  scalar.insert(scalar.end(), {"--backend", "scalar"});
  const auto c = call(scalar);
  REQUIRE(c.code == 0);
  // summation order differs between backends, so compare numerically
  std::istringstream sa(a.out), sc(c.out);
  std::string la, lc;
  int rows = 0;
  std::getline(sa, la);
  std::getline(sc, lc);
  while (std::getline(sa, la) && std::getline(sc, lc)) {
    auto energy = [](const std::string &row) {
      std::istringstream fields(row);
      std::string f;
      for (int i = 0; i < 8; ++i)
        std::getline(fields, f, ',');
      return std::stod(f);
    };
    CHECK(std::abs(energy(la) - energy(lc)) < 1e-10);
    ++rows;
  }
  CHECK(rows == 9);
}

TEST_CASE("validate: row filter and sensitivity") {
  const auto r = call({"validate", "--rows", "L3", "--fast"});
  CHECK(r.code == 0);
  CHECK(r.out.find("5/5 H1 rows, 5/5 H2 rows match") != std::string::npos);

  const auto l0 = call({"validate", "--rows", "L0"});
  CHECK(l0.out.find("/5 H1 rows") != std::string::npos);
  CHECK(l0.out.find("5/5 H2 rows match") != std::string::npos);

  const auto perturbed = call({"validate", "--rows", "L0", "--alpha", "0.5"});
  CHECK(perturbed.code == 1);
  CHECK(perturbed.out.find("5/5 H2 rows") == std::string::npos);
}

TEST_CASE("oracle command") {
  const auto r = call({"oracle", "--Z", "2", "--rmin", "0.1", "--rmax", "10",
                       "--points", "50", "--variant", "both"});
  REQUIRE(r.code == 0);
  CHECK(count_lines(r.out) == 51);
  CHECK(r.out.rfind("r,numeric_fi,numeric_fj,zeta_h1,series_k1,err_fi_vs_h1", 0) == 0);

  const auto fi = call({"oracle", "--points", "3", "--variant", "fi"});
  REQUIRE(fi.code == 0);
  std::istringstream in(fi.out);
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  // numeric_fj column left empty
  CHECK(line.find(",,") != std::string::npos);
}

TEST_CASE("fit-alpha command") {
  const auto r = call({"fit-alpha", "--Z", "2", "--target", "-2.90372",
                       "--format", "json", "--no-confirm"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  const double a = j["alpha"];
  CHECK(a > 0.461);
  CHECK(a < 0.463);
  CHECK(j["evaluations"].get<int>() <= 60);
  CHECK(j["confirm_energy"].is_null());

  const auto text = call({"fit-alpha", "--no-confirm"});
  CHECK(text.code == 0);
  CHECK(text.out.rfind("alpha = 0.4613", 0) == 0);
}
