#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

using json = nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

std::string binary() {
  const char* p = std::getenv("EXPG_BIN");
  REQUIRE_MESSAGE(p != nullptr, "EXPG_BIN must point at the CLI binary");
  return p;
}

RunResult run(const std::string& args) {
  RunResult r;
  std::string cmd = binary() + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  while (std::fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("fit: embedded data, fixed lambda, JSON report") {
  RunResult r = run("fit --family weibull --fix-lambda 0");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["n"] == 100);
  CHECK(j["converged"] == true);
  CHECK(j["lambda_fixed"] == true);
  CHECK(double(j["loglik"]) == doctest::Approx(-459.09987).epsilon(1e-6));
  CHECK(double(j["estimates"]["alpha"]) ==
        doctest::Approx(5.979).epsilon(1e-3));
  CHECK(double(j["estimates"]["beta"]) ==
        doctest::Approx(143.315).epsilon(1e-3));
  CHECK(j.contains("std_errors"));
  CHECK(j.contains("ci"));
  CHECK(j.contains("iterations"));
}

TEST_CASE("fit: free lambda") {
  RunResult r = run("fit --family weibull");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["lambda_fixed"] == false);
  CHECK(double(j["loglik"]) == doctest::Approx(-452.0422).epsilon(1e-5));
  CHECK(double(j["estimates"]["lambda"]) ==
        doctest::Approx(-10.884).epsilon(1e-3));
}

TEST_CASE("fit: CSV file with comments and comma-separated rows") {
  const char* path = "/tmp/expg_cli_data.csv";
  {
    std::ofstream f(path);
    f << "# toy sample\n0.5, 1.25\n\n2.0\n1.0 # trailing comment\n";
  }
  RunResult r = run(std::string("fit --family weibull --fix-lambda 0 --data ") +
                    path);
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["n"] == 4);
  std::remove(path);
}

TEST_CASE("input errors exit with code 1 and a diagnostic") {
  {
    std::ofstream f("/tmp/expg_cli_bad.csv");
    f << "1.0\nnope\n";
  }
  RunResult r = run("fit --data /tmp/expg_cli_bad.csv");
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("line 2") != std::string::npos);
  std::remove("/tmp/expg_cli_bad.csv");

  {
    std::ofstream f("/tmp/expg_cli_empty.csv");
    f << "# nothing here\n";
  }
  RunResult r2 = run("fit --data /tmp/expg_cli_empty.csv");
  CHECK(r2.exit_code == 1);
  CHECK(r2.out.find("no observations") != std::string::npos);
  std::remove("/tmp/expg_cli_empty.csv");

  CHECK(run("fit --data /tmp/expg_cli_missing.csv").exit_code == 1);
  CHECK(run("moments --family cauchy").exit_code == 1);
  CHECK(run("moments --family weibull --theta 1").exit_code == 1);
  CHECK(run("curves --quantity pdf --grid oops").exit_code == 1);
  CHECK(run("").exit_code == 1);  // a subcommand is required
}

TEST_CASE("test subcommand reports stat/df/p_value") {
  for (std::string stat : {"lr", "wald", "score"}) {
    RunResult r = run("test --family weibull --stat " + stat);
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["stat"] == stat);
    CHECK(j["df"] == 1);
    CHECK(double(j["value"]) > 0.0);
    CHECK(double(j["p_value"]) > 0.0);
    CHECK(double(j["p_value"]) < 1.0);
  }
  RunResult r = run("test --stat lr");
  json j = json::parse(r.out);
  CHECK(double(j["value"]) == doctest::Approx(14.1154).epsilon(1e-4));
  CHECK(run("test --stat banana").exit_code == 1);
}

TEST_CASE("moments subcommand carries route and tolerance metadata") {
  RunResult r = run("moments --family beta --theta 2,3 --lambda 1 --order 4");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  REQUIRE(j["raw"].size() == 4);
  for (const auto& e : j["raw"]) {
    CHECK(e.contains("route"));
    CHECK(e.contains("roundoff"));
    CHECK(double(e["value"]) ==
          doctest::Approx(double(e["quadrature"])).epsilon(1e-6));
  }
  CHECK(j["central"].contains("mean"));
  CHECK(j["central"].contains("variance"));
  CHECK(j["central"].contains("skewness"));
  CHECK(j["central"].contains("kurtosis"));
}

TEST_CASE("entropy subcommand") {
  RunResult r = run("entropy --family weibull --theta 1,1 --lambda 1");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(double(j["entropy"]) == doctest::Approx(0.7263365).epsilon(1e-6));
  CHECK(double(j["C2"]) == doctest::Approx(0.4180233).epsilon(1e-6));
  CHECK(double(j["kl_expg_vs_base"]["closed_form"]) ==
        doctest::Approx(0.0406519).epsilon(1e-5));
  CHECK(double(j["kl_base_vs_expg"]["closed_form"]) ==
        doctest::Approx(double(j["kl_base_vs_expg"]["quadrature"]))
            .epsilon(1e-8));
}

TEST_CASE("sample subcommand is seeded and line-oriented") {
  std::string args = "sample --family weibull --theta 2,1.5 --lambda 1 -n 5 "
                     "--seed 9";
  RunResult a = run(args);
  RunResult b = run(args);
  RunResult c = run("sample --family weibull --theta 2,1.5 --lambda 1 -n 5 "
                    "--seed 10");
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
  int lines = 0;
  for (char ch : a.out) lines += (ch == '\n');
  CHECK(lines == 5);
}

TEST_CASE("curves subcommand emits TSV") {
  RunResult r = run(
      "curves --family weibull --theta 2,1.5 --lambda 1 --quantity hazard "
      "--grid 0.5:1.5:0.5");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.rfind("x\thazard", 0) == 0);
  int lines = 0;
  for (char ch : r.out) lines += (ch == '\n');
  CHECK(lines == 4);  // header + three grid points

  RunResult s = run(
      "curves --family weibull --theta 2,1.5 --quantity skewness "
      "--lambda-grid -1:1:1");
  REQUIRE(s.exit_code == 0);
  CHECK(s.out.rfind("lambda\tskewness", 0) == 0);

  CHECK(run("curves --quantity skewness --grid 0:1:0.5").exit_code == 1);
}

TEST_CASE("demo subcommand bundles fits, tests, and the density table") {
  RunResult r = run("demo");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["dataset"]["n"] == 100);
  CHECK(j["weibull_fit"]["lambda_fixed"] == true);
  CHECK(j["exp_weibull_fit"]["lambda_fixed"] == false);
  for (std::string t : {"lr", "wald", "score"})
    CHECK(j["tests"].contains(t));
  REQUIRE(j["density_table"].size() > 0);
  const auto& first = j["density_table"][0];
  CHECK(double(first["x"]) == doctest::Approx(60.0));
  const auto& last = j["density_table"].back();
  CHECK(double(last["x"]) == doctest::Approx(220.0));
}
