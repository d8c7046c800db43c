#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = fracops::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) v.push_back(l);
  return v;
}

std::string temp_path(const std::string& name) { return "fracops_cli_test_" + name; }

}  // namespace

TEST_CASE("eval of the torsion field") {
  const Result r = run({"eval", "field=ball_torsion", "s=0.5", "n=1", "x=0", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 1);
  const auto rec = nlohmann::json::parse(rows[0]);
  CHECK(std::abs(rec["value"].get<double>() - 1.0) < 1e-3);
  CHECK(rec.contains("err_est"));
}

TEST_CASE("csv tables carry a header and an error column") {
  const Result r = run({"heat", "s=0.5", "x=-1:1:5"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == "x,p,err_est");
  const Result sym = run({"symbol", "s=0.3", "xi=1;2"});
  REQUIRE(sym.code == 0);
  CHECK(lines(sym.out)[0] == "xi,symbol,err_est,ratio");
}

TEST_CASE("walk on spheres example and byte-identical reruns") {
  const std::vector<std::string> args{"wos", "domain=ball", "s=0.5", "g=shifted_halfspace", "x=0", "samples=100000",
                                      "seed=7", "--format", "json"};
  const Result a = run(args), b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto rec = nlohmann::json::parse(lines(a.out)[0]);
  CHECK(std::abs(rec["mean"].get<double>() - 1.0) < 4.0 * rec["stderr"].get<double>());
}

TEST_CASE("solve and obstacle outputs") {
  const Result s = run({"solve", "--s", "0.5", "--grid-n", "31", "f=1"});
  REQUIRE(s.code == 0);
  CHECK(lines(s.out).size() == 32);

  const std::string out = temp_path("obstacle.csv");
  const Result o = run({"obstacle", "s=0.5", "N=200", "--out", out});
  REQUIRE(o.code == 0);
  std::ifstream summary(out + ".summary.json");
  REQUIRE(summary.good());
  const auto js = nlohmann::json::parse(summary);
  CHECK(js["residual"].get<double>() < 1e-10);
  CHECK(js["contact_nodes"].get<int>() > 0);
  CHECK(js["fit_right"].contains("exponent"));
  summary.close();
  std::remove(out.c_str());
  std::remove((out + ".summary.json").c_str());
}

TEST_CASE("config file is overridden by flags") {
  const std::string cfg = temp_path("config.txt");
  {
    std::ofstream f(cfg);
    f << "# heat kernel\ns = 0.3\nx = 0\nformat = json\n";
  }
  const Result a = run({"heat", "--config", cfg});
  const Result b = run({"heat", "--config", cfg, "--s", "0.5"});
  std::remove(cfg.c_str());
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(nlohmann::json::parse(lines(b.out)[0])["p"].get<double>() == doctest::Approx(1.0 / 3.141592653589793));
  CHECK(a.out != b.out);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 1);
  CHECK(run({"bogus"}).code == 1);
  CHECK(run({"eval", "s=0.5"}).code == 1);
  CHECK(run({"eval", "s=0.5", "x=0", "colour=red"}).code == 1);
  CHECK(run({"eval", "s=0.5", "x=0", "field=nope"}).code == 1);
  CHECK(run({"eval", "s=1.5", "x=0"}).code == 1);
  CHECK(run({"heat", "s=0.5", "x=0", "--format", "xml"}).code == 1);
  CHECK(run({"heat", "--config", "/nonexistent/file", "s=0.5", "x=0"}).code == 1);
  const Result nc = run({"obstacle", "s=0.5", "N=256", "max_iterations=1", "tol=1e-30"});
  CHECK(nc.code == 2);
  const auto diag = nlohmann::json::parse(lines(nc.err).back());
  CHECK(diag["error"] == "nonconvergence");
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("verify reports each requested check") {
  const Result r = run({"verify", "checks=1,2", "--format", "json"});
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 2);
  bool all = true;
  for (const auto& row : rows) {
    const auto rec = nlohmann::json::parse(row);
    CHECK(rec.contains("measured"));
    all = all && rec["passed"].get<bool>();
  }
  CHECK(r.code == (all ? 0 : 3));
  CHECK(run({"verify", "checks=99"}).code == 1);
}
