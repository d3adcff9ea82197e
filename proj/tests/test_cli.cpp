#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(KMS_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, got);
  const int status = pclose(f);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

int lines(const std::string& s) {
  int c = 0;
  for (char ch : s) c += ch == '\n';
  return c;
}

}  // namespace

TEST_CASE("spectrum subcommand") {
  const Run r = run("spectrum --n 5 --rho 1.5");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("n") == 5);
  CHECK(j.at("pairs").size() == 5);
  CHECK(std::abs(j.at("pairs")[1].at("lambda").get<double>() + 5.0) < 1e-9);
  CHECK(j.contains("classes"));

  const Run c = run("spectrum --n 3 --rho 2.8284271247461903i --format csv");
  CHECK(c.code == 0);
  CHECK(lines(c.out) == 4);
}

TEST_CASE("sweep subcommand") {
  const Run r = run("sweep --n 5 --rho-start 0 --rho-end 1.6 --steps 17");
  REQUIRE(r.code == 0);
  CHECK(lines(r.out) == 1 + 17 * 5);
  CHECK(r.out.rfind("rho_re,rho_im,k,", 0) == 0);
  CHECK(run("sweep --n 5 --rho-start 0 --rho-end 1.6 --steps 17").out == r.out);
}

TEST_CASE("other subcommands succeed") {
  CHECK(run("classify --n 5 --rho 0.5").code == 0);
  CHECK(run("double-locus --n 4 --type both").code == 0);
  CHECK(run("approx --n 10 --rho 3 --kind large").code == 0);
  CHECK(run("approx --n 10 --rho 0.98 --kind near-one").code == 0);
  const Run v = run("verify --level quick");
  CHECK(v.code == 0);
  CHECK(v.out.find("verify: all checks passed") != std::string::npos);
}

TEST_CASE("bench emits one row per order") {
  const Run r = run("bench --n-list 16,32,64");
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("n,t_structured_ms,t_oracle_ms,speedup", 0) == 0);
  CHECK(lines(r.out) == 4);
}

TEST_CASE("output file option") {
  const std::string path = "kms_cli_test_out.json";
  std::remove(path.c_str());
  REQUIRE(run("classify --n 2 --rho 0.3+0.4i --out " + path).code == 0);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(nlohmann::json::parse(ss.str()).at("classes").at("normal") == true);
  std::remove(path.c_str());
}

TEST_CASE("exit codes") {
  CHECK(run("spectrum --n 1 --rho 0.5").code == 1);
  CHECK(run("spectrum --n 5 --rho abc").code == 1);
  CHECK(run("spectrum --n 5").code == 1);
  CHECK(run("nonsense").code == 1);
  CHECK(run("spectrum --n 5 --rho 0.5 --tol 0.5").code == 1);
  CHECK(run("approx --n 5 --rho 0.5 --kind large").code == 1);
  CHECK(run("verify --inject-fault --seed 3").code == 3);
}
