#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  std::string out;
  int status = -1;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(MADER_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

}  // namespace

TEST_CASE("invert on R^3 reports the reconstruction") {
  const Run r = run("invert --space euclidean --n 3 --k 2 --theorem 1 --phantom gaussian");
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["estimate"].get<double>() - 1.0) < 1e-3);
  CHECK(j["truth"].get<double>() == 1.0);
  CHECK(j["derivative_order"] == 3);
}

TEST_CASE("constants for R^2, k = 1") {
  const Run r = run("constants --space euclidean --n 2 --k 1");
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["d_tilde_X"].get<double>() - 4 * 3.14159265358979323846) < 1e-12);
}

TEST_CASE("lemma-verify succeeds") {
  const Run r = run("lemma-verify");
  CHECK(r.status == 0);
  CHECK(r.out.find(',') != std::string::npos);
}

TEST_CASE("usage errors exit 1") {
  CHECK(run("invert --space torus").status == 1);
  CHECK(run("invert --grid-h -1").status == 1);
  CHECK(run("no-such-command").status == 1);
  CHECK(run("invert --space euclidean --n 2 --k 1 --theorem 2").status == 1);
}

TEST_CASE("reruns are byte-identical") {
  const std::string args = "--seed 3 crosscheck --space euclidean --n 2 --k 1 --mc-samples 500";
  const Run a = run(args);
  const Run b = run(args);
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
}
