#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = fts::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string config(const char* name) { return std::string(FTS_CONFIG_DIR) + "/" + name; }

}  // namespace

TEST_CASE("forward with an explicit p") {
  const auto r = run({"forward", "--config", config("example1_forward.json"), "--x", "0.5", "--t", "0.05"});
  CHECK(r.code == 0);
  CHECK(r.out == "1.4190675\n");
}

TEST_CASE("forward with recovery") {
  const auto r = run({"forward", "--config", config("example1.json"), "--x", "0.5", "--t", "0.05", "--invert"});
  CHECK(r.code == 0);
  CHECK(r.out == "1.4190675\n");
}

TEST_CASE("forward on constant data prints the constant") {
  for (const char* t : {"0", "0.4", "1"}) {
    const auto r = run({"forward", "--config", config("constant.json"), "--x", "0.3", "--t", t});
    CHECK(r.code == 0);
    CHECK(r.out == "2.5\n");
  }
}

TEST_CASE("forward without p and without --invert is a config error") {
  const auto r = run({"forward", "--config", config("example1.json"), "--x", "0.5", "--t", "0.05"});
  CHECK(r.code == 2);
  CHECK(r.err.find("p") != std::string::npos);
}

TEST_CASE("alpha = 0 is rejected") {
  const auto r = run({"forward", "--config", config("alpha_zero.json"), "--x", "0.5", "--t", "0.1", "--invert"});
  CHECK(r.code == 2);
  CHECK(r.err.find("alpha") != std::string::npos);
}

TEST_CASE("missing config file") {
  CHECK(run({"invert", "--config", config("does_not_exist.json")}).code == 2);
}

TEST_CASE("invert Example 1") {
  const auto r = run({"invert", "--config", config("example1.json")});
  CHECK(r.code == 0);
  CHECK(r.out.find("mode: separable") != std::string::npos);
  CHECK(r.out.find("lambda: 2\n") != std::string::npos);
  CHECK(r.out.find("  2                  -8                  -4\n") != std::string::npos);
  CHECK(r.out.find("forward_residual:") != std::string::npos);
}

TEST_CASE("invert Example 2") {
  const auto r = run({"invert", "--config", config("example2.json")});
  CHECK(r.code == 0);
  CHECK(r.out.find("  0                   1                   1\n") != std::string::npos);
  CHECK(r.out.find("  1                  -6                  -6\n") != std::string::npos);
  CHECK(r.out.find("  4                -216                  -9\n") != std::string::npos);
}

TEST_CASE("truncation overrides apply") {
  const auto r = run({"invert", "--config", config("example1.json"), "--kmax", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("  3  ") == std::string::npos);
}

TEST_CASE("non-separable data") {
  const auto sep = run({"invert", "--config", config("nonseparable.json"), "--mode", "separable"});
  CHECK(sep.code == 3);
  CHECK(sep.err.find("separab") != std::string::npos);
  const auto aut = run({"invert", "--config", config("nonseparable.json")});
  CHECK(aut.out.find("mode: newton") != std::string::npos);
}

TEST_CASE("Newton non-convergence exits 4 and still prints the report") {
  const auto r = run({"invert", "--config", config("inconsistent.json"), "--mode", "newton"});
  CHECK(r.code == 4);
  CHECK(r.out.find("converged: false") != std::string::npos);
}

TEST_CASE("table defaults to the 3x3 grid") {
  const auto r = run({"table", "--example", "1"});
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,exact,\"E(1,1)\",\"E(1,0.9)\",\"E(1,0.7)\",\"E(0.9,1)\",\"E(0.9,0.9)\",\"E(0.9,0.7)\",\"E(0.7,1)\",\"E(0.7,0.9)\",\"E(0.7,0.7)\"");
}

TEST_CASE("table argument errors") {
  CHECK(run({"table", "--example", "1", "--rows", "0"}).code == 2);
  CHECK(run({"table", "--example", "3"}).code == 2);
  CHECK(run({"table", "--alphas", "1,abc"}).code == 2);
  CHECK(run({"table", "--alphas", "1.5"}).code == 2);
  CHECK(run({"table", "--format", "xml"}).code == 2);
  CHECK(run({"table", "--example", "1", "--config", config("example1_forward.json")}).code == 2);
}

TEST_CASE("table from a custom config") {
  const auto r = run({"table", "--config", config("example1_forward.json"), "--alphas", "1", "--betas", "1",
                      "--rows", "2", "--format", "text"});
  CHECK(r.code == 0);
  CHECK(r.out.find("E(1,1)") != std::string::npos);
}

TEST_CASE("--output writes a file") {
  const auto path = std::filesystem::temp_directory_path() / "fts_cli_output_test.csv";
  std::filesystem::remove(path);
  const auto r = run({"table", "--example", "2", "--alphas", "1", "--betas", "1", "--rows", "3", "--output", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream body;
  body << in.rdbuf();
  CHECK(body.str().rfind("t,exact,\"E(1,1)\"\n0.005,", 0) == 0);
  std::filesystem::remove(path);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"forward", "--x", "0.5", "--t", "0.1"}).code == 2);
  const auto help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("selfcheck") != std::string::npos);
}

TEST_CASE("selfcheck passes") {
  const auto r = run({"selfcheck"});
  CHECK(r.code == 0);
  CHECK(r.out.find("[FAIL]") == std::string::npos);
}
