// End-to-end checks of the command-line tool. argv[1] is the path to the
// rsmatch-cli binary (wired up by CMake).
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

std::string g_cli;

struct CmdResult {
  int exit_code{-1};
  std::string output;  // stdout + stderr
};

CmdResult run_cli(const std::string& args) {
  const std::string cmd = g_cli + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CmdResult result;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) result.output.append(buf.data(), got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string strip_timing(const std::string& text) {
  json j = json::parse(text);
  if (j.contains("wall_ms")) j.erase("wall_ms");
  if (j.contains("aggregate") && j["aggregate"].contains("wall_time_ms"))
    j["aggregate"].erase("wall_time_ms");
  return j.dump();
}

}  // namespace

TEST_CASE("gen then run pipeline") {
  const std::string graph_path = "/tmp/rsm_cli_c5.el";
  CHECK(run_cli("gen --kind cycle --n 5 --out " + graph_path).exit_code == 0);

  std::ifstream in(graph_path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "5 5");

  const CmdResult run = run_cli("run --input " + graph_path +
                                " --epsilon 0.3 --beta 16 --lambda 0.1 --seed 1 --fallback-cap 0");
  CHECK(run.exit_code == 0);
  const json report = json::parse(run.output);
  CHECK(report["matching_size"] == 2);
  CHECK(report["fallback_used"] == false);
  std::remove(graph_path.c_str());
}

TEST_CASE("usage errors exit 2") {
  const CmdResult bad_eps = run_cli("run --gen-kind cycle --n 5 --epsilon 0.6");
  CHECK(bad_eps.exit_code == 2);
  CHECK(bad_eps.output.find("epsilon must be < 1/2") != std::string::npos);

  CHECK(run_cli("run --epsilon 0.3").exit_code == 2);                    // no input
  CHECK(run_cli("nonsense").exit_code == 2);                             // unknown subcommand
  CHECK(run_cli("gen --kind no-such-kind --n 4").exit_code == 2);
  CHECK(run_cli("bench --gen-kind cycle --n 5 --format yaml").exit_code == 2);
}

TEST_CASE("bench twice is byte-identical modulo timing") {
  const std::string flags =
      "bench --gen-kind bipartite-planted --n 32 --avg-deg 4 --gen-seed 9 "
      "--epsilon 0.3 --beta 16 --lambda 0.1 --trials 5 --seed 2";
  const CmdResult a = run_cli(flags);
  const CmdResult b = run_cli(flags);
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  CHECK(strip_timing(a.output) == strip_timing(b.output));

  const CmdResult csv = run_cli(flags + " --format csv");
  REQUIRE(csv.exit_code == 0);
  CHECK(csv.output.starts_with("trial,seed,matching_size"));
}

TEST_CASE("run twice is byte-identical modulo timing") {
  const std::string flags =
      "run --gen-kind erdos-renyi --n 40 --avg-deg 6 --gen-seed 3 "
      "--epsilon 0.3 --beta 8 --lambda 0.15 --seed 4 --fallback-cap 0";
  const CmdResult a = run_cli(flags);
  const CmdResult b = run_cli(flags);
  REQUIRE(a.exit_code == 0);
  CHECK(strip_timing(a.output) == strip_timing(b.output));
}

TEST_CASE("verify checks dumps and matchings from a run") {
  const std::string graph_path = "/tmp/rsm_cli_verify.el";
  const std::string dump_path = "/tmp/rsm_cli_verify.dump";
  const std::string matching_path = "/tmp/rsm_cli_verify.matching";
  CHECK(run_cli("gen --kind general-planted --n 24 --avg-deg 5 --seed 6 --out " + graph_path)
            .exit_code == 0);

  const CmdResult run = run_cli("run --input " + graph_path +
                                " --epsilon 0.3 --beta 8 --lambda 0.15 --seed 2 --fallback-cap 0 "
                                "--dump-h " + dump_path);
  REQUIRE(run.exit_code == 0);
  const json report = json::parse(run.output);

  // write the matching as an edge list and verify both artifacts offline
  {
    std::ofstream out(matching_path);
    for (const auto& e : report["matching"]) out << e[0] << ' ' << e[1] << '\n';
  }
  const CmdResult verify = run_cli("verify --graph " + graph_path + " --dump " + dump_path +
                                   " --beta 8 --lambda 0.15 --matching " + matching_path);
  CHECK(verify.exit_code == 0);
  const json vreport = json::parse(verify.output);
  CHECK(vreport["ok"] == true);
  CHECK(vreport["dump"]["phi2x_ok"] == true);
  CHECK(vreport["matching"]["ok"] == true);

  // handing the whole graph in as a matching must fail with exit 1
  const CmdResult broken = run_cli("verify --graph " + graph_path + " --matching " + graph_path);
  CHECK(broken.exit_code == 1);

  std::remove(graph_path.c_str());
  std::remove(dump_path.c_str());
  std::remove(matching_path.c_str());
}

TEST_CASE("concentration subcommand") {
  const CmdResult ok = run_cli(
      "concentration --gen-kind bipartite-planted --n 200 --avg-deg 4 --gen-seed 4 "
      "--epsilon 0.3 --trials 5 --seed 1");
  CHECK(ok.exit_code == 0);
  CHECK(json::parse(ok.output)["pass_fraction"] == 1.0);
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <path-to-rsmatch-cli>\n");
    return 1;
  }
  g_cli = argv[1];
  doctest::Context ctx;
  return ctx.run();
}
