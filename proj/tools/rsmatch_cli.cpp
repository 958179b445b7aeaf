// Command-line front end for the rsmatch shared library. Talks to the core
// exclusively through the C interface in rsmatch.h.
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rsmatch.h"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct GraphHandle {
  rsm_graph* g{nullptr};
  ~GraphHandle() { rsm_graph_free(g); }
};

struct OwnedString {
  char* s{nullptr};
  ~OwnedString() { rsm_string_free(s); }
};

int fail(int status) {
  std::cerr << "error: " << rsm_last_error() << " (" << rsm_status_name(status) << ")\n";
  return kExitUsage;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "error: cannot write " << out_path << "\n";
    std::exit(kExitUsage);
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open " << path << "\n";
    std::exit(kExitUsage);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct GraphSource {
  std::string input;
  std::string gen_kind;
  std::int64_t gen_n{0};
  std::optional<double> avg_degree;
  std::optional<double> edge_prob;
  std::optional<std::int64_t> gen_edges;
  std::uint64_t gen_seed{0};
  bool strict{false};
  std::string header{"auto"};

  void add_flags(CLI::App* cmd) {
    cmd->add_option("--input", input, "edge-list file to load");
    cmd->add_option("--gen-kind", gen_kind,
                    "generator: bipartite-planted|general-planted|erdos-renyi|path|cycle|clique");
    cmd->add_option("--n", gen_n, "generator vertex count");
    cmd->add_option("--avg-deg", [this](const CLI::results_t& r) {
      try { avg_degree = std::stod(r[0]); } catch (...) { return false; }
      return true;
    }, "generator target average degree");
    cmd->add_option("--p", [this](const CLI::results_t& r) {
      try { edge_prob = std::stod(r[0]); } catch (...) { return false; }
      return true;
    }, "generator edge probability");
    cmd->add_option("--edges", [this](const CLI::results_t& r) {
      try { gen_edges = std::stoll(r[0]); } catch (...) { return false; }
      return true;
    }, "generator explicit edge count");
    cmd->add_option("--gen-seed", gen_seed, "generator seed");
    cmd->add_flag("--strict", strict, "reject duplicate edges while parsing");
    cmd->add_option("--header", header, "edge-list header handling: auto|yes|no");
  }

  json gen_spec() const {
    json spec{{"kind", gen_kind}, {"n", gen_n}, {"seed", gen_seed}};
    if (avg_degree) spec["avg_degree"] = *avg_degree;
    if (edge_prob) spec["edge_prob"] = *edge_prob;
    if (gen_edges) spec["edges"] = *gen_edges;
    return spec;
  }

  int acquire(GraphHandle& handle) const {
    if (!input.empty() && !gen_kind.empty()) {
      std::cerr << "error: give either --input or --gen-kind, not both\n";
      return kExitUsage;
    }
    if (input.empty() && gen_kind.empty()) {
      std::cerr << "error: an input graph is required (--input or --gen-kind)\n";
      return kExitUsage;
    }
    int status = RSM_OK;
    if (!input.empty()) {
      const json opts{{"strict", strict}, {"header", header}};
      status = rsm_graph_from_file(input.c_str(), opts.dump().c_str(), &handle.g);
    } else {
      status = rsm_graph_generate(gen_spec().dump().c_str(), &handle.g);
    }
    return status == RSM_OK ? kExitOk : fail(status);
  }
};

struct AlgoFlags {
  std::string epsilon{"0.3"};
  std::optional<std::int64_t> beta;
  std::string lambda;
  std::optional<std::int64_t> alpha;
  std::optional<std::int64_t> gamma;
  std::string order{"random"};
  std::uint64_t seed{1};
  std::string matcher{"auto"};
  std::string x_policy{"fail"};

  void add_flags(CLI::App* cmd) {
    cmd->add_option("--epsilon", epsilon, "approximation slack, 0 < epsilon < 1/2");
    cmd->add_option("--beta", [this](const CLI::results_t& r) {
      try { beta = std::stoll(r[0]); } catch (...) { return false; }
      return true;
    }, "override the edge-degree bound");
    cmd->add_option("--lambda", lambda, "override the slack (string, e.g. 0.05)");
    cmd->add_option("--alpha", [this](const CLI::results_t& r) {
      try { alpha = std::stoll(r[0]); } catch (...) { return false; }
      return true;
    }, "override the epoch length");
    cmd->add_option("--gamma", [this](const CLI::results_t& r) {
      try { gamma = std::stoll(r[0]); } catch (...) { return false; }
      return true;
    }, "override the underfull budget");
    cmd->add_option("--order", order, "stream order: random|as-given");
    cmd->add_option("--seed", seed, "stream order / experiment base seed");
    cmd->add_option("--matcher", matcher, "exact matcher: auto|bipartite|blossom|brute");
    cmd->add_option("--x-policy", x_policy, "X budget policy: fail|grow");
  }

  void fill(json& cfg) const {
    cfg["epsilon"] = epsilon;
    if (beta) cfg["beta"] = *beta;
    if (!lambda.empty()) cfg["lambda"] = lambda;
    if (alpha) cfg["alpha"] = *alpha;
    if (gamma) cfg["gamma"] = *gamma;
    cfg["order"] = order;
    cfg["seed"] = seed;
    cfg["matcher"] = matcher;
    cfg["x_policy"] = x_policy;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rsmatch: single-pass streaming matching toolkit"};
  app.require_subcommand(1);

  // ---- gen ----
  auto* gen = app.add_subcommand("gen", "generate a graph and write it as an edge list");
  std::string gen_kind_arg, gen_out;
  std::int64_t gen_n_arg = 0;
  std::uint64_t gen_seed_arg = 0;
  std::optional<double> gen_avg, gen_p;
  std::optional<std::int64_t> gen_edges_arg;
  gen->add_option("--kind", gen_kind_arg, "graph kind")->required();
  gen->add_option("--n", gen_n_arg, "vertex count")->required();
  gen->add_option("--avg-deg", [&](const CLI::results_t& r) {
    try { gen_avg = std::stod(r[0]); } catch (...) { return false; }
    return true;
  }, "target average degree");
  gen->add_option("--p", [&](const CLI::results_t& r) {
    try { gen_p = std::stod(r[0]); } catch (...) { return false; }
    return true;
  }, "edge probability");
  gen->add_option("--edges", [&](const CLI::results_t& r) {
    try { gen_edges_arg = std::stoll(r[0]); } catch (...) { return false; }
    return true;
  }, "explicit edge count");
  gen->add_option("--seed", gen_seed_arg, "generator seed");
  gen->add_option("--out", gen_out, "output file (default stdout)");

  // ---- run ----
  auto* run_cmd = app.add_subcommand("run", "one streaming run over a graph");
  GraphSource run_src;
  AlgoFlags run_flags;
  std::string run_out, run_format{"json"};
  std::int64_t run_fallback_cap = 10'000'000;
  bool run_checks = false, run_no_matching = false;
  std::string run_dump_h;
  run_src.add_flags(run_cmd);
  run_flags.add_flags(run_cmd);
  run_cmd->add_option("--fallback-cap", run_fallback_cap,
                      "store-everything threshold on m (0 disables the fallback)");
  run_cmd->add_flag("--check", run_checks, "enable per-move engine self-checks");
  run_cmd->add_flag("--no-matching", run_no_matching, "omit the matching edge list from the report");
  run_cmd->add_option("--dump-h", run_dump_h, "write the frozen subgraph dump to this file");
  run_cmd->add_option("--format", run_format, "output format: json");
  run_cmd->add_option("--out", run_out, "output file (default stdout)");

  // ---- bench ----
  auto* bench = app.add_subcommand("bench", "multi-trial experiment with aggregate statistics");
  GraphSource bench_src;
  AlgoFlags bench_flags;
  std::string bench_out, bench_format{"json"};
  std::int64_t bench_trials = 10, bench_jobs = 1, bench_fallback_cap = 0;
  bool bench_verify_edcs = false, bench_potential = false, bench_concentration = false;
  std::int64_t bench_conc_trials = 20;
  bench_src.add_flags(bench);
  bench_flags.add_flags(bench);
  bench->add_option("--trials", bench_trials, "number of random stream orders");
  bench->add_option("--jobs", bench_jobs, "worker threads (results stay in trial order)");
  bench->add_option("--fallback-cap", bench_fallback_cap,
                    "store-everything threshold on m (default off for benchmarks)");
  bench->add_flag("--verify-edcs", bench_verify_edcs, "verify H's bounded edge-degree per trial");
  bench->add_flag("--potential-trace", bench_potential, "per-move potential cross-checks");
  bench->add_flag("--concentration-check", bench_concentration,
                  "also run the late-stream concentration check");
  bench->add_option("--concentration-trials", bench_conc_trials, "trials for the concentration check");
  bench->add_option("--format", bench_format, "output format: json|csv");
  bench->add_option("--out", bench_out, "output file (default stdout)");

  // ---- verify ----
  auto* verify = app.add_subcommand("verify", "offline verification of dumps and matchings");
  std::string verify_graph, verify_dump, verify_matching_path, verify_lambda{"0.05"}, verify_out;
  std::optional<std::int64_t> verify_beta;
  bool verify_strict = false, verify_full_edcs = false;
  verify->add_option("--graph", verify_graph, "edge-list file of the host graph")->required();
  verify->add_flag("--full-edcs", verify_full_edcs,
                   "also fail when any non-H edge is underfull (P2)");
  verify->add_option("--dump", verify_dump, "subgraph dump file (u v deg(u) deg(v); moves/phi2x trailer)");
  verify->add_option("--matching", verify_matching_path, "edge-list file holding a matching to verify");
  verify->add_option("--beta", [&](const CLI::results_t& r) {
    try { verify_beta = std::stoll(r[0]); } catch (...) { return false; }
    return true;
  }, "edge-degree bound for the dump check");
  verify->add_option("--lambda", verify_lambda, "slack for the dump check");
  verify->add_flag("--strict", verify_strict, "reject duplicate edges while parsing the graph");
  verify->add_option("--out", verify_out, "output file (default stdout)");

  // ---- concentration ----
  auto* conc = app.add_subcommand("concentration", "late-stream matching concentration check");
  GraphSource conc_src;
  std::string conc_epsilon{"0.3"}, conc_out;
  std::int64_t conc_trials = 20;
  std::uint64_t conc_seed = 1;
  double conc_min_pass = 1.0;
  conc_src.add_flags(conc);
  conc->add_option("--epsilon", conc_epsilon, "split fraction, 0 < epsilon < 1/2");
  conc->add_option("--trials", conc_trials, "number of random stream orders");
  conc->add_option("--seed", conc_seed, "base seed");
  conc->add_option("--min-pass", conc_min_pass, "exit 1 when the pass fraction is below this");
  conc->add_option("--out", conc_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  if (gen->parsed()) {
    json spec{{"kind", gen_kind_arg}, {"n", gen_n_arg}, {"seed", gen_seed_arg}};
    if (gen_avg) spec["avg_degree"] = *gen_avg;
    if (gen_p) spec["edge_prob"] = *gen_p;
    if (gen_edges_arg) spec["edges"] = *gen_edges_arg;
    GraphHandle handle;
    if (int status = rsm_graph_generate(spec.dump().c_str(), &handle.g); status != RSM_OK)
      return fail(status);
    OwnedString text;
    if (int status = rsm_graph_to_text(handle.g, &text.s); status != RSM_OK) return fail(status);
    write_output(text.s, gen_out);
    return kExitOk;
  }

  if (run_cmd->parsed()) {
    if (run_format != "json") {
      std::cerr << "error: run reports are json\n";
      return kExitUsage;
    }
    GraphHandle handle;
    if (int rc = run_src.acquire(handle); rc != kExitOk) return rc;
    json cfg;
    run_flags.fill(cfg);
    cfg["fallback_cap"] = run_fallback_cap;
    cfg["checks"] = run_checks;
    cfg["emit_matching"] = !run_no_matching;
    cfg["emit_h_dump"] = !run_dump_h.empty();
    OwnedString out;
    if (int status = rsm_run(handle.g, cfg.dump().c_str(), &out.s); status != RSM_OK)
      return fail(status);
    std::string report_text = out.s;
    if (!run_dump_h.empty()) {
      json report = json::parse(report_text);
      write_output(report["h_dump"].get<std::string>(), run_dump_h);
      report.erase("h_dump");
      report_text = report.dump(2);
    }
    write_output(report_text, run_out);
    return kExitOk;
  }

  if (bench->parsed()) {
    GraphHandle handle;
    if (int rc = bench_src.acquire(handle); rc != kExitOk) return rc;
    json cfg;
    bench_flags.fill(cfg);
    cfg["trials"] = bench_trials;
    cfg["jobs"] = bench_jobs;
    cfg["fallback_cap"] = bench_fallback_cap;
    cfg["verify_edcs"] = bench_verify_edcs;
    cfg["potential_trace"] = bench_potential;
    cfg["concentration"] = bench_concentration;
    cfg["concentration_trials"] = bench_conc_trials;
    cfg["format"] = bench_format;
    if (!bench_src.gen_kind.empty()) cfg["generator"] = bench_src.gen_spec();
    if (!bench_src.input.empty()) cfg["input"] = bench_src.input;
    OwnedString out;
    const int status = rsm_bench(handle.g, cfg.dump().c_str(), &out.s);
    if (status == RSM_ERR_TRIAL_FAILED) {
      // partial report is still written; the failing seed is in the report
      write_output(out.s, bench_out);
      std::cerr << "error: " << rsm_last_error() << "\n";
      return kExitCheckFailed;
    }
    if (status != RSM_OK) return fail(status);
    write_output(out.s, bench_out);
    return kExitOk;
  }

  if (verify->parsed()) {
    if (verify_dump.empty() && verify_matching_path.empty()) {
      std::cerr << "error: verify needs --dump and/or --matching\n";
      return kExitUsage;
    }
    GraphHandle handle;
    const json opts{{"strict", verify_strict}, {"header", "auto"}};
    if (int status = rsm_graph_from_file(verify_graph.c_str(), opts.dump().c_str(), &handle.g);
        status != RSM_OK)
      return fail(status);
    json report = json::object();
    bool all_ok = true;
    if (!verify_dump.empty()) {
      if (!verify_beta) {
        std::cerr << "error: --dump verification needs --beta\n";
        return kExitUsage;
      }
      const std::string dump_text = slurp(verify_dump);
      const json cfg{{"beta", *verify_beta}, {"lambda", verify_lambda}};
      OwnedString out;
      if (int status = rsm_verify_edcs_dump(handle.g, dump_text.c_str(), cfg.dump().c_str(), &out.s);
          status != RSM_OK)
        return fail(status);
      report["dump"] = json::parse(out.s);
      all_ok = all_ok && report["dump"]["ok"].get<bool>();
      if (verify_full_edcs) all_ok = all_ok && report["dump"]["is_edcs"].get<bool>();
    }
    if (!verify_matching_path.empty()) {
      const std::string matching_text = slurp(verify_matching_path);
      OwnedString out;
      if (int status = rsm_verify_matching(handle.g, matching_text.c_str(), &out.s);
          status != RSM_OK)
        return fail(status);
      report["matching"] = json::parse(out.s);
      all_ok = all_ok && report["matching"]["ok"].get<bool>();
    }
    report["ok"] = all_ok;
    write_output(report.dump(2), verify_out);
    return all_ok ? kExitOk : kExitCheckFailed;
  }

  if (conc->parsed()) {
    GraphHandle handle;
    if (int rc = conc_src.acquire(handle); rc != kExitOk) return rc;
    const json cfg{{"epsilon", conc_epsilon}, {"trials", conc_trials}, {"seed", conc_seed}};
    OwnedString out;
    if (int status = rsm_concentration(handle.g, cfg.dump().c_str(), &out.s); status != RSM_OK)
      return fail(status);
    write_output(out.s, conc_out);
    const json report = json::parse(out.s);
    return report["pass_fraction"].get<double>() >= conc_min_pass ? kExitOk : kExitCheckFailed;
  }

  return kExitUsage;
}
