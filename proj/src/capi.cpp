#include "rsmatch.h"

#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "rsmatch/edcs.hpp"
#include "rsmatch/experiment.hpp"
#include "rsmatch/generator.hpp"
#include "rsmatch/graph.hpp"
#include "rsmatch/matcher.hpp"
#include "rsmatch/rng.hpp"
#include "rsmatch/stream_algorithm.hpp"

using nlohmann::json;

struct rsm_graph {
  rsm::Graph graph;
};

namespace {

thread_local std::string g_last_error;

int status_of(const rsm::Error& err) {
  switch (err.code()) {
    case rsm::Errc::malformed_line:
    case rsm::Errc::bad_dump:
      return RSM_ERR_PARSE;
    case rsm::Errc::self_loop:
    case rsm::Errc::duplicate_edge:
    case rsm::Errc::endpoint_out_of_range:
    case rsm::Errc::partition_violation:
      return RSM_ERR_INVALID;
    case rsm::Errc::bad_epsilon:
    case rsm::Errc::bad_params:
    case rsm::Errc::bad_spec:
    case rsm::Errc::bad_config:
    case rsm::Errc::invalid_matcher:
      return RSM_ERR_CONFIG;
    case rsm::Errc::param_overflow:
    case rsm::Errc::too_large:
    case rsm::Errc::space_budget_exceeded:
      return RSM_ERR_LIMIT;
    case rsm::Errc::not_bipartite:
    case rsm::Errc::not_underfull:
    case rsm::Errc::already_present:
    case rsm::Errc::h_not_subgraph:
    case rsm::Errc::stream_length_mismatch:
      return RSM_ERR_PRECONDITION;
    case rsm::Errc::io_error:
      return RSM_ERR_IO;
    case rsm::Errc::check_failed:
      return RSM_ERR_INTERNAL;
  }
  return RSM_ERR_INTERNAL;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return RSM_OK;
  } catch (const rsm::Error& err) {
    g_last_error = std::string(rsm::errc_name(err.code())) + ": " + err.what();
    return status_of(err);
  } catch (const json::exception& err) {
    g_last_error = std::string("bad json config: ") + err.what();
    return RSM_ERR_CONFIG;
  } catch (const std::exception& err) {
    g_last_error = err.what();
    return RSM_ERR_INTERNAL;
  }
}

char* copy_out(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

json parse_cfg(const char* cfg_json) {
  if (cfg_json == nullptr || *cfg_json == '\0') return json::object();
  return json::parse(cfg_json);
}

rsm::ParseOptions parse_options(const char* opts_json) {
  const json j = parse_cfg(opts_json);
  rsm::ParseOptions opts;
  opts.strict = j.value("strict", false);
  const std::string header = j.value("header", "auto");
  if (header == "auto")
    opts.header = rsm::ParseOptions::Header::Auto;
  else if (header == "yes")
    opts.header = rsm::ParseOptions::Header::Present;
  else if (header == "no")
    opts.header = rsm::ParseOptions::Header::Absent;
  else
    rsm::raise(rsm::Errc::bad_config, "header must be auto, yes or no");
  return opts;
}

rsm::Rational rational_field(const json& j, const char* key, const rsm::Rational& fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (v.is_string()) return rsm::Rational::parse(v.get<std::string>());
  rsm::raise(rsm::Errc::bad_config,
             std::string(key) + " must be a string like \"0.05\" to stay exact");
}

rsm::Overrides overrides_from(const json& j) {
  rsm::Overrides o;
  if (j.contains("lambda")) o.lambda = rational_field(j, "lambda", rsm::Rational{1, 2});
  if (j.contains("beta")) o.beta = j.at("beta").get<std::int64_t>();
  if (j.contains("alpha")) o.alpha = j.at("alpha").get<std::int64_t>();
  if (j.contains("gamma")) o.gamma = j.at("gamma").get<std::int64_t>();
  return o;
}

rsm::GeneratorSpec spec_from(const json& j) {
  rsm::GeneratorSpec spec;
  const std::string kind = j.value("kind", "");
  const auto parsed = rsm::kind_from_name(kind);
  if (!parsed) rsm::raise(rsm::Errc::bad_spec, "unknown generator kind \"" + kind + "\"");
  spec.kind = *parsed;
  spec.n = j.value("n", std::int64_t{0});
  spec.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("avg_degree")) spec.avg_degree = j.at("avg_degree").get<double>();
  if (j.contains("edge_prob")) spec.edge_prob = j.at("edge_prob").get<double>();
  if (j.contains("edges")) spec.edges = j.at("edges").get<std::int64_t>();
  return spec;
}

}  // namespace

extern "C" {

const char* rsm_version(void) { return "1.0.0"; }

const char* rsm_status_name(int status) {
  switch (status) {
    case RSM_OK: return "ok";
    case RSM_ERR_CONFIG: return "config_error";
    case RSM_ERR_PARSE: return "parse_error";
    case RSM_ERR_INVALID: return "invalid_graph";
    case RSM_ERR_PRECONDITION: return "precondition_error";
    case RSM_ERR_LIMIT: return "limit_exceeded";
    case RSM_ERR_IO: return "io_error";
    case RSM_ERR_INTERNAL: return "internal_error";
    case RSM_ERR_TRIAL_FAILED: return "trial_failed";
  }
  return "unknown";
}

const char* rsm_last_error(void) { return g_last_error.c_str(); }

int rsm_graph_from_text(const char* text, const char* opts_json, rsm_graph** out) {
  return guarded([&] {
    if (text == nullptr || out == nullptr) rsm::raise(rsm::Errc::bad_config, "null argument");
    *out = new rsm_graph{rsm::parse_edge_list(text, parse_options(opts_json))};
  });
}

int rsm_graph_from_file(const char* path, const char* opts_json, rsm_graph** out) {
  return guarded([&] {
    if (path == nullptr || out == nullptr) rsm::raise(rsm::Errc::bad_config, "null argument");
    std::ifstream in(path, std::ios::binary);
    if (!in) rsm::raise(rsm::Errc::io_error, std::string("cannot open ") + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    *out = new rsm_graph{rsm::parse_edge_list(buf.str(), parse_options(opts_json))};
  });
}

int rsm_graph_generate(const char* spec_json, rsm_graph** out) {
  return guarded([&] {
    if (spec_json == nullptr || out == nullptr) rsm::raise(rsm::Errc::bad_config, "null argument");
    *out = new rsm_graph{rsm::generate_graph(spec_from(json::parse(spec_json)))};
  });
}

int rsm_graph_to_text(const rsm_graph* g, char** out_text) {
  return guarded([&] {
    if (g == nullptr || out_text == nullptr) rsm::raise(rsm::Errc::bad_config, "null argument");
    *out_text = copy_out(rsm::serialize_edge_list(g->graph));
  });
}

int rsm_graph_write_file(const rsm_graph* g, const char* path) {
  return guarded([&] {
    if (g == nullptr || path == nullptr) rsm::raise(rsm::Errc::bad_config, "null argument");
    std::ofstream out(path, std::ios::binary);
    if (!out) rsm::raise(rsm::Errc::io_error, std::string("cannot open ") + path);
    out << rsm::serialize_edge_list(g->graph);
    if (!out) rsm::raise(rsm::Errc::io_error, std::string("write failed for ") + path);
  });
}

int64_t rsm_graph_vertex_count(const rsm_graph* g) { return g ? g->graph.n() : -1; }

int64_t rsm_graph_edge_count(const rsm_graph* g) { return g ? g->graph.m() : -1; }

int rsm_graph_validate(const rsm_graph* g, char** out_json) {
  return guarded([&] {
    if (g == nullptr || out_json == nullptr) rsm::raise(rsm::Errc::bad_config, "null argument");
    const auto violations = rsm::validate(g->graph);
    json list = json::array();
    for (const auto& v : violations) list.push_back(v.describe());
    *out_json = copy_out(json{{"valid", violations.empty()}, {"violations", list}}.dump());
  });
}

int rsm_mu_exact(const rsm_graph* g, const char* matcher, int64_t* out_mu) {
  return guarded([&] {
    if (g == nullptr || out_mu == nullptr) rsm::raise(rsm::Errc::bad_config, "null argument");
    const auto kind = rsm::matcher_from_name(matcher == nullptr ? "auto" : matcher);
    if (kind && *kind == rsm::MatcherKind::BruteForce)
      *out_mu = rsm::brute_force_mu(g->graph);
    else
      *out_mu = rsm::max_matching_with(g->graph, kind).size();
  });
}

void rsm_graph_free(rsm_graph* g) { delete g; }

int rsm_run(const rsm_graph* g, const char* cfg_json, char** out_json) {
  return guarded([&] {
    if (g == nullptr || out_json == nullptr) rsm::raise(rsm::Errc::bad_config, "null argument");
    const json cfg = parse_cfg(cfg_json);
    const rsm::Rational epsilon = rational_field(cfg, "epsilon", rsm::Rational{3, 10});
    rsm::Params params = rsm::derive_params(epsilon, std::max<std::int64_t>(g->graph.n(), 1),
                                            g->graph.m(), overrides_from(cfg));
    params.fallback_cap = cfg.value("fallback_cap", params.fallback_cap);
    if (cfg.value("x_policy", "fail") == std::string("grow"))
      params.x_policy = rsm::Params::XPolicy::Grow;

    const std::uint64_t seed = cfg.value("seed", std::uint64_t{0});
    const std::string order_kind = cfg.value("order", "random");
    rsm::StreamOrder order;
    if (order_kind == "random")
      order = rsm::permute(static_cast<std::size_t>(g->graph.m()), seed);
    else if (order_kind == "as-given")
      order = rsm::StreamOrder::as_given(static_cast<std::size_t>(g->graph.m()));
    else
      rsm::raise(rsm::Errc::bad_config, "order must be random or as-given");

    rsm::RunOptions opts;
    opts.matcher = rsm::matcher_from_name(cfg.value("matcher", "auto"));
    opts.engine_checks = cfg.value("checks", false);
    const rsm::RunResult result = rsm::run(g->graph, order, params, opts);
    json report = rsm::run_result_to_json(result, params, order, g->graph.n(), g->graph.m(),
                                          cfg.value("emit_matching", true));
    if (cfg.value("emit_h_dump", false)) {
      const rsm::EdcsState frozen = rsm::EdcsState::from_edges(
          g->graph.n(), params.beta, params.lambda, result.h_edges, result.moves);
      std::ostringstream dump;
      frozen.dump(dump);
      report["h_dump"] = dump.str();
    }
    *out_json = copy_out(report.dump(2));
  });
}

int rsm_bench(const rsm_graph* g, const char* cfg_json, char** out_text) {
  std::string trial_error;
  const int status = guarded([&] {
    if (g == nullptr || out_text == nullptr) rsm::raise(rsm::Errc::bad_config, "null argument");
    const json cfg = parse_cfg(cfg_json);
    rsm::ExperimentConfig ec;
    ec.epsilon = rational_field(cfg, "epsilon", rsm::Rational{3, 10});
    ec.overrides = overrides_from(cfg);
    ec.trials = cfg.value("trials", std::int64_t{1});
    ec.base_seed = cfg.value("seed", std::uint64_t{1});
    ec.matcher = rsm::matcher_from_name(cfg.value("matcher", "auto"));
    ec.order_random = cfg.value("order", "random") != std::string("as-given");
    ec.fallback_cap = cfg.value("fallback_cap", std::int64_t{0});
    if (cfg.value("x_policy", "fail") == std::string("grow"))
      ec.x_policy = rsm::Params::XPolicy::Grow;
    ec.checks.verify_edcs = cfg.value("verify_edcs", false);
    ec.checks.potential_trace = cfg.value("potential_trace", false);
    ec.checks.concentration = cfg.value("concentration", false);
    ec.checks.concentration_trials = cfg.value("concentration_trials", std::int64_t{20});
    ec.format = cfg.value("format", "json");
    ec.jobs = cfg.value("jobs", std::int64_t{1});
    if (cfg.contains("generator")) ec.generator = spec_from(cfg.at("generator"));
    ec.input_path = cfg.value("input", "");

    const rsm::Report report = rsm::run_experiment(g->graph, ec);
    if (ec.format == "csv")
      *out_text = copy_out(rsm::report_to_csv(report));
    else if (ec.format == "json")
      *out_text = copy_out(rsm::report_to_json(report).dump(2));
    else
      rsm::raise(rsm::Errc::bad_config, "format must be json or csv");
    if (report.failure) {
      trial_error = "trial " + std::to_string(report.failure->trial) + " (seed " +
                    std::to_string(report.failure->seed) + ") failed: " + report.failure->message;
    }
  });
  if (status != RSM_OK) return status;
  if (!trial_error.empty()) {
    g_last_error = trial_error;
    return RSM_ERR_TRIAL_FAILED;
  }
  return RSM_OK;
}

int rsm_concentration(const rsm_graph* g, const char* cfg_json, char** out_json) {
  return guarded([&] {
    if (g == nullptr || out_json == nullptr) rsm::raise(rsm::Errc::bad_config, "null argument");
    const json cfg = parse_cfg(cfg_json);
    const rsm::Rational epsilon = rational_field(cfg, "epsilon", rsm::Rational{3, 10});
    const std::int64_t trials = cfg.value("trials", std::int64_t{20});
    const std::uint64_t seed = cfg.value("seed", std::uint64_t{1});
    bool warned = false;
    const double fraction = rsm::concentration_check(g->graph, epsilon, trials, seed, &warned);
    *out_json = copy_out(json{{"epsilon", epsilon.str()},
                              {"trials", trials},
                              {"seed", seed},
                              {"pass_fraction", fraction},
                              {"mu_below_threshold", warned}}
                             .dump(2));
  });
}

int rsm_verify_edcs_dump(const rsm_graph* g, const char* dump_text, const char* cfg_json,
                         char** out_json) {
  return guarded([&] {
    if (g == nullptr || dump_text == nullptr || out_json == nullptr)
      rsm::raise(rsm::Errc::bad_config, "null argument");
    const json cfg = parse_cfg(cfg_json);
    if (!cfg.contains("beta")) rsm::raise(rsm::Errc::bad_config, "verify needs beta");
    const std::int64_t beta = cfg.at("beta").get<std::int64_t>();
    const rsm::Rational lambda = rational_field(cfg, "lambda", rsm::Rational{1, 20});

    const rsm::DumpData dump = rsm::parse_edcs_dump(dump_text);
    const rsm::EdcsState h =
        rsm::EdcsState::from_edges(g->graph.n(), beta, lambda, dump.edges);

    json degree_mismatches = json::array();
    for (std::size_t i = 0; i < dump.edges.size(); ++i) {
      const rsm::Edge& e = dump.edges[i];
      const auto& claimed = dump.claimed_degrees[i];
      if (h.degree(e.u) != claimed.first || h.degree(e.v) != claimed.second)
        degree_mismatches.push_back({e.u, e.v});
    }

    json not_subgraph = json::array();
    for (const rsm::Edge& e : dump.edges)
      if (!g->graph.has_edge(e.u, e.v)) not_subgraph.push_back({e.u, e.v});

    json p1 = json::array();
    json p2 = json::array();
    bool is_edcs = false;
    if (not_subgraph.empty()) {
      const rsm::EdcsReport report = rsm::verify_edcs(h, g->graph);
      for (const rsm::Edge& e : report.p1_violations) p1.push_back({e.u, e.v});
      for (const rsm::Edge& e : report.p2_violations) p2.push_back({e.u, e.v});
      is_edcs = report.ok();
    }

    const bool phi_ok = h.recompute_potential2x() == dump.phi2x;
    // "ok" certifies what the stream algorithm guarantees for H: a consistent
    // dump of a subgraph with bounded edge-degree. P2 violations are reported
    // but only fail the full-EDCS claim ("is_edcs").
    const bool ok = not_subgraph.empty() && degree_mismatches.empty() && phi_ok && p1.empty();
    *out_json = copy_out(json{{"ok", ok},
                              {"h_edges", static_cast<std::int64_t>(dump.edges.size())},
                              {"not_subgraph", not_subgraph},
                              {"degree_mismatches", degree_mismatches},
                              {"phi2x_claimed", dump.phi2x},
                              {"phi2x_recomputed", h.recompute_potential2x()},
                              {"phi2x_ok", phi_ok},
                              {"moves_claimed", dump.moves},
                              {"p1_violations", p1},
                              {"p2_violations", p2},
                              {"is_edcs", is_edcs}}
                             .dump(2));
  });
}

int rsm_verify_matching(const rsm_graph* g, const char* matching_text, char** out_json) {
  return guarded([&] {
    if (g == nullptr || matching_text == nullptr || out_json == nullptr)
      rsm::raise(rsm::Errc::bad_config, "null argument");
    rsm::ParseOptions opts;
    opts.header = rsm::ParseOptions::Header::Auto;
    const rsm::Graph parsed = rsm::parse_edge_list(matching_text, opts);
    rsm::Matching m;
    m.edges.assign(parsed.edges().begin(), parsed.edges().end());
    const bool ok = rsm::verify_matching(g->graph, m);
    *out_json = copy_out(json{{"ok", ok}, {"size", m.size()}}.dump(2));
  });
}

void rsm_string_free(char* s) { delete[] s; }

}  // extern "C"
