#include "rsmatch/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <future>
#include <numeric>
#include <sstream>

namespace rsm {

namespace {

double quantile(std::vector<double> sorted, double p) {
  if (sorted.empty()) return 0.0;
  const auto idx = static_cast<std::size_t>(
      std::llround(p * static_cast<double>(sorted.size() - 1)));
  return sorted[std::min(idx, sorted.size() - 1)];
}

TrialRecord run_trial(const Graph& g, const ExperimentConfig& cfg, const Params& params,
                      std::int64_t mu, std::int64_t trial_index) {
  TrialRecord rec;
  rec.seed = cfg.base_seed ^ static_cast<std::uint64_t>(trial_index);
  const StreamOrder order = cfg.order_random ? permute(static_cast<std::size_t>(g.m()), rec.seed)
                                             : StreamOrder::as_given(static_cast<std::size_t>(g.m()));

  RunOptions opts;
  opts.matcher = cfg.matcher;
  opts.engine_checks = cfg.checks.potential_trace;
  const RunResult result = run(g, order, params, opts);

  if (!verify_matching(result.fallback_used
                           ? g
                           : subgraph_union(result.h_edges, result.x_edges, g.n()),
                       result.matching))
    raise(Errc::check_failed, "run produced an invalid matching");
  if (cfg.checks.verify_edcs && !result.fallback_used) {
    // P1 half of the EDCS conditions: H keeps bounded edge-degree beta
    const EdcsState frozen =
        EdcsState::from_edges(g.n(), params.beta, params.lambda, result.h_edges);
    if (frozen.max_edge_degree() > params.beta)
      raise(Errc::check_failed, "H violates the bounded edge-degree invariant");
  }

  rec.matching_size = result.matching.size();
  rec.mu_exact = mu;
  rec.ratio = mu > 0 ? static_cast<double>(rec.matching_size) / static_cast<double>(mu) : 1.0;

  // greedy baseline over the same stream order
  std::vector<Edge> in_order;
  in_order.reserve(static_cast<std::size_t>(g.m()));
  for (std::uint32_t idx : order.permutation) in_order.push_back(g.edges()[idx]);
  rec.greedy_size = greedy_maximal(in_order, g.n()).size();
  rec.greedy_ratio = mu > 0 ? static_cast<double>(rec.greedy_size) / static_cast<double>(mu) : 1.0;

  rec.h_size = static_cast<std::int64_t>(result.h_edges.size());
  rec.x_size = static_cast<std::int64_t>(result.x_edges.size());
  rec.epochs = result.epochs;
  rec.moves = result.moves;
  rec.phase1_end_fraction =
      g.m() > 0 ? static_cast<double>(result.phase1_end_index) / static_cast<double>(g.m()) : 0.0;
  rec.space_peak = result.space_peak;
  rec.fallback_used = result.fallback_used;
  rec.params_derived = params.derived;
  return rec;
}

}  // namespace

Report run_experiment(const Graph& g, const ExperimentConfig& cfg) {
  if (cfg.trials < 1) raise(Errc::bad_config, "trials must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();

  Report rep;
  rep.config = cfg;
  rep.n = g.n();
  rep.m = g.m();

  Params params = derive_params(cfg.epsilon, std::max<std::int64_t>(g.n(), 1), g.m(), cfg.overrides);
  params.fallback_cap = cfg.fallback_cap;
  params.x_policy = cfg.x_policy;
  rep.params = params;

  rep.mu_exact = max_matching_with(g, cfg.matcher).size();

  std::vector<std::optional<TrialRecord>> slots(static_cast<std::size_t>(cfg.trials));
  std::vector<std::optional<TrialFailure>> failures(static_cast<std::size_t>(cfg.trials));
  std::atomic<bool> abort{false};
  auto execute = [&](std::int64_t t) {
    try {
      slots[static_cast<std::size_t>(t)] = run_trial(g, cfg, params, rep.mu_exact, t);
    } catch (const std::exception& e) {
      failures[static_cast<std::size_t>(t)] =
          TrialFailure{t, cfg.base_seed ^ static_cast<std::uint64_t>(t), e.what()};
      abort.store(true);
    }
  };
  const std::int64_t jobs = std::max<std::int64_t>(1, cfg.jobs);
  if (jobs == 1) {
    for (std::int64_t t = 0; t < cfg.trials && !abort.load(); ++t) execute(t);
  } else {
    // trials share nothing mutable; gather by index so output order is fixed
    std::atomic<std::int64_t> next{0};
    auto worker = [&]() {
      for (;;) {
        const std::int64_t t = next.fetch_add(1);
        if (t >= cfg.trials || abort.load()) return;
        execute(t);
      }
    };
    std::vector<std::future<void>> pool;
    for (std::int64_t j = 0; j < std::min(jobs, cfg.trials); ++j)
      pool.push_back(std::async(std::launch::async, worker));
    for (auto& f : pool) f.get();
  }

  // keep the completed prefix before the lowest failing index so partial
  // results survive a failing trial with its seed recorded
  for (std::int64_t t = 0; t < cfg.trials; ++t) {
    if (failures[static_cast<std::size_t>(t)]) {
      rep.failure = failures[static_cast<std::size_t>(t)];
      break;
    }
    if (!slots[static_cast<std::size_t>(t)]) break;  // skipped after an abort
    rep.trials.push_back(*slots[static_cast<std::size_t>(t)]);
  }

  Aggregate agg;
  if (!rep.trials.empty()) {
    std::vector<double> ratios;
    ratios.reserve(rep.trials.size());
    agg.ratio_min = 1e300;
    agg.greedy_ratio_min = 1e300;
    double ratio_sum = 0.0, greedy_sum = 0.0;
    for (const TrialRecord& rec : rep.trials) {
      ratios.push_back(rec.ratio);
      ratio_sum += rec.ratio;
      greedy_sum += rec.greedy_ratio;
      agg.ratio_min = std::min(agg.ratio_min, rec.ratio);
      agg.ratio_max = std::max(agg.ratio_max, rec.ratio);
      agg.greedy_ratio_min = std::min(agg.greedy_ratio_min, rec.greedy_ratio);
      agg.space_peak_max = std::max(agg.space_peak_max, rec.space_peak);
      agg.epochs_max = std::max(agg.epochs_max, rec.epochs);
      agg.moves_max = std::max(agg.moves_max, rec.moves);
    }
    agg.ratio_mean = ratio_sum / static_cast<double>(rep.trials.size());
    agg.greedy_ratio_mean = greedy_sum / static_cast<double>(rep.trials.size());
    std::sort(ratios.begin(), ratios.end());
    agg.ratio_p10 = quantile(ratios, 0.10);
    agg.ratio_p50 = quantile(ratios, 0.50);
    agg.ratio_p90 = quantile(ratios, 0.90);
  }
  agg.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  rep.aggregate = agg;

  if (cfg.checks.concentration) {
    bool warned = false;
    rep.concentration_pass_fraction = concentration_check(
        g, cfg.epsilon, cfg.checks.concentration_trials, cfg.base_seed, &warned);
    rep.concentration_mu_warning = warned;
  }
  return rep;
}

double concentration_check(const Graph& g, const Rational& epsilon, std::int64_t trials,
                           std::uint64_t seed, bool* warned_small_mu) {
  if (epsilon.num <= 0 || !(epsilon < Rational{1, 2}))
    raise(Errc::bad_epsilon, "epsilon must be < 1/2 and positive, got " + epsilon.str());
  if (trials < 1) raise(Errc::bad_config, "trials must be >= 1");

  const std::int64_t mu = max_matching(g).size();
  if (warned_small_mu) {
    const double threshold = 20.0 * std::log(static_cast<double>(std::max<std::int64_t>(g.n(), 2))) *
                             std::pow(static_cast<double>(epsilon.den) / static_cast<double>(epsilon.num), 2.0);
    *warned_small_mu = static_cast<double>(mu) < threshold;
  }

  const std::int64_t m = g.m();
  const std::int64_t split = epsilon_m_budget(epsilon, m);
  std::int64_t passes = 0;
  for (std::int64_t t = 0; t < trials; ++t) {
    const StreamOrder order = permute(static_cast<std::size_t>(m), seed ^ static_cast<std::uint64_t>(t));
    std::vector<Edge> late;
    late.reserve(static_cast<std::size_t>(std::max<std::int64_t>(m - split, 0)));
    for (std::int64_t pos = split; pos < m; ++pos)
      late.push_back(g.edges()[order.permutation[static_cast<std::size_t>(pos)]]);
    const Graph late_graph(g.n(), std::move(late),
                           g.has_sides() ? std::optional(g.sides()) : std::nullopt);
    const std::int64_t mu_late = max_matching(late_graph).size();
    // mu_late >= (1 - 2 eps) * mu  <=>  mu_late * den >= (den - 2 num) * mu
    const __int128 lhs = static_cast<__int128>(mu_late) * epsilon.den;
    const __int128 rhs = static_cast<__int128>(epsilon.den - 2 * epsilon.num) * mu;
    if (lhs >= rhs) ++passes;
  }
  return static_cast<double>(passes) / static_cast<double>(trials);
}

nlohmann::json params_to_json(const Params& p) {
  return nlohmann::json{
      {"epsilon", p.epsilon.str()},
      {"lambda", p.lambda.str()},
      {"beta", p.beta},
      {"alpha", p.alpha},
      {"gamma", p.gamma},
      {"derived", p.derived},
      {"fallback_cap", p.fallback_cap},
      {"x_hard_cap", p.x_hard_cap},
      {"x_policy", p.x_policy == Params::XPolicy::Fail ? "fail" : "grow"},
  };
}

nlohmann::json run_result_to_json(const RunResult& r, const Params& p, const StreamOrder& order,
                                  std::int64_t n, std::int64_t m, bool emit_matching) {
  nlohmann::json j{
      {"n", n},
      {"m", m},
      {"params", params_to_json(p)},
      {"order_seed", order.seed},
      {"matching_size", r.matching.size()},
      {"h_size", static_cast<std::int64_t>(r.h_edges.size())},
      {"x_size", static_cast<std::int64_t>(r.x_edges.size())},
      {"phase1_end_index", r.phase1_end_index},
      {"epochs", r.epochs},
      {"moves", r.moves},
      {"space_peak", r.space_peak},
      {"fallback_used", r.fallback_used},
      {"x_overflow", r.x_overflow},
      {"eps_m_bound_applied", r.epsilon_m_bound_applicable},
      {"wall_ms", r.wall_ms},
  };
  if (emit_matching) {
    nlohmann::json edges = nlohmann::json::array();
    for (const Edge& e : r.matching.edges) edges.push_back({e.u, e.v});
    j["matching"] = std::move(edges);
  }
  return j;
}

namespace {

nlohmann::json trial_to_json(const TrialRecord& rec) {
  return nlohmann::json{
      {"seed", rec.seed},
      {"matching_size", rec.matching_size},
      {"mu_exact", rec.mu_exact},
      {"ratio", rec.ratio},
      {"greedy_size", rec.greedy_size},
      {"greedy_ratio", rec.greedy_ratio},
      {"h_size", rec.h_size},
      {"x_size", rec.x_size},
      {"epochs", rec.epochs},
      {"moves", rec.moves},
      {"phase1_end_fraction", rec.phase1_end_fraction},
      {"space_peak", rec.space_peak},
      {"fallback_used", rec.fallback_used},
      {"params_derived", rec.params_derived},
  };
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json j{
      {"epsilon", cfg.epsilon.str()},
      {"trials", cfg.trials},
      {"seed", cfg.base_seed},
      {"matcher", cfg.matcher ? matcher_name(*cfg.matcher) : "auto"},
      {"order", cfg.order_random ? "random" : "as-given"},
      {"fallback_cap", cfg.fallback_cap},
      {"format", cfg.format},
  };
  if (cfg.generator) {
    nlohmann::json gen{{"kind", kind_name(cfg.generator->kind)},
                       {"n", cfg.generator->n},
                       {"seed", cfg.generator->seed}};
    if (cfg.generator->avg_degree) gen["avg_degree"] = *cfg.generator->avg_degree;
    if (cfg.generator->edge_prob) gen["edge_prob"] = *cfg.generator->edge_prob;
    if (cfg.generator->edges) gen["edges"] = *cfg.generator->edges;
    j["generator"] = std::move(gen);
  }
  if (!cfg.input_path.empty()) j["input"] = cfg.input_path;
  nlohmann::json over = nlohmann::json::object();
  if (cfg.overrides.lambda) over["lambda"] = cfg.overrides.lambda->str();
  if (cfg.overrides.beta) over["beta"] = *cfg.overrides.beta;
  if (cfg.overrides.alpha) over["alpha"] = *cfg.overrides.alpha;
  if (cfg.overrides.gamma) over["gamma"] = *cfg.overrides.gamma;
  if (!over.empty()) j["overrides"] = std::move(over);
  nlohmann::json checks = nlohmann::json::object();
  if (cfg.checks.verify_edcs) checks["verify_edcs"] = true;
  if (cfg.checks.potential_trace) checks["potential_trace"] = true;
  if (cfg.checks.concentration) {
    checks["concentration"] = true;
    checks["concentration_trials"] = cfg.checks.concentration_trials;
  }
  if (!checks.empty()) j["checks"] = std::move(checks);
  return j;
}

}  // namespace

nlohmann::json report_to_json(const Report& rep) {
  nlohmann::json trials = nlohmann::json::array();
  for (const TrialRecord& rec : rep.trials) trials.push_back(trial_to_json(rec));
  nlohmann::json aggregate{
      {"ratio_min", rep.aggregate.ratio_min},
      {"ratio_mean", rep.aggregate.ratio_mean},
      {"ratio_max", rep.aggregate.ratio_max},
      {"ratio_p10", rep.aggregate.ratio_p10},
      {"ratio_p50", rep.aggregate.ratio_p50},
      {"ratio_p90", rep.aggregate.ratio_p90},
      {"greedy_ratio_min", rep.aggregate.greedy_ratio_min},
      {"greedy_ratio_mean", rep.aggregate.greedy_ratio_mean},
      {"space_peak_max", rep.aggregate.space_peak_max},
      {"epochs_max", rep.aggregate.epochs_max},
      {"moves_max", rep.aggregate.moves_max},
      {"wall_time_ms", rep.aggregate.wall_time_ms},
  };
  nlohmann::json j{
      {"config", config_to_json(rep.config)},
      {"params", params_to_json(rep.params)},
      {"n", rep.n},
      {"m", rep.m},
      {"mu_exact", rep.mu_exact},
      {"trials", std::move(trials)},
      {"aggregate", std::move(aggregate)},
  };
  if (rep.failure) {
    j["failure"] = {{"trial", rep.failure->trial},
                    {"seed", rep.failure->seed},
                    {"error", rep.failure->message}};
  }
  if (rep.concentration_pass_fraction) {
    j["concentration"] = {{"pass_fraction", *rep.concentration_pass_fraction},
                          {"mu_below_threshold", rep.concentration_mu_warning}};
  }
  return j;
}

std::string report_to_csv(const Report& rep) {
  std::ostringstream out;
  out << "trial,seed,matching_size,mu_exact,ratio,greedy_size,greedy_ratio,h_size,x_size,"
         "epochs,moves,phase1_end_fraction,space_peak,fallback_used,params_derived\n";
  for (std::size_t t = 0; t < rep.trials.size(); ++t) {
    const TrialRecord& r = rep.trials[t];
    out << t << ',' << r.seed << ',' << r.matching_size << ',' << r.mu_exact << ',' << r.ratio
        << ',' << r.greedy_size << ',' << r.greedy_ratio << ',' << r.h_size << ',' << r.x_size
        << ',' << r.epochs << ',' << r.moves << ',' << r.phase1_end_fraction << ',' << r.space_peak
        << ',' << (r.fallback_used ? 1 : 0) << ',' << (r.params_derived ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace rsm
