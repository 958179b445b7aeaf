#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rsmatch/generator.hpp"
#include "rsmatch/graph.hpp"
#include "rsmatch/matcher.hpp"
#include "rsmatch/rational.hpp"
#include "rsmatch/stream_algorithm.hpp"

namespace rsm {

struct Checks {
  bool verify_edcs{false};      // post-run bounded-edge-degree scan of H
  bool potential_trace{false};  // per-move potential cross-checks in the engine
  bool concentration{false};    // late-stream matching concentration check
  std::int64_t concentration_trials{20};
};

struct ExperimentConfig {
  std::optional<GeneratorSpec> generator;  // how the graph was made, when generated
  std::string input_path;                  // source file, when loaded
  Rational epsilon{3, 10};
  Overrides overrides;
  std::int64_t trials{1};
  std::uint64_t base_seed{1};
  std::optional<MatcherKind> matcher;  // nullopt = auto
  bool order_random{true};
  /// Benchmarks measure the two-phase algorithm, so the store-everything
  /// fallback is disabled by default here (unlike single runs).
  std::int64_t fallback_cap{0};
  Params::XPolicy x_policy{Params::XPolicy::Fail};
  Checks checks;
  std::string format{"json"};
  std::int64_t jobs{1};
};

struct TrialRecord {
  std::uint64_t seed{0};
  std::int64_t matching_size{0};
  std::int64_t mu_exact{0};
  double ratio{0.0};
  std::int64_t greedy_size{0};
  double greedy_ratio{0.0};
  std::int64_t h_size{0};
  std::int64_t x_size{0};
  std::int64_t epochs{0};
  std::int64_t moves{0};
  double phase1_end_fraction{0.0};
  std::int64_t space_peak{0};
  bool fallback_used{false};
  bool params_derived{false};
};

struct Aggregate {
  double ratio_min{0.0}, ratio_mean{0.0}, ratio_max{0.0};
  double ratio_p10{0.0}, ratio_p50{0.0}, ratio_p90{0.0};
  double greedy_ratio_min{0.0}, greedy_ratio_mean{0.0};
  std::int64_t space_peak_max{0};
  std::int64_t epochs_max{0};
  std::int64_t moves_max{0};
  double wall_time_ms{0.0};
};

struct TrialFailure {
  std::int64_t trial{0};
  std::uint64_t seed{0};
  std::string message;
};

struct Report {
  ExperimentConfig config;
  Params params;
  std::int64_t n{0}, m{0};
  std::int64_t mu_exact{0};
  std::vector<TrialRecord> trials;
  Aggregate aggregate;
  /// Set when a trial raised an error; `trials` then holds the completed
  /// prefix before the failing index.
  std::optional<TrialFailure> failure;
  std::optional<double> concentration_pass_fraction;
  bool concentration_mu_warning{false};
};

/// One full algorithm run per trial against fresh stream orders (per-trial
/// seed = base_seed XOR trial index), each scored against the exact maximum
/// matching and the greedy baseline on the same order.
Report run_experiment(const Graph& g, const ExperimentConfig& cfg);

/// For each trial: permute the stream, split at ceil(epsilon*m), compute the
/// exact matching size of the late part and test
/// mu(late) >= (1 - 2*epsilon) * mu(G) by integer cross-multiplication.
/// Returns the fraction of passing trials. warned_small_mu is set when
/// mu(G) < 20 * ln(n) * epsilon^-2, where the test is not meaningful.
double concentration_check(const Graph& g, const Rational& epsilon, std::int64_t trials,
                           std::uint64_t seed, bool* warned_small_mu = nullptr);

nlohmann::json params_to_json(const Params& p);
nlohmann::json run_result_to_json(const RunResult& r, const Params& p, const StreamOrder& order,
                                  std::int64_t n, std::int64_t m, bool emit_matching);
nlohmann::json report_to_json(const Report& rep);
std::string report_to_csv(const Report& rep);

}  // namespace rsm
