#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rsmatch/edcs.hpp"
#include "rsmatch/graph.hpp"
#include "rsmatch/matcher.hpp"
#include "rsmatch/rational.hpp"
#include "rsmatch/rng.hpp"

namespace rsm {

/// Algorithm parameters. Derived values (natural log throughout):
///   lambda = epsilon / 128
///   beta   = ceil(16 * lambda^-2 * ln(1/lambda))
///   alpha  = max(1, floor(epsilon * m / (n * beta^2 + 1)))
///   gamma  = ceil(5 * ln(n) * m / alpha)
/// Overrides replace individual values; any override clears `derived` and the
/// epsilon*m termination guarantee is reported as void.
struct Params {
  Rational epsilon{1, 4};
  Rational lambda{1, 512};
  std::int64_t beta{2};
  std::int64_t alpha{1};
  std::int64_t gamma{0};
  bool derived{false};

  /// Store-everything mode is taken when m <= min(40 n ln(n) eps^-2, fallback_cap).
  /// 0 disables the fallback entirely.
  std::int64_t fallback_cap{10'000'000};

  enum class XPolicy { Fail, Grow };
  /// Hard cap on |X| (default 4 * gamma, set by derive_params). Policy Fail
  /// raises Errc::space_budget_exceeded; Grow keeps going and flags the run.
  std::int64_t x_hard_cap{0};
  XPolicy x_policy{XPolicy::Fail};
};

struct Overrides {
  std::optional<Rational> lambda;
  std::optional<std::int64_t> beta;
  std::optional<std::int64_t> alpha;
  std::optional<std::int64_t> gamma;
  bool any() const { return lambda || beta || alpha || gamma; }
};

/// Throws Errc::bad_epsilon unless 0 < epsilon < 1/2; validates overrides
/// (lambda in (0,1), beta >= 2, alpha >= 1, gamma >= 0).
Params derive_params(const Rational& epsilon, std::int64_t n, std::int64_t m,
                     const Overrides& overrides = {});

/// ceil(epsilon * m): the Phase I edge budget used for assertions.
std::int64_t epsilon_m_budget(const Rational& epsilon, std::int64_t m);

/// True iff m <= min(40 * n * ln(n) * epsilon^-2, cap); cap 0 disables.
bool small_graph_fallback(std::int64_t n, std::int64_t m, const Rational& epsilon,
                          std::int64_t cap);

struct RunResult {
  Matching matching;
  std::vector<Edge> h_edges;  // H frozen at the end of Phase I
  std::vector<Edge> x_edges;  // underfull edges collected in Phase II, arrival order
  std::int64_t phase1_end_index{0};  // 1-based index of the last Phase I edge; 0 if none
  std::int64_t epochs{0};
  std::int64_t moves{0};
  std::int64_t moves_at_phase1_end{0};
  bool fallback_used{false};
  std::int64_t space_peak{0};  // max simultaneously stored edges
  bool x_overflow{false};      // Grow policy exceeded the hard cap
  /// True when derived parameters were used and alpha*(n*beta^2+1) <= epsilon*m,
  /// i.e. the epsilon*m termination bound applies and was asserted.
  bool epsilon_m_bound_applicable{false};
  EdcsState::CheckStats check_stats;
  double wall_ms{0.0};
};

struct RunOptions {
  std::optional<MatcherKind> matcher;  // nullopt = auto
  bool engine_checks{false};
};

struct Phase1Out {
  std::int64_t end_index{0};
  std::int64_t epochs{0};
};

/// Phase I epoch loop: consumes blocks of alpha edges, inserting every
/// underfull edge; exits after the first epoch that inserted nothing,
/// returning the index of the last consumed edge, or m if the stream ran out.
Phase1Out run_phase1(const Graph& g, const StreamOrder& order, const Params& p, EdcsState& h);

/// Phase II: collects every remaining edge whose frozen-H edge-degree is
/// strictly below beta*(1-lambda). H is never modified.
std::vector<Edge> run_phase2(const Graph& g, const StreamOrder& order, std::int64_t end_index,
                             const EdcsState& h, const Params& p, bool& overflowed);

/// Exact maximum matching of H union X with the selected matcher (never the
/// greedy baseline). sides, when present, are the host graph's bipartition.
Matching finalize_matching(std::span<const Edge> h_edges, std::span<const Edge> x_edges,
                           std::int64_t n, std::optional<MatcherKind> matcher,
                           const std::optional<std::vector<Side>>& sides);

/// Full single-pass run: fallback check, Phase I, Phase II, finalize.
/// Deterministic given (g, order, p). Throws Errc::stream_length_mismatch when
/// order.size() != g.m().
RunResult run(const Graph& g, const StreamOrder& order, const Params& p,
              const RunOptions& opts = {});

}  // namespace rsm
