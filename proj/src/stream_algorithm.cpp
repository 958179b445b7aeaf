#include "rsmatch/stream_algorithm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace rsm {

namespace {

constexpr std::int64_t kBetaMax = 1'000'000'000'000'000;  // keeps n*beta^2 inside __int128 comfortably

std::int64_t derive_beta(const Rational& lambda) {
  const double l = lambda.to_double();
  const double raw = 16.0 / (l * l) * std::log(1.0 / l);
  if (!(raw < static_cast<double>(kBetaMax)))
    raise(Errc::param_overflow, "derived beta overflows for lambda=" + lambda.str());
  return std::max<std::int64_t>(2, static_cast<std::int64_t>(std::ceil(raw)));
}

}  // namespace

Params derive_params(const Rational& epsilon, std::int64_t n, std::int64_t m,
                     const Overrides& overrides) {
  if (epsilon.num <= 0 || !(epsilon < Rational{1, 2}))
    raise(Errc::bad_epsilon, "epsilon must be < 1/2 and positive, got " + epsilon.str());
  if (n < 1) raise(Errc::bad_params, "vertex count must be >= 1");
  if (m < 0) raise(Errc::bad_params, "edge count must be >= 0");

  Params p;
  p.epsilon = epsilon;
  p.lambda = overrides.lambda ? *overrides.lambda : epsilon.div_int(128);
  if (p.lambda.num <= 0 || !(p.lambda < Rational{1, 1}))
    raise(Errc::bad_params, "lambda override must lie in (0,1)");
  p.beta = overrides.beta ? *overrides.beta : derive_beta(p.lambda);
  if (p.beta < 2) raise(Errc::bad_params, "beta must be >= 2");
  if (p.beta > kBetaMax) raise(Errc::param_overflow, "beta too large");

  if (overrides.alpha) {
    p.alpha = *overrides.alpha;
    if (p.alpha < 1) raise(Errc::bad_params, "alpha must be >= 1");
  } else {
    // alpha = max(1, floor(eps*m / (n*beta^2 + 1)))
    const __int128 denom = static_cast<__int128>(epsilon.den) *
                           (static_cast<__int128>(n) * p.beta * p.beta + 1);
    const __int128 numer = static_cast<__int128>(epsilon.num) * m;
    p.alpha = std::max<std::int64_t>(1, static_cast<std::int64_t>(numer / denom));
  }

  if (overrides.gamma) {
    p.gamma = *overrides.gamma;
    if (p.gamma < 0) raise(Errc::bad_params, "gamma must be >= 0");
  } else {
    const double raw = 5.0 * std::log(std::max<std::int64_t>(n, 2)) * static_cast<double>(m) /
                       static_cast<double>(p.alpha);
    p.gamma = static_cast<std::int64_t>(std::ceil(raw));
  }

  p.derived = !overrides.any();
  p.x_hard_cap = p.gamma > (INT64_MAX / 4) ? INT64_MAX : 4 * p.gamma;
  return p;
}

std::int64_t epsilon_m_budget(const Rational& epsilon, std::int64_t m) {
  return ceil_mul(epsilon, m);
}

bool small_graph_fallback(std::int64_t n, std::int64_t m, const Rational& epsilon,
                          std::int64_t cap) {
  if (cap <= 0) return false;
  if (m > cap) return false;
  const double inv_eps = static_cast<double>(epsilon.den) / static_cast<double>(epsilon.num);
  const double bound = 40.0 * static_cast<double>(n) * std::log(static_cast<double>(std::max<std::int64_t>(n, 1))) *
                       inv_eps * inv_eps;
  return static_cast<double>(m) <= bound;
}

Phase1Out run_phase1(const Graph& g, const StreamOrder& order, const Params& p, EdcsState& h) {
  const std::int64_t m = g.m();
  std::int64_t pos = 0;
  Phase1Out out;
  while (pos < m) {
    ++out.epochs;
    const std::int64_t take = std::min(p.alpha, m - pos);
    bool found_underfull = false;
    for (std::int64_t k = 0; k < take; ++k) {
      const Edge& e = g.edges()[order.permutation[static_cast<std::size_t>(pos)]];
      ++pos;
      if (h.is_underfull(e.u, e.v)) {
        h.insert_and_rebalance(e.u, e.v);
        found_underfull = true;
      }
    }
    if (!found_underfull) break;  // the only exit other than stream exhaustion
  }
  out.end_index = pos;
  return out;
}

std::vector<Edge> run_phase2(const Graph& g, const StreamOrder& order, std::int64_t end_index,
                             const EdcsState& h, const Params& p, bool& overflowed) {
  std::vector<Edge> x;
  overflowed = false;
  const std::int64_t m = g.m();
  for (std::int64_t pos = end_index; pos < m; ++pos) {
    const Edge& e = g.edges()[order.permutation[static_cast<std::size_t>(pos)]];
    if (!h.is_underfull(e.u, e.v)) continue;
    if (static_cast<std::int64_t>(x.size()) >= p.x_hard_cap) {
      if (p.x_policy == Params::XPolicy::Fail)
        raise(Errc::space_budget_exceeded,
              "|X| exceeded the hard cap of " + std::to_string(p.x_hard_cap));
      overflowed = true;
    }
    x.push_back(e);
  }
  return x;
}

Matching finalize_matching(std::span<const Edge> h_edges, std::span<const Edge> x_edges,
                           std::int64_t n, std::optional<MatcherKind> matcher,
                           const std::optional<std::vector<Side>>& sides) {
  if (matcher && *matcher == MatcherKind::Greedy)
    raise(Errc::invalid_matcher, "finalize requires an exact matcher, not the greedy baseline");
  const Graph combined = subgraph_union(h_edges, x_edges, n, sides);
  return max_matching_with(combined, matcher);
}

RunResult run(const Graph& g, const StreamOrder& order, const Params& p, const RunOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::int64_t n = g.n();
  const std::int64_t m = g.m();
  if (static_cast<std::int64_t>(order.size()) != m)
    raise(Errc::stream_length_mismatch, "stream order has " + std::to_string(order.size()) +
                                            " positions for m=" + std::to_string(m));

  RunResult result;

  if (small_graph_fallback(n, m, p.epsilon, p.fallback_cap)) {
    // store everything and return an exact maximum matching of G itself
    result.fallback_used = true;
    result.space_peak = m;
    result.matching = max_matching_with(g, opts.matcher);
    result.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return result;
  }

  EdcsState h(n, p.beta, p.lambda, opts.engine_checks);
  const Phase1Out phase1 = run_phase1(g, order, p, h);
  result.phase1_end_index = phase1.end_index;
  result.epochs = phase1.epochs;
  result.moves_at_phase1_end = h.moves();
  result.h_edges = h.edges();

  bool overflowed = false;
  result.x_edges = run_phase2(g, order, phase1.end_index, h, p, overflowed);
  result.x_overflow = overflowed;
  result.moves = h.moves();

  result.space_peak =
      std::max(h.peak_edge_count(),
               static_cast<std::int64_t>(result.h_edges.size() + result.x_edges.size()));

  // epsilon*m termination bound: applies under derived parameters whenever
  // alpha*(n*beta^2+1) <= eps*m
  if (p.derived) {
    const __int128 lhs = static_cast<__int128>(p.alpha) * p.epsilon.den *
                         (static_cast<__int128>(n) * p.beta * p.beta + 1);
    const __int128 rhs = static_cast<__int128>(p.epsilon.num) * m;
    if (lhs <= rhs) {
      result.epsilon_m_bound_applicable = true;
      if (result.phase1_end_index > epsilon_m_budget(p.epsilon, m))
        raise(Errc::check_failed, "Phase I overran the epsilon*m budget");
    }
  }

  result.matching = finalize_matching(result.h_edges, result.x_edges, n, opts.matcher,
                                      g.has_sides() ? std::optional(g.sides()) : std::nullopt);
  result.check_stats = h.check_stats();
  result.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace rsm
