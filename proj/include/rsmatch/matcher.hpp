#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "rsmatch/graph.hpp"

namespace rsm {

enum class MatcherKind { BipartiteAugmenting, Blossom, Greedy, BruteForce };

const char* matcher_name(MatcherKind kind);
std::optional<MatcherKind> matcher_from_name(std::string_view name);  // "auto" -> nullopt

/// Scans edges in the given order and takes an edge iff both endpoints are
/// still free. The result is maximal w.r.t. the input sequence.
Matching greedy_maximal(std::span<const Edge> edges, std::int64_t n);

/// Hopcroft-Karp. Requires a valid bipartition labeling on g; throws
/// Errc::not_bipartite when labels are missing or violated.
Matching max_matching_bipartite(const Graph& g);

/// Blossom (odd-cycle contracting) augmenting-path search; works on any graph.
Matching max_matching_general(const Graph& g);

/// Exact maximum matching size by exhaustive dynamic program over vertex
/// subsets. Test oracle; throws Errc::too_large when n exceeds the cap.
std::int64_t brute_force_mu(const Graph& g, std::int64_t cap = 16);

/// True iff every matching edge exists in g and no vertex repeats.
bool verify_matching(const Graph& g, const Matching& m);

/// 2-colors g; nullopt when an odd cycle makes it non-bipartite.
std::optional<std::vector<Side>> two_color(const Graph& g);

/// Single entry point: uses the bipartite solver when g carries or admits a
/// bipartition, the blossom solver otherwise.
Matching max_matching(const Graph& g);

/// Dispatch by kind; kind == nullopt means auto (max_matching). Greedy is a
/// baseline, not an exact solver, and is rejected here.
Matching max_matching_with(const Graph& g, std::optional<MatcherKind> kind);

}  // namespace rsm
