#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "rsmatch/graph.hpp"

namespace rsm {

enum class GraphKind {
  BipartitePlanted,  // two sides of n/2, planted perfect matching + random cross edges
  GeneralPlanted,    // planted perfect matching + random extra edges, odd cycles allowed
  ErdosRenyi,        // uniform G(n, m) sample; p is converted to an edge target
  Path,
  Cycle,
  Clique,
};

const char* kind_name(GraphKind kind);
std::optional<GraphKind> kind_from_name(std::string_view name);

struct GeneratorSpec {
  GraphKind kind{GraphKind::ErdosRenyi};
  std::int64_t n{0};
  /// Density for the random kinds, one of: target average degree, edge
  /// probability p (converted to round(p * n(n-1)/2) edges), or an explicit
  /// edge count. Planted kinds never go below the n/2 planted edges.
  std::optional<double> avg_degree;
  std::optional<double> edge_prob;
  std::optional<std::int64_t> edges;
  std::uint64_t seed{0};
};

/// Deterministic given (kind, n, density, seed). Planted kinds guarantee
/// mu(G) = n/2 by construction. Throws Errc::bad_spec on inconsistent
/// parameters.
Graph generate_graph(const GeneratorSpec& spec);

}  // namespace rsm
