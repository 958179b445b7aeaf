#include "rsmatch/generator.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "rsmatch/rng.hpp"

namespace rsm {

const char* kind_name(GraphKind kind) {
  switch (kind) {
    case GraphKind::BipartitePlanted: return "bipartite-planted";
    case GraphKind::GeneralPlanted: return "general-planted";
    case GraphKind::ErdosRenyi: return "erdos-renyi";
    case GraphKind::Path: return "path";
    case GraphKind::Cycle: return "cycle";
    case GraphKind::Clique: return "clique";
  }
  return "unknown";
}

std::optional<GraphKind> kind_from_name(std::string_view name) {
  if (name == "bipartite-planted") return GraphKind::BipartitePlanted;
  if (name == "general-planted") return GraphKind::GeneralPlanted;
  if (name == "erdos-renyi") return GraphKind::ErdosRenyi;
  if (name == "path") return GraphKind::Path;
  if (name == "cycle") return GraphKind::Cycle;
  if (name == "clique") return GraphKind::Clique;
  return std::nullopt;
}

namespace {

std::int64_t pair_count(std::int64_t n) { return n * (n - 1) / 2; }

std::int64_t target_edges(const GeneratorSpec& spec, std::int64_t max_edges) {
  int given = 0;
  given += spec.avg_degree.has_value();
  given += spec.edge_prob.has_value();
  given += spec.edges.has_value();
  if (given > 1) raise(Errc::bad_spec, "give at most one of avg-degree, edge-prob, edges");
  std::int64_t target = 0;
  if (spec.edges) {
    target = *spec.edges;
  } else if (spec.avg_degree) {
    if (*spec.avg_degree < 0) raise(Errc::bad_spec, "average degree must be nonnegative");
    target = std::llround(*spec.avg_degree * static_cast<double>(spec.n) / 2.0);
  } else if (spec.edge_prob) {
    if (*spec.edge_prob < 0.0 || *spec.edge_prob > 1.0)
      raise(Errc::bad_spec, "edge probability must lie in [0,1]");
    target = std::llround(*spec.edge_prob * static_cast<double>(max_edges));
  }
  if (target < 0 || target > max_edges)
    raise(Errc::bad_spec, "edge target " + std::to_string(target) + " outside [0, " +
                              std::to_string(max_edges) + "]");
  return target;
}

/// Fills `edges` with distinct random pairs drawn by `draw` until it holds
/// `target` edges, rejecting self-loops and duplicates.
template <typename DrawPair>
void sample_edges(std::vector<Edge>& edges, std::unordered_set<std::uint64_t>& seen,
                  std::int64_t target, DrawPair draw) {
  while (static_cast<std::int64_t>(edges.size()) < target) {
    const Edge e = draw();
    if (e.u == e.v) continue;
    if (!seen.insert(e.key()).second) continue;
    edges.push_back(e.normalized());
  }
}

}  // namespace

Graph generate_graph(const GeneratorSpec& spec) {
  const std::int64_t n = spec.n;
  if (n < 0) raise(Errc::bad_spec, "n must be nonnegative");
  Xoshiro256ss rng(spec.seed);

  switch (spec.kind) {
    case GraphKind::Path: {
      std::vector<Edge> edges;
      for (std::int64_t i = 0; i + 1 < n; ++i)
        edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(i + 1)});
      return Graph(n, std::move(edges));
    }
    case GraphKind::Cycle: {
      if (n < 3) raise(Errc::bad_spec, "cycle needs n >= 3");
      std::vector<Edge> edges;
      for (std::int64_t i = 0; i + 1 < n; ++i)
        edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(i + 1)});
      edges.push_back({static_cast<Vertex>(n - 1), 0});
      return Graph(n, std::move(edges));
    }
    case GraphKind::Clique: {
      std::vector<Edge> edges;
      for (std::int64_t u = 0; u < n; ++u)
        for (std::int64_t v = u + 1; v < n; ++v)
          edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
      return Graph(n, std::move(edges));
    }
    case GraphKind::ErdosRenyi: {
      const std::int64_t target = target_edges(spec, pair_count(n));
      std::vector<Edge> edges;
      edges.reserve(static_cast<std::size_t>(target));
      std::unordered_set<std::uint64_t> seen;
      sample_edges(edges, seen, target, [&]() {
        return Edge{static_cast<Vertex>(rng.bounded(static_cast<std::uint64_t>(n))),
                    static_cast<Vertex>(rng.bounded(static_cast<std::uint64_t>(n)))};
      });
      return Graph(n, std::move(edges));
    }
    case GraphKind::BipartitePlanted: {
      if (n < 2 || n % 2 != 0) raise(Errc::bad_spec, "bipartite-planted needs even n >= 2");
      const std::int64_t half = n / 2;
      const std::int64_t max_edges = half * half;
      const std::int64_t target = std::max(half, target_edges(spec, max_edges));
      std::vector<Edge> edges;
      edges.reserve(static_cast<std::size_t>(target));
      std::unordered_set<std::uint64_t> seen;
      // planted perfect matching: left i <-> right half+i, so mu(G) = n/2
      for (std::int64_t i = 0; i < half; ++i) {
        const Edge e{static_cast<Vertex>(i), static_cast<Vertex>(half + i)};
        seen.insert(e.key());
        edges.push_back(e);
      }
      sample_edges(edges, seen, target, [&]() {
        return Edge{static_cast<Vertex>(rng.bounded(static_cast<std::uint64_t>(half))),
                    static_cast<Vertex>(half + rng.bounded(static_cast<std::uint64_t>(half)))};
      });
      std::vector<Side> sides(static_cast<std::size_t>(n), Side::Left);
      for (std::int64_t v = half; v < n; ++v) sides[static_cast<std::size_t>(v)] = Side::Right;
      return Graph(n, std::move(edges), std::move(sides));
    }
    case GraphKind::GeneralPlanted: {
      if (n < 2 || n % 2 != 0) raise(Errc::bad_spec, "general-planted needs even n >= 2");
      const std::int64_t target = std::max(n / 2, target_edges(spec, pair_count(n)));
      std::vector<Edge> edges;
      edges.reserve(static_cast<std::size_t>(target));
      std::unordered_set<std::uint64_t> seen;
      for (std::int64_t i = 0; i < n; i += 2) {
        const Edge e{static_cast<Vertex>(i), static_cast<Vertex>(i + 1)};
        seen.insert(e.key());
        edges.push_back(e);
      }
      sample_edges(edges, seen, target, [&]() {
        return Edge{static_cast<Vertex>(rng.bounded(static_cast<std::uint64_t>(n))),
                    static_cast<Vertex>(rng.bounded(static_cast<std::uint64_t>(n)))};
      });
      return Graph(n, std::move(edges));
    }
  }
  raise(Errc::bad_spec, "unknown generator kind");
}

}  // namespace rsm
