#include "rsmatch/matcher.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>

namespace rsm {

const char* matcher_name(MatcherKind kind) {
  switch (kind) {
    case MatcherKind::BipartiteAugmenting: return "bipartite";
    case MatcherKind::Blossom: return "blossom";
    case MatcherKind::Greedy: return "greedy";
    case MatcherKind::BruteForce: return "brute";
  }
  return "unknown";
}

std::optional<MatcherKind> matcher_from_name(std::string_view name) {
  if (name == "bipartite") return MatcherKind::BipartiteAugmenting;
  if (name == "blossom") return MatcherKind::Blossom;
  if (name == "greedy") return MatcherKind::Greedy;
  if (name == "brute") return MatcherKind::BruteForce;
  if (name == "auto") return std::nullopt;
  raise(Errc::bad_config, "unknown matcher \"" + std::string(name) + "\"");
}

Matching greedy_maximal(std::span<const Edge> edges, std::int64_t n) {
  std::vector<bool> used(static_cast<std::size_t>(std::max<std::int64_t>(n, 0)), false);
  Matching m;
  for (const Edge& e : edges) {
    if (e.u == e.v || e.u >= used.size() || e.v >= used.size()) continue;
    if (!used[e.u] && !used[e.v]) {
      used[e.u] = used[e.v] = true;
      m.edges.push_back(e);
    }
  }
  return m;
}

namespace {

// dp[mask] = maximum matching size inside the induced vertex subset `mask`:
// the lowest vertex in the subset is either left unmatched or matched to one
// of its neighbors in the subset.
std::vector<std::int8_t> subset_matching_dp(const Graph& g) {
  const std::int64_t n = g.n();
  std::vector<std::uint32_t> nbr_mask(static_cast<std::size_t>(std::max<std::int64_t>(n, 1)), 0);
  for (const Edge& e : g.edges()) {
    nbr_mask[e.u] |= 1u << e.v;
    nbr_mask[e.v] |= 1u << e.u;
  }
  std::vector<std::int8_t> dp(std::size_t{1} << n, 0);
  for (std::uint32_t mask = 1; mask < dp.size(); ++mask) {
    const int v = std::countr_zero(mask);
    const std::uint32_t rest = mask & (mask - 1);
    std::int8_t best = dp[rest];
    std::uint32_t candidates = nbr_mask[v] & rest;
    while (candidates) {
      const int u = std::countr_zero(candidates);
      candidates &= candidates - 1;
      best = std::max<std::int8_t>(best, static_cast<std::int8_t>(1 + dp[rest & ~(1u << u)]));
    }
    dp[mask] = best;
  }
  return dp;
}

void check_brute_cap(std::int64_t n, std::int64_t cap) {
  if (n > cap)
    raise(Errc::too_large, "brute force matching limited to n <= " + std::to_string(cap) +
                               ", got n=" + std::to_string(n));
}

}  // namespace

std::int64_t brute_force_mu(const Graph& g, std::int64_t cap) {
  check_brute_cap(g.n(), cap);
  if (g.n() <= 1) return 0;
  const auto dp = subset_matching_dp(g);
  return dp[dp.size() - 1];
}

bool verify_matching(const Graph& g, const Matching& m) {
  std::vector<bool> used(static_cast<std::size_t>(std::max<std::int64_t>(g.n(), 0)), false);
  for (const Edge& e : m.edges) {
    if (e.u >= used.size() || e.v >= used.size() || e.u == e.v) return false;
    if (!g.has_edge(e.u, e.v)) return false;
    if (used[e.u] || used[e.v]) return false;
    used[e.u] = used[e.v] = true;
  }
  return true;
}

std::optional<std::vector<Side>> two_color(const Graph& g) {
  const std::size_t n = static_cast<std::size_t>(std::max<std::int64_t>(g.n(), 0));
  std::vector<int> state(n, -1);
  for (Vertex start = 0; start < n; ++start) {
    if (state[start] != -1) continue;
    state[start] = 0;
    std::queue<Vertex> q;
    q.push(start);
    while (!q.empty()) {
      const Vertex v = q.front();
      q.pop();
      for (Vertex w : g.adjacency()[v]) {
        if (state[w] == -1) {
          state[w] = 1 - state[v];
          q.push(w);
        } else if (state[w] == state[v]) {
          return std::nullopt;
        }
      }
    }
  }
  std::vector<Side> color(n, Side::Left);
  for (std::size_t v = 0; v < n; ++v) color[v] = state[v] == 1 ? Side::Right : Side::Left;
  return color;
}

namespace {

constexpr std::int32_t kInf = std::numeric_limits<std::int32_t>::max();

Matching hopcroft_karp(const Graph& g, const std::vector<Side>& side) {
  const std::size_t n = static_cast<std::size_t>(g.n());
  constexpr Vertex kNil = std::numeric_limits<Vertex>::max();
  std::vector<Vertex> mate(n, kNil);
  std::vector<std::int32_t> dist(n, 0);
  std::vector<Vertex> left;
  for (Vertex v = 0; v < n; ++v)
    if (side[v] == Side::Left) left.push_back(v);

  auto bfs = [&]() {
    std::queue<Vertex> q;
    bool found = false;
    for (Vertex u : left) {
      if (mate[u] == kNil) {
        dist[u] = 0;
        q.push(u);
      } else {
        dist[u] = kInf;
      }
    }
    while (!q.empty()) {
      const Vertex u = q.front();
      q.pop();
      for (Vertex v : g.adjacency()[u]) {
        const Vertex next = mate[v];
        if (next == kNil) {
          found = true;
        } else if (dist[next] == kInf) {
          dist[next] = dist[u] + 1;
          q.push(next);
        }
      }
    }
    return found;
  };

  std::function<bool(Vertex)> try_match = [&](Vertex u) -> bool {
    for (Vertex v : g.adjacency()[u]) {
      const Vertex next = mate[v];
      if (next == kNil || (dist[next] == dist[u] + 1 && try_match(next))) {
        mate[u] = v;
        mate[v] = u;
        return true;
      }
    }
    dist[u] = kInf;
    return false;
  };

  while (bfs()) {
    for (Vertex u : left)
      if (mate[u] == kNil) try_match(u);
  }

  Matching m;
  for (Vertex u : left)
    if (mate[u] != kNil) m.edges.push_back({u, mate[u]});
  return m;
}

// Blossom augmenting-path search. For each free vertex, grow an alternating
// BFS forest, contracting odd cycles onto their base vertex via `base[]`.
class BlossomSolver {
public:
  explicit BlossomSolver(const Graph& g)
      : g_(g),
        n_(static_cast<std::size_t>(g.n())),
        mate_(n_, kNone),
        parent_(n_, kNone),
        base_(n_),
        in_queue_(n_, false),
        in_blossom_(n_, false) {}

  Matching solve() {
    for (Vertex v = 0; v < n_; ++v)
      if (mate_[v] == kNone) augment_from(v);
    Matching m;
    for (Vertex v = 0; v < n_; ++v)
      if (mate_[v] != kNone && v < mate_[v]) m.edges.push_back({v, mate_[v]});
    return m;
  }

private:
  static constexpr Vertex kNone = std::numeric_limits<Vertex>::max();

  Vertex lowest_common_base(Vertex a, Vertex b) {
    std::vector<bool> mark(n_, false);
    for (;;) {
      a = base_[a];
      mark[a] = true;
      if (mate_[a] == kNone) break;
      a = parent_[mate_[a]];
    }
    for (;;) {
      b = base_[b];
      if (mark[b]) return b;
      b = parent_[mate_[b]];
    }
  }

  void mark_path(Vertex v, Vertex stop_base, Vertex child) {
    while (base_[v] != stop_base) {
      in_blossom_[base_[v]] = true;
      in_blossom_[base_[mate_[v]]] = true;
      parent_[v] = child;
      child = mate_[v];
      v = parent_[mate_[v]];
    }
  }

  void contract(Vertex v, Vertex w, std::queue<Vertex>& q) {
    const Vertex cur_base = lowest_common_base(v, w);
    std::fill(in_blossom_.begin(), in_blossom_.end(), false);
    mark_path(v, cur_base, w);
    mark_path(w, cur_base, v);
    for (Vertex i = 0; i < n_; ++i) {
      if (in_blossom_[base_[i]]) {
        base_[i] = cur_base;
        if (!in_queue_[i]) {
          in_queue_[i] = true;
          q.push(i);
        }
      }
    }
  }

  void augment_from(Vertex root) {
    std::fill(parent_.begin(), parent_.end(), kNone);
    std::fill(in_queue_.begin(), in_queue_.end(), false);
    std::iota(base_.begin(), base_.end(), 0u);
    std::queue<Vertex> q;
    q.push(root);
    in_queue_[root] = true;
    while (!q.empty()) {
      const Vertex v = q.front();
      q.pop();
      for (Vertex w : g_.adjacency()[v]) {
        if (base_[v] == base_[w] || mate_[v] == w) continue;
        if (w == root || (mate_[w] != kNone && parent_[mate_[w]] != kNone)) {
          contract(v, w, q);
        } else if (parent_[w] == kNone) {
          parent_[w] = v;
          if (mate_[w] == kNone) {
            // flip matched edges along the alternating path back to the root
            Vertex u = w;
            while (u != kNone) {
              const Vertex pv = parent_[u];
              const Vertex next = mate_[pv];
              mate_[u] = pv;
              mate_[pv] = u;
              u = next;
            }
            return;
          }
          if (!in_queue_[mate_[w]]) {
            in_queue_[mate_[w]] = true;
            q.push(mate_[w]);
          }
        }
      }
    }
  }

  const Graph& g_;
  std::size_t n_;
  std::vector<Vertex> mate_;
  std::vector<Vertex> parent_;
  std::vector<Vertex> base_;
  std::vector<bool> in_queue_;
  std::vector<bool> in_blossom_;
};

// Reconstructs one optimal matching from the subset dp table.
Matching brute_force_matching(const Graph& g, std::int64_t cap) {
  check_brute_cap(g.n(), cap);
  Matching m;
  if (g.n() <= 1) return m;
  std::vector<std::uint32_t> nbr_mask(static_cast<std::size_t>(g.n()), 0);
  for (const Edge& e : g.edges()) {
    nbr_mask[e.u] |= 1u << e.v;
    nbr_mask[e.v] |= 1u << e.u;
  }
  const auto dp = subset_matching_dp(g);
  std::uint32_t mask = static_cast<std::uint32_t>(dp.size() - 1);
  while (mask) {
    const int v = std::countr_zero(mask);
    const std::uint32_t rest = mask & (mask - 1);
    if (dp[mask] == dp[rest]) {
      mask = rest;
      continue;
    }
    std::uint32_t candidates = nbr_mask[v] & rest;
    while (candidates) {
      const int u = std::countr_zero(candidates);
      candidates &= candidates - 1;
      if (dp[mask] == 1 + dp[rest & ~(1u << u)]) {
        m.edges.push_back({static_cast<Vertex>(v), static_cast<Vertex>(u)});
        mask = rest & ~(1u << u);
        break;
      }
    }
  }
  return m;
}

}  // namespace

Matching max_matching_bipartite(const Graph& g) {
  if (!g.has_sides())
    raise(Errc::not_bipartite, "bipartite matcher requires a bipartition labeling");
  for (const Edge& e : g.edges())
    if (g.sides()[e.u] == g.sides()[e.v])
      raise(Errc::not_bipartite, "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                     ") does not cross the partition");
  return hopcroft_karp(g, g.sides());
}

Matching max_matching_general(const Graph& g) { return BlossomSolver(g).solve(); }

Matching max_matching(const Graph& g) {
  if (g.has_sides()) {
    bool labels_valid = true;
    for (const Edge& e : g.edges())
      if (g.sides()[e.u] == g.sides()[e.v]) {
        labels_valid = false;
        break;
      }
    if (labels_valid) return hopcroft_karp(g, g.sides());
  }
  if (auto coloring = two_color(g)) return hopcroft_karp(g, *coloring);
  return max_matching_general(g);
}

Matching max_matching_with(const Graph& g, std::optional<MatcherKind> kind) {
  if (!kind) return max_matching(g);
  switch (*kind) {
    case MatcherKind::BipartiteAugmenting: return max_matching_bipartite(g);
    case MatcherKind::Blossom: return max_matching_general(g);
    case MatcherKind::BruteForce: return brute_force_matching(g, 16);
    case MatcherKind::Greedy:
      raise(Errc::invalid_matcher, "greedy is a baseline, not an exact matcher");
  }
  raise(Errc::invalid_matcher, "unknown matcher kind");
}

}  // namespace rsm
