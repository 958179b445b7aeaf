#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "rsmatch/error.hpp"

namespace rsm {

using Vertex = std::uint32_t;

struct Edge {
  Vertex u{0};
  Vertex v{0};

  /// Unordered-pair key: identical for (u,v) and (v,u).
  std::uint64_t key() const {
    const Vertex lo = u < v ? u : v;
    const Vertex hi = u < v ? v : u;
    return (static_cast<std::uint64_t>(lo) << 32) | hi;
  }
  Edge normalized() const { return u <= v ? *this : Edge{v, u}; }
};

inline bool operator==(const Edge& a, const Edge& b) { return a.key() == b.key(); }

enum class Side : std::uint8_t { Left = 0, Right = 1 };

/// Undirected simple graph on vertices 0..n-1 with an optional bipartition
/// labeling. Immutable after construction; construction does not validate
/// (see validate()), parsing and generation do.
class Graph {
public:
  Graph() = default;
  Graph(std::int64_t n, std::vector<Edge> edges, std::optional<std::vector<Side>> sides = std::nullopt);

  std::int64_t n() const { return n_; }
  std::int64_t m() const { return static_cast<std::int64_t>(edges_.size()); }
  std::span<const Edge> edges() const { return edges_; }
  const std::vector<std::vector<Vertex>>& adjacency() const { return adj_; }
  bool has_edge(Vertex u, Vertex v) const { return keys_.count(Edge{u, v}.key()) != 0; }

  bool has_sides() const { return sides_.has_value(); }
  const std::vector<Side>& sides() const { return *sides_; }

private:
  std::int64_t n_{0};
  std::vector<Edge> edges_;
  std::optional<std::vector<Side>> sides_;
  std::vector<std::vector<Vertex>> adj_;
  std::unordered_set<std::uint64_t> keys_;
};

struct ParseOptions {
  enum class Header { Auto, Present, Absent };
  Header header{Header::Auto};
  /// strict: duplicate edges are an error. lenient (default): duplicates are
  /// silently dropped, keeping the first occurrence.
  bool strict{false};
};

/// Edge-list format: optional first line "n m"; then "u v" lines; '#' starts
/// a comment; blank lines ignored; LF or CRLF. Throws Error on bad input.
Graph parse_edge_list(std::string_view text, const ParseOptions& opts = {});

/// Writes the header line followed by one "u v" line per edge, LF endings.
std::string serialize_edge_list(const Graph& g);

enum class ViolationKind { SelfLoop, DuplicateEdge, EndpointOutOfRange, PartitionViolation };

struct Violation {
  ViolationKind kind;
  Edge edge;
  std::string describe() const;
};

/// Returns every invariant violation; empty means valid.
std::vector<Violation> validate(const Graph& g);

/// Graph on n vertices whose edge set is the deduplicated union of h and x.
/// First occurrence order is preserved. Throws on endpoints >= n.
Graph subgraph_union(std::span<const Edge> h, std::span<const Edge> x, std::int64_t n,
                     std::optional<std::vector<Side>> sides = std::nullopt);

struct Matching {
  std::vector<Edge> edges;
  std::int64_t size() const { return static_cast<std::int64_t>(edges.size()); }
};

}  // namespace rsm
