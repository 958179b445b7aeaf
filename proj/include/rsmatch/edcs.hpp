#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "rsmatch/graph.hpp"
#include "rsmatch/rational.hpp"

namespace rsm {

struct RemovalTrace {
  Edge inserted;
  std::vector<Edge> removed;  // in removal order
  std::int64_t moves_used{0};  // 1 + removed.size()
};

/// Mutable subgraph H with the bounded edge-degree invariant: after every
/// public operation, deg(u) + deg(v) <= beta for every edge (u,v) in H.
///
/// Two potential sums are tracked incrementally, doubled to stay in integer
/// arithmetic: 2*Phi = (2*beta - 1) * sum_v deg(v) - 2 * sum_v deg(v)^2.
/// Every deletion of an edge with edge-degree > beta and every insertion at
/// edge-degree < beta - 1 raises 2*Phi by at least 2, which bounds the total
/// number of moves by n * beta^2.
class EdcsState {
public:
  /// Empty H. beta >= 2, lambda in (0,1); throws Errc::bad_params otherwise.
  /// checks enables per-move and per-operation self-verification (recomputed
  /// potential vs cached, full bounded-edge-degree scans); throws
  /// Errc::check_failed on any mismatch.
  EdcsState(std::int64_t n, std::int64_t beta, Rational lambda, bool checks = false);

  /// Builds an arbitrary H for offline verification; does not enforce the
  /// bounded edge-degree invariant. Rejects self-loops, duplicates and
  /// out-of-range endpoints. moves seeds the move counter (for re-creating
  /// dump trailers); construction itself is not counted.
  static EdcsState from_edges(std::int64_t n, std::int64_t beta, Rational lambda,
                              std::span<const Edge> edges, std::int64_t moves = 0);

  std::int64_t n() const { return n_; }
  std::int64_t beta() const { return beta_; }
  const Rational& lambda() const { return lambda_; }
  std::int64_t edge_count() const { return edge_count_; }
  /// High-water mark of |H|, including mid-rebalance transients.
  std::int64_t peak_edge_count() const { return peak_edge_count_; }
  std::int64_t moves() const { return moves_; }
  std::int64_t move_budget() const { return n_ * beta_ * beta_; }

  std::int64_t degree(Vertex v) const { return static_cast<std::int64_t>(adj_[v].size()); }
  bool contains(Vertex u, Vertex v) const;

  /// Strict test deg(u) + deg(v) < beta * (1 - lambda), evaluated by integer
  /// cross-multiplication.
  bool is_underfull(Vertex u, Vertex v) const;

  /// Adds (u,v), then repeatedly removes edges whose edge-degree exceeds beta
  /// until none remains. Candidates are the edges incident to u and v, queued
  /// FIFO (u's neighbors in adjacency order, then v's) and re-checked at pop
  /// time; removals only lower degrees, so no other edge can become overfull.
  /// Throws Errc::not_underfull / Errc::already_present on precondition
  /// violations.
  RemovalTrace insert_and_rebalance(Vertex u, Vertex v);

  /// Raw moves of the insertion/deletion game, exposed for stress testing the
  /// move bound. Insertion requires deg(u) + deg(v) < beta - 1; deletion
  /// requires an H-edge with edge-degree > beta.
  void apply_insertion_move(Vertex u, Vertex v);
  void apply_deletion_move(Vertex u, Vertex v);

  /// Cached doubled potential 2*Phi.
  std::int64_t potential2x() const { return phi2x_; }
  /// From-scratch recomputation of 2*Phi; cross-checks the cached value.
  std::int64_t recompute_potential2x() const;
  double potential() const { return static_cast<double>(phi2x_) / 2.0; }

  /// Snapshot of H's edges, normalized and sorted.
  std::vector<Edge> edges() const;
  /// Largest deg(u) + deg(v) over edges of H; 0 when H is empty.
  std::int64_t max_edge_degree() const;

  /// One line per H-edge "u v deg(u) deg(v)" (normalized, sorted), then a
  /// trailer "moves=<k> phi2x=<2Phi>".
  void dump(std::ostream& out) const;

  struct CheckStats {
    std::int64_t move_checks{0};
    std::int64_t full_scans{0};
    std::int64_t min_move_delta_phi2x{INT64_MAX};  // over all checked moves
  };
  bool checks_enabled() const { return checks_; }
  const CheckStats& check_stats() const { return stats_; }

private:
  void do_insert(Vertex u, Vertex v);
  void do_remove(Vertex u, Vertex v);
  void check_move_delta(std::int64_t before);
  void check_public_invariants() const;

  std::int64_t n_{0};
  std::int64_t beta_{2};
  Rational lambda_;
  std::vector<std::vector<Vertex>> adj_;
  std::int64_t edge_count_{0};
  std::int64_t peak_edge_count_{0};
  std::int64_t moves_{0};
  std::int64_t phi2x_{0};
  bool checks_{false};
  mutable CheckStats stats_;
};

struct EdcsReport {
  std::vector<Edge> p1_violations;  // H-edges with edge-degree > beta
  std::vector<Edge> p2_violations;  // (g \ H)-edges with edge-degree < beta(1-lambda)
  bool ok() const { return p1_violations.empty() && p2_violations.empty(); }
};

/// Lists P1 and P2 violations of H against g; an empty report means H is a
/// (beta, lambda)-EDCS of g. Throws Errc::h_not_subgraph when H has an edge
/// outside g.
EdcsReport verify_edcs(const EdcsState& h, const Graph& g);

struct DumpData {
  std::vector<Edge> edges;
  std::vector<std::pair<std::int64_t, std::int64_t>> claimed_degrees;  // per edge line
  std::int64_t moves{0};
  std::int64_t phi2x{0};
};

/// Parses the dump format written by EdcsState::dump.
DumpData parse_edcs_dump(std::string_view text);

}  // namespace rsm
