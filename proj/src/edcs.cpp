#include "rsmatch/edcs.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <ostream>

namespace rsm {

EdcsState::EdcsState(std::int64_t n, std::int64_t beta, Rational lambda, bool checks)
    : n_(n), beta_(beta), lambda_(lambda), checks_(checks) {
  if (n < 0) raise(Errc::bad_params, "vertex count must be nonnegative");
  if (beta < 2) raise(Errc::bad_params, "beta must be >= 2, got " + std::to_string(beta));
  if (lambda.num <= 0 || !(lambda < Rational{1, 1}))
    raise(Errc::bad_params, "lambda must lie in (0,1), got " + lambda.str());
  // the move budget n*beta^2 and the doubled potential must stay inside int64
  if (static_cast<__int128>(std::max<std::int64_t>(n, 1)) * beta * beta > INT64_MAX / 2)
    raise(Errc::param_overflow,
          "n * beta^2 exceeds the potential accounting range, beta=" + std::to_string(beta));
  adj_.resize(static_cast<std::size_t>(n));
}

EdcsState EdcsState::from_edges(std::int64_t n, std::int64_t beta, Rational lambda,
                                std::span<const Edge> edges, std::int64_t moves) {
  EdcsState s(n, beta, lambda, false);
  for (const Edge& e : edges) {
    if (e.u == e.v) raise(Errc::bad_dump, "self-loop in H at vertex " + std::to_string(e.u));
    if (e.u >= n || e.v >= n)
      raise(Errc::bad_dump, "H edge endpoint out of range: (" + std::to_string(e.u) + "," +
                                std::to_string(e.v) + ")");
    if (s.contains(e.u, e.v))
      raise(Errc::bad_dump, "duplicate H edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
    s.do_insert(e.u, e.v);
  }
  s.moves_ = moves;
  return s;
}

bool EdcsState::contains(Vertex u, Vertex v) const {
  if (u >= adj_.size() || v >= adj_.size()) return false;
  const auto& shorter = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
  const Vertex target = adj_[u].size() <= adj_[v].size() ? v : u;
  return std::find(shorter.begin(), shorter.end(), target) != shorter.end();
}

bool EdcsState::is_underfull(Vertex u, Vertex v) const {
  if (u == v || u >= adj_.size() || v >= adj_.size())
    raise(Errc::bad_params, "is_underfull requires two distinct vertices below n");
  const std::int64_t sum = degree(u) + degree(v);
  // sum < beta * (1 - lambda)  <=>  sum * den < beta * (den - num)
  return static_cast<__int128>(sum) * lambda_.den <
         static_cast<__int128>(beta_) * (lambda_.den - lambda_.num);
}

void EdcsState::do_insert(Vertex u, Vertex v) {
  const std::int64_t pre_sum = degree(u) + degree(v);
  adj_[u].push_back(v);
  adj_[v].push_back(u);
  ++edge_count_;
  peak_edge_count_ = std::max(peak_edge_count_, edge_count_);
  ++moves_;
  // d2Phi = 2(2b-1) - 2*dT with dT = 2*pre_sum + 2
  phi2x_ += 4 * (beta_ - pre_sum) - 6;
}

void EdcsState::do_remove(Vertex u, Vertex v) {
  const std::int64_t pre_sum = degree(u) + degree(v);
  auto erase_ordered = [](std::vector<Vertex>& list, Vertex x) {
    list.erase(std::find(list.begin(), list.end(), x));
  };
  erase_ordered(adj_[u], v);
  erase_ordered(adj_[v], u);
  --edge_count_;
  ++moves_;
  phi2x_ += 4 * (pre_sum - beta_) - 2;
}

void EdcsState::check_move_delta(std::int64_t before) {
  ++stats_.move_checks;
  const std::int64_t recomputed = recompute_potential2x();
  if (recomputed != phi2x_)
    raise(Errc::check_failed, "cached potential " + std::to_string(phi2x_) +
                                  " != recomputed " + std::to_string(recomputed));
  stats_.min_move_delta_phi2x = std::min(stats_.min_move_delta_phi2x, phi2x_ - before);
}

void EdcsState::check_public_invariants() const {
  stats_.full_scans += 1;
  for (Vertex u = 0; u < adj_.size(); ++u) {
    if (degree(u) > beta_)
      raise(Errc::check_failed, "vertex " + std::to_string(u) + " exceeds degree beta");
    for (Vertex v : adj_[u]) {
      if (u < v && degree(u) + degree(v) > beta_)
        raise(Errc::check_failed, "edge (" + std::to_string(u) + "," + std::to_string(v) +
                                      ") has edge-degree > beta after rebalancing");
    }
  }
  if (phi2x_ < 0 || phi2x_ > 2 * n_ * beta_ * beta_)
    raise(Errc::check_failed, "potential out of range: " + std::to_string(phi2x_));
}

RemovalTrace EdcsState::insert_and_rebalance(Vertex u, Vertex v) {
  if (contains(u, v))
    raise(Errc::already_present,
          "edge (" + std::to_string(u) + "," + std::to_string(v) + ") already in H");
  if (!is_underfull(u, v))
    raise(Errc::not_underfull,
          "edge (" + std::to_string(u) + "," + std::to_string(v) + ") is not underfull");

  RemovalTrace trace;
  trace.inserted = Edge{u, v};

  std::int64_t before = phi2x_;
  do_insert(u, v);
  if (checks_) check_move_delta(before);

  // Only edges incident to u or v gained edge-degree; removals never raise
  // anyone's edge-degree, so this FIFO queue covers every overfull candidate.
  std::deque<Edge> queue;
  for (Vertex w : adj_[u]) queue.push_back({u, w});
  for (Vertex w : adj_[v])
    if (w != u) queue.push_back({v, w});

  while (!queue.empty()) {
    const Edge e = queue.front();
    queue.pop_front();
    if (!contains(e.u, e.v)) continue;
    if (degree(e.u) + degree(e.v) <= beta_) continue;
    before = phi2x_;
    do_remove(e.u, e.v);
    if (checks_) check_move_delta(before);
    trace.removed.push_back(e);
  }

  trace.moves_used = 1 + static_cast<std::int64_t>(trace.removed.size());
  if (checks_) check_public_invariants();
  return trace;
}

void EdcsState::apply_insertion_move(Vertex u, Vertex v) {
  if (u == v || u >= adj_.size() || v >= adj_.size())
    raise(Errc::bad_params, "insertion move requires two distinct vertices below n");
  if (contains(u, v))
    raise(Errc::already_present,
          "edge (" + std::to_string(u) + "," + std::to_string(v) + ") already in H");
  if (degree(u) + degree(v) >= beta_ - 1)
    raise(Errc::not_underfull, "insertion move requires deg(u)+deg(v) < beta-1");
  const std::int64_t before = phi2x_;
  do_insert(u, v);
  if (checks_) check_move_delta(before);
}

void EdcsState::apply_deletion_move(Vertex u, Vertex v) {
  if (!contains(u, v))
    raise(Errc::bad_params,
          "deletion move requires (" + std::to_string(u) + "," + std::to_string(v) + ") in H");
  if (degree(u) + degree(v) <= beta_)
    raise(Errc::bad_params, "deletion move requires edge-degree > beta");
  const std::int64_t before = phi2x_;
  do_remove(u, v);
  if (checks_) check_move_delta(before);
}

std::int64_t EdcsState::recompute_potential2x() const {
  // 2*Phi1 = (2b-1) * sum(deg); 2*Phi2 = 2 * sum(deg^2)
  std::int64_t deg_sum = 0;
  std::int64_t deg_sq_sum = 0;
  for (const auto& nbrs : adj_) {
    const std::int64_t d = static_cast<std::int64_t>(nbrs.size());
    deg_sum += d;
    deg_sq_sum += d * d;
  }
  return (2 * beta_ - 1) * deg_sum - 2 * deg_sq_sum;
}

std::vector<Edge> EdcsState::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(edge_count_));
  for (Vertex u = 0; u < adj_.size(); ++u)
    for (Vertex v : adj_[u])
      if (u < v) out.push_back({u, v});
  std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) { return a.key() < b.key(); });
  return out;
}

std::int64_t EdcsState::max_edge_degree() const {
  std::int64_t best = 0;
  for (Vertex u = 0; u < adj_.size(); ++u)
    for (Vertex v : adj_[u])
      if (u < v) best = std::max(best, degree(u) + degree(v));
  return best;
}

void EdcsState::dump(std::ostream& out) const {
  for (const Edge& e : edges())
    out << e.u << ' ' << e.v << ' ' << degree(e.u) << ' ' << degree(e.v) << '\n';
  out << "moves=" << moves_ << " phi2x=" << phi2x_ << '\n';
}

EdcsReport verify_edcs(const EdcsState& h, const Graph& g) {
  for (const Edge& e : h.edges())
    if (!g.has_edge(e.u, e.v))
      raise(Errc::h_not_subgraph, "H edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                      ") is not an edge of G");
  EdcsReport report;
  for (const Edge& e : g.edges()) {
    const std::int64_t sum = h.degree(e.u) + h.degree(e.v);
    if (h.contains(e.u, e.v)) {
      if (sum > h.beta()) report.p1_violations.push_back(e);
    } else {
      const bool underfull = static_cast<__int128>(sum) * h.lambda().den <
                             static_cast<__int128>(h.beta()) * (h.lambda().den - h.lambda().num);
      if (underfull) report.p2_violations.push_back(e);
    }
  }
  return report;
}

DumpData parse_edcs_dump(std::string_view text) {
  DumpData data;
  bool saw_trailer = false;
  std::size_t pos = 0;
  std::size_t lineno = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    if (line.empty()) continue;
    if (saw_trailer) raise(Errc::bad_dump, "content after trailer line");
    if (line.starts_with("moves=")) {
      const auto space = line.find(' ');
      if (space == std::string_view::npos || !line.substr(space + 1).starts_with("phi2x="))
        raise(Errc::bad_dump, "bad trailer at line " + std::to_string(lineno));
      const auto moves_text = line.substr(6, space - 6);
      const auto phi_text = line.substr(space + 7);
      auto r1 = std::from_chars(moves_text.data(), moves_text.data() + moves_text.size(), data.moves);
      auto r2 = std::from_chars(phi_text.data(), phi_text.data() + phi_text.size(), data.phi2x);
      if (r1.ec != std::errc{} || r2.ec != std::errc{})
        raise(Errc::bad_dump, "bad trailer numbers at line " + std::to_string(lineno));
      saw_trailer = true;
      continue;
    }
    std::int64_t fields[4];
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (int i = 0; i < 4; ++i) {
      while (p < end && *p == ' ') ++p;
      auto r = std::from_chars(p, end, fields[i]);
      if (r.ec != std::errc{})
        raise(Errc::bad_dump, "expected \"u v deg(u) deg(v)\" at line " + std::to_string(lineno));
      p = r.ptr;
    }
    while (p < end && *p == ' ') ++p;
    if (p != end) raise(Errc::bad_dump, "trailing text at line " + std::to_string(lineno));
    data.edges.push_back({static_cast<Vertex>(fields[0]), static_cast<Vertex>(fields[1])});
    data.claimed_degrees.emplace_back(fields[2], fields[3]);
  }
  if (!saw_trailer) raise(Errc::bad_dump, "missing trailer line");
  return data;
}

}  // namespace rsm
