#include "rsmatch/graph.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace rsm {

Graph::Graph(std::int64_t n, std::vector<Edge> edges, std::optional<std::vector<Side>> sides)
    : n_(n), edges_(std::move(edges)), sides_(std::move(sides)) {
  adj_.resize(static_cast<std::size_t>(std::max<std::int64_t>(n_, 0)));
  keys_.reserve(edges_.size() * 2);
  for (const Edge& e : edges_) {
    if (e.u < adj_.size() && e.v < adj_.size() && e.u != e.v) {
      adj_[e.u].push_back(e.v);
      adj_[e.v].push_back(e.u);
    }
    keys_.insert(e.key());
  }
}

namespace {

struct Line {
  std::size_t number;  // 1-based
  std::string_view text;
};

std::vector<Line> data_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto first = line.find_first_not_of(" \t");
    if (first != std::string_view::npos) {
      const auto last = line.find_last_not_of(" \t");
      out.push_back({lineno, line.substr(first, last - first + 1)});
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return out;
}

bool parse_two_ints(std::string_view s, std::int64_t& a, std::int64_t& b) {
  const char* p = s.data();
  const char* end = s.data() + s.size();
  auto r1 = std::from_chars(p, end, a);
  if (r1.ec != std::errc{}) return false;
  p = r1.ptr;
  while (p < end && (*p == ' ' || *p == '\t')) ++p;
  if (p == r1.ptr || p == end) return false;
  auto r2 = std::from_chars(p, end, b);
  if (r2.ec != std::errc{}) return false;
  p = r2.ptr;
  while (p < end && (*p == ' ' || *p == '\t')) ++p;
  return p == end && a >= 0 && b >= 0;
}

}  // namespace

Graph parse_edge_list(std::string_view text, const ParseOptions& opts) {
  const std::vector<Line> lines = data_lines(text);

  bool has_header = false;
  switch (opts.header) {
    case ParseOptions::Header::Present:
      has_header = true;
      break;
    case ParseOptions::Header::Absent:
      has_header = false;
      break;
    case ParseOptions::Header::Auto: {
      // First data line "a b" is a header iff the remaining line count equals b
      // and every endpoint fits below a.
      if (!lines.empty()) {
        std::int64_t a = 0, b = 0;
        if (parse_two_ints(lines[0].text, a, b) &&
            static_cast<std::int64_t>(lines.size()) - 1 == b) {
          bool endpoints_fit = true;
          for (std::size_t i = 1; i < lines.size(); ++i) {
            std::int64_t u = 0, v = 0;
            if (!parse_two_ints(lines[i].text, u, v) || u >= a || v >= a) {
              endpoints_fit = false;
              break;
            }
          }
          has_header = endpoints_fit;
        }
      }
      break;
    }
  }

  std::int64_t declared_n = -1;
  std::size_t start = 0;
  if (has_header) {
    if (lines.empty()) raise(Errc::malformed_line, "missing header line");
    std::int64_t a = 0, b = 0;
    if (!parse_two_ints(lines[0].text, a, b))
      raise(Errc::malformed_line, "line " + std::to_string(lines[0].number) + ": bad header");
    declared_n = a;
    start = 1;
  }

  std::vector<Edge> edges;
  edges.reserve(lines.size() - start);
  std::unordered_set<std::uint64_t> seen;
  std::int64_t max_endpoint = -1;
  for (std::size_t i = start; i < lines.size(); ++i) {
    std::int64_t u = 0, v = 0;
    if (!parse_two_ints(lines[i].text, u, v))
      raise(Errc::malformed_line, "line " + std::to_string(lines[i].number) + ": expected \"u v\"");
    if (u == v)
      raise(Errc::self_loop, "line " + std::to_string(lines[i].number) + ": self-loop at vertex " +
                                 std::to_string(u));
    if (declared_n >= 0 && (u >= declared_n || v >= declared_n))
      raise(Errc::endpoint_out_of_range, "line " + std::to_string(lines[i].number) + ": endpoint " +
                                             std::to_string(std::max(u, v)) + " >= n=" +
                                             std::to_string(declared_n));
    if (u > UINT32_MAX || v > UINT32_MAX)
      raise(Errc::endpoint_out_of_range,
            "line " + std::to_string(lines[i].number) + ": endpoint exceeds vertex id range");
    const Edge e{static_cast<Vertex>(u), static_cast<Vertex>(v)};
    if (!seen.insert(e.key()).second) {
      if (opts.strict)
        raise(Errc::duplicate_edge, "line " + std::to_string(lines[i].number) + ": duplicate edge (" +
                                        std::to_string(u) + "," + std::to_string(v) + ")");
      continue;  // lenient: keep first occurrence
    }
    edges.push_back(e);
    max_endpoint = std::max({max_endpoint, u, v});
  }

  const std::int64_t n = declared_n >= 0 ? declared_n : max_endpoint + 1;
  return Graph(n, std::move(edges));
}

std::string serialize_edge_list(const Graph& g) {
  std::ostringstream out;
  out << g.n() << ' ' << g.m() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

std::string Violation::describe() const {
  std::ostringstream out;
  switch (kind) {
    case ViolationKind::SelfLoop:
      out << "self-loop at vertex " << edge.u;
      break;
    case ViolationKind::DuplicateEdge:
      out << "duplicate edge (" << edge.u << "," << edge.v << ")";
      break;
    case ViolationKind::EndpointOutOfRange:
      out << "endpoint out of range on edge (" << edge.u << "," << edge.v << ")";
      break;
    case ViolationKind::PartitionViolation:
      out << "same-side edge (" << edge.u << "," << edge.v << ")";
      break;
  }
  return out.str();
}

std::vector<Violation> validate(const Graph& g) {
  std::vector<Violation> out;
  std::unordered_set<std::uint64_t> seen;
  for (const Edge& e : g.edges()) {
    if (e.u == e.v) {
      out.push_back({ViolationKind::SelfLoop, e});
      continue;
    }
    if (e.u >= g.n() || e.v >= g.n()) {
      out.push_back({ViolationKind::EndpointOutOfRange, e});
      continue;
    }
    if (!seen.insert(e.key()).second) out.push_back({ViolationKind::DuplicateEdge, e});
    if (g.has_sides() && g.sides()[e.u] == g.sides()[e.v])
      out.push_back({ViolationKind::PartitionViolation, e});
  }
  return out;
}

Graph subgraph_union(std::span<const Edge> h, std::span<const Edge> x, std::int64_t n,
                     std::optional<std::vector<Side>> sides) {
  std::vector<Edge> edges;
  edges.reserve(h.size() + x.size());
  std::unordered_set<std::uint64_t> seen;
  for (std::span<const Edge> part : {h, x}) {
    for (const Edge& e : part) {
      if (e.u >= n || e.v >= n)
        raise(Errc::endpoint_out_of_range, "union edge (" + std::to_string(e.u) + "," +
                                               std::to_string(e.v) + ") exceeds n=" + std::to_string(n));
      if (seen.insert(e.key()).second) edges.push_back(e);
    }
  }
  return Graph(n, std::move(edges), std::move(sides));
}

}  // namespace rsm
