#include "kforest/graph.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include "kforest/errors.hpp"

namespace kforest {

WeightedGraph::WeightedGraph(Vertex n, std::vector<Edge> edges, bool simple)
    : n_(n), edges_(std::move(edges)), simple_(simple) {
  if (n_ < 0) throw DomainError("WeightedGraph: negative vertex count");
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    Edge& e = edges_[i];
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u < 0 || e.v >= n_)
      throw DomainError("WeightedGraph: edge " + std::to_string(i) + " has an endpoint outside [0, n)");
    if (!(e.weight >= 0.0 && e.weight <= 1.0))
      throw DomainError("WeightedGraph: edge " + std::to_string(i) + " has weight outside [0, 1]");
    if (simple_ && e.u == e.v) throw DomainError("WeightedGraph: loop in a simple graph");
  }
  if (simple_) {
    std::vector<std::int64_t> keys;
    keys.reserve(edges_.size());
    for (const Edge& e : edges_) keys.push_back(static_cast<std::int64_t>(e.u) * n_ + e.v);
    std::sort(keys.begin(), keys.end());
    if (std::adjacent_find(keys.begin(), keys.end()) != keys.end())
      throw DomainError("WeightedGraph: parallel edges in a simple graph");
  }
}

WeightedGraph WeightedGraph::edge_subgraph(std::span<const EdgeId> ids) const {
  std::vector<Edge> sub;
  sub.reserve(ids.size());
  for (EdgeId id : ids) sub.push_back(edge(id));
  return WeightedGraph(n_, std::move(sub), simple_);
}

std::vector<std::vector<EdgeId>> WeightedGraph::incidence() const {
  std::vector<std::vector<EdgeId>> inc(static_cast<std::size_t>(n_));
  for (EdgeId i = 0; i < edge_count(); ++i) {
    const Edge& e = edges_[static_cast<std::size_t>(i)];
    inc[static_cast<std::size_t>(e.u)].push_back(i);
    inc[static_cast<std::size_t>(e.v)].push_back(i);
  }
  return inc;
}

std::vector<std::int64_t> WeightedGraph::degrees() const {
  std::vector<std::int64_t> d(static_cast<std::size_t>(n_), 0);
  for (const Edge& e : edges_) {
    ++d[static_cast<std::size_t>(e.u)];
    ++d[static_cast<std::size_t>(e.v)];
  }
  return d;
}

double WeightedGraph::total_weight() const noexcept {
  double s = 0.0;
  for (const Edge& e : edges_) s += e.weight;
  return s;
}

void write_edge_list(std::ostream& os, const WeightedGraph& g) {
  os << g.vertex_count() << ' ' << g.edge_count() << '\n';
  char buf[64];
  for (const Edge& e : g.edges()) {
    const auto res = std::to_chars(buf, buf + sizeof buf, e.weight);
    os << e.u << ' ' << e.v << ' ' << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)) << '\n';
  }
}

std::string to_edge_list_string(const WeightedGraph& g) {
  std::ostringstream os;
  write_edge_list(os, g);
  return os.str();
}

namespace {

template <class T>
T parse_field(std::string_view tok, std::size_t line) {
  T value{};
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
    throw FormatError("edge list line " + std::to_string(line) + ": cannot parse '" + std::string(tok) + "'");
  return value;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

WeightedGraph read_edge_list(std::istream& is) {
  std::string line;
  std::size_t lineno = 0;
  auto next_tokens = [&]() -> std::vector<std::string_view> {
    while (std::getline(is, line)) {
      ++lineno;
      auto toks = split_ws(line);
      if (!toks.empty() && toks[0].front() != '#') return toks;
    }
    return {};
  };
  auto header = next_tokens();
  if (header.size() != 2) throw FormatError("edge list: expected header 'n m'");
  const auto n = parse_field<Vertex>(header[0], lineno);
  const auto m = parse_field<std::int64_t>(header[1], lineno);
  if (n < 0 || m < 0) throw FormatError("edge list: negative header value");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  bool simple = true;
  for (std::int64_t i = 0; i < m; ++i) {
    auto toks = next_tokens();
    if (toks.empty()) throw FormatError("edge list: expected " + std::to_string(m) + " edges, found " + std::to_string(i));
    if (toks.size() != 2 && toks.size() != 3)
      throw FormatError("edge list line " + std::to_string(lineno) + ": expected 'u v weight'");
    Edge e;
    e.u = parse_field<Vertex>(toks[0], lineno);
    e.v = parse_field<Vertex>(toks[1], lineno);
    e.weight = toks.size() == 3 ? parse_field<double>(toks[2], lineno) : 1.0;
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
      throw FormatError("edge list line " + std::to_string(lineno) + ": vertex out of range");
    if (!(e.weight >= 0.0 && e.weight <= 1.0))
      throw FormatError("edge list line " + std::to_string(lineno) + ": weight outside [0, 1]");
    if (e.u == e.v) simple = false;
    edges.push_back(e);
  }
  if (simple) {
    std::vector<std::pair<Vertex, Vertex>> keys;
    for (const Edge& e : edges) keys.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
    std::sort(keys.begin(), keys.end());
    simple = std::adjacent_find(keys.begin(), keys.end()) == keys.end();
  }
  return WeightedGraph(n, std::move(edges), simple);
}

}  // namespace kforest
