#include "dkcore/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>

#include "dkcore/rng.hpp"

namespace dkcore {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  std::vector<std::size_t> degree(n, 0);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) throw std::out_of_range("edge endpoint outside node range");
    if (u == v) continue;
    ++degree[u];
    ++degree[v];
  }

  Graph g;
  g.offsets_.assign(n + 1, 0);
  for (std::size_t u = 0; u < n; ++u) g.offsets_[u + 1] = g.offsets_[u] + degree[u];
  std::vector<NodeId> raw(g.offsets_[n]);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    raw[cursor[u]++] = v;
    raw[cursor[v]++] = u;
  }

  // Sort and dedup each list, then compact.
  std::vector<std::size_t> offsets(n + 1, 0);
  std::size_t out = 0;
  for (std::size_t u = 0; u < n; ++u) {
    auto first = raw.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u]);
    auto last = raw.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u + 1]);
    std::sort(first, last);
    last = std::unique(first, last);
    offsets[u] = out;
    for (auto it = first; it != last; ++it) raw[out++] = *it;
  }
  offsets[n] = out;
  raw.resize(out);
  raw.shrink_to_fit();
  g.offsets_ = std::move(offsets);
  g.targets_ = std::move(raw);
  return g;
}

Graph Graph::with_labels(std::vector<std::string> labels) && {
  if (labels.size() != num_nodes()) throw std::invalid_argument("label count differs from node count");
  label_index_.clear();
  label_index_.reserve(labels.size());
  for (std::size_t u = 0; u < labels.size(); ++u) {
    if (!label_index_.emplace(labels[u], static_cast<NodeId>(u)).second) {
      throw std::invalid_argument("duplicate node label '" + labels[u] + "'");
    }
  }
  labels_ = std::move(labels);
  return std::move(*this);
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  return neighbor_index(u, v).has_value();
}

std::optional<std::size_t> Graph::neighbor_index(NodeId u, NodeId v) const {
  const auto adj = neighbors(u);
  const auto it = std::lower_bound(adj.begin(), adj.end(), v);
  if (it == adj.end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - adj.begin());
}

std::string Graph::label(NodeId u) const {
  return labels_.empty() ? std::to_string(u) : labels_[u];
}

std::optional<NodeId> Graph::find(std::string_view label) const {
  if (!labels_.empty()) {
    const auto it = label_index_.find(std::string(label));
    if (it == label_index_.end()) return std::nullopt;
    return it->second;
  }
  NodeId id = 0;
  const auto* end = label.data() + label.size();
  const auto [ptr, ec] = std::from_chars(label.data(), end, id);
  if (ec != std::errc{} || ptr != end || id >= num_nodes()) return std::nullopt;
  return id;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> result;
  result.reserve(num_edges());
  for (NodeId u = 0; u < num_nodes(); ++u) {
    for (NodeId v : neighbors(u)) {
      if (u < v) result.emplace_back(u, v);
    }
  }
  return result;
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

// Canonical decimal: digits only, no leading zero unless the number is 0.
std::optional<std::uint64_t> canonical_decimal(std::string_view token) {
  if (token.empty() || (token.size() > 1 && token[0] == '0')) return std::nullopt;
  std::uint64_t value = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

// Recognizes the SNAP header "# Nodes: N Edges: M" (case-insensitive key).
std::optional<std::size_t> nodes_header(std::string_view line) {
  const auto tokens = split_tokens(line.substr(1));
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    std::string key(tokens[i]);
    std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::tolower(c); });
    if (key == "nodes:") {
      if (auto value = canonical_decimal(tokens[i + 1])) return static_cast<std::size_t>(*value);
    }
  }
  return std::nullopt;
}

}  // namespace

Graph parse_edge_list(std::string_view text, const ParseOptions& options) {
  std::vector<std::pair<std::string_view, std::string_view>> arcs;
  std::optional<std::size_t> header_nodes;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    std::size_t first = 0;
    while (first < line.size() && is_space(line[first])) ++first;
    if (first == line.size()) continue;
    if (line[first] == '#') {
      if (!header_nodes) header_nodes = nodes_header(line.substr(first));
      continue;
    }
    const auto tokens = split_tokens(line);
    if (tokens.size() != 2) {
      throw ParseError(line_no, "expected two node tokens, found " + std::to_string(tokens.size()));
    }
    arcs.emplace_back(tokens[0], tokens[1]);
  }

  // Both modes reduce to the same simple undirected graph: an arc (u, v)
  // contributes {u, v}, and the reverse arc collapses onto it.
  static_cast<void>(options.mode);

  std::size_t n = std::max(header_nodes.value_or(0), options.min_nodes.value_or(0));
  std::vector<Edge> edges;
  edges.reserve(arcs.size());

  bool identity = header_nodes.has_value();
  if (identity) {
    for (const auto& [a, b] : arcs) {
      const auto u = canonical_decimal(a);
      const auto v = canonical_decimal(b);
      if (!u || !v || *u >= *header_nodes || *v >= *header_nodes) {
        identity = false;
        break;
      }
      edges.emplace_back(static_cast<NodeId>(*u), static_cast<NodeId>(*v));
    }
  }
  if (identity) return Graph::from_edges(n, edges);

  edges.clear();
  std::unordered_map<std::string_view, NodeId> ids;
  std::vector<std::string> labels;
  auto intern = [&](std::string_view token) {
    const auto [it, inserted] = ids.emplace(token, static_cast<NodeId>(labels.size()));
    if (inserted) labels.emplace_back(token);
    return it->second;
  };
  for (const auto& [a, b] : arcs) {
    const NodeId u = intern(a);
    const NodeId v = intern(b);
    edges.emplace_back(u, v);
  }
  // Padded nodes are labelled by their id; skip any string already taken.
  for (std::size_t next = labels.size(); labels.size() < n; ++next) {
    std::string candidate = std::to_string(next);
    if (!ids.contains(candidate)) labels.push_back(std::move(candidate));
  }
  n = labels.size();
  return Graph::from_edges(n, edges).with_labels(std::move(labels));
}

Graph parse_edge_list(std::istream& in, const ParseOptions& options) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (in.bad()) throw std::runtime_error("failed to read edge list");
  return parse_edge_list(std::string_view(text), options);
}

void write_edge_list(std::ostream& out, const Graph& g, bool use_labels) {
  out << "# Nodes: " << g.num_nodes() << " Edges: " << g.num_edges() << '\n';
  for (const auto& [u, v] : g.edges()) {
    if (use_labels) {
      out << g.label(u) << '\t' << g.label(v) << '\n';
    } else {
      out << u << '\t' << v << '\n';
    }
  }
}

Graph gen_worst_case(std::size_t n) {
  if (n < 5) throw std::domain_error("worst-case family requires n >= 5");
  // Work in the 1-based numbering of the construction, shift on insert.
  std::vector<Edge> edges;
  auto link = [&](std::size_t a, std::size_t b) {
    edges.emplace_back(static_cast<NodeId>(a - 1), static_cast<NodeId>(b - 1));
  };
  for (std::size_t i = 1; i < n; ++i) {
    if (i != n - 3) link(n, i);
  }
  for (std::size_t i = 1; i <= n - 2; ++i) link(i, i + 1);
  link(n - 3, n - 1);
  return Graph::from_edges(n, edges);
}

Graph gen_chain(std::size_t n) {
  if (n < 1) throw std::domain_error("chain requires n >= 1");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(i + 1));
  return Graph::from_edges(n, edges);
}

Graph gen_random(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("edge probability must lie in [0, 1]");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (rng.unit() < p) edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
    }
  }
  return Graph::from_edges(n, edges);
}

}  // namespace dkcore
