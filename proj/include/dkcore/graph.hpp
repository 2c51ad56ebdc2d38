#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dkcore {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Immutable undirected simple graph in compressed adjacency form.
///
/// Node ids are dense in [0, num_nodes()). Each adjacency list is sorted and
/// free of duplicates and self-loops. Graphs parsed from text keep the
/// original tokens as labels; generated graphs are labelled by their ids.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph over n nodes. Self-loops are dropped and parallel edges
  /// collapse. Throws std::out_of_range if an endpoint is >= n.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  /// Attaches external labels, one per node, in id order.
  Graph with_labels(std::vector<std::string> labels) &&;

  std::size_t num_nodes() const noexcept { return offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return targets_.size() / 2; }

  std::size_t degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }
  std::span<const NodeId> neighbors(NodeId u) const {
    return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
  }
  bool has_edge(NodeId u, NodeId v) const;

  /// Position of v in neighbors(u), if adjacent.
  std::optional<std::size_t> neighbor_index(NodeId u, NodeId v) const;

  bool has_labels() const noexcept { return !labels_.empty(); }
  std::string label(NodeId u) const;
  std::optional<NodeId> find(std::string_view label) const;

  /// Every undirected edge once, as (u, v) with u < v, sorted.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.offsets_ == b.offsets_ && a.targets_ == b.targets_;
  }

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> targets_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> label_index_;
};

enum class EdgeMode {
  undirected,           // each line is one undirected edge
  symmetrize_directed,  // each line is an arc; both directions collapse to one edge
};

struct ParseOptions {
  EdgeMode mode = EdgeMode::undirected;
  // Pads the id space so that at least this many nodes exist.
  std::optional<std::size_t> min_nodes;
};

/// Reads SNAP-style edge-list text.
///
/// Lines starting with '#' are comments and blank lines are skipped. Every
/// other line must hold exactly two whitespace-separated tokens. Tokens are
/// mapped to dense ids in order of first appearance, except when a SNAP
/// "# Nodes: N" header is present and every token is a canonical decimal
/// below N; then the tokens are used as ids directly, which makes
/// write_edge_list / parse_edge_list round trips preserve ids exactly.
/// The header's N (and ParseOptions::min_nodes) pad the id space with
/// isolated nodes.
Graph parse_edge_list(std::istream& in, const ParseOptions& options = {});
Graph parse_edge_list(std::string_view text, const ParseOptions& options = {});

/// Writes "# Nodes: N Edges: M" followed by one "u<TAB>v" line per edge,
/// sorted by internal (u, v) with u < v.
void write_edge_list(std::ostream& out, const Graph& g, bool use_labels = false);

/// Worst-case family for the one-to-one protocol, nodes 1..n mapped to
/// ids 0..n-1: node n (the hub) is adjacent to all nodes except n-3, nodes
/// i and i+1 are adjacent for i = 1..n-2, and n-3 is adjacent to n-1.
/// Throws std::domain_error for n < 5.
Graph gen_worst_case(std::size_t n);

/// Path 0-1-...-(n-1). Throws std::domain_error for n < 1.
Graph gen_chain(std::size_t n);

/// Erdős–Rényi G(n, p). Pairs (u, v), u < v, are visited in lexicographic
/// order; each is kept when the next draw of a std::mt19937_64 seeded with
/// `seed`, scaled to [0, 1) by its top 53 bits, is below p. The output
/// sequence of mt19937_64 is fixed by the C++ standard, so the graph is the
/// same on every conforming platform. Throws std::domain_error if p is
/// outside [0, 1].
Graph gen_random(std::size_t n, double p, std::uint64_t seed);

}  // namespace dkcore
