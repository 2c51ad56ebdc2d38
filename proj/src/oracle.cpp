#include "dkcore/oracle.hpp"

#include <algorithm>
#include <istream>
#include <iterator>
#include <limits>
#include <ostream>
#include <sstream>

namespace dkcore {

CorenessMap coreness_exact(const Graph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<Coreness> deg(n);
  std::size_t max_deg = 0;
  for (NodeId u = 0; u < n; ++u) {
    deg[u] = static_cast<Coreness>(g.degree(u));
    max_deg = std::max<std::size_t>(max_deg, deg[u]);
  }

  // bin_start[d]: first position in `order` of the bucket for degree d.
  std::vector<std::size_t> bin_start(max_deg + 2, 0);
  for (NodeId u = 0; u < n; ++u) ++bin_start[deg[u] + 1];
  for (std::size_t d = 1; d < bin_start.size(); ++d) bin_start[d] += bin_start[d - 1];

  std::vector<NodeId> order(n);
  std::vector<std::size_t> pos(n);
  {
    std::vector<std::size_t> fill(bin_start.begin(), bin_start.end() - 1);
    for (NodeId u = 0; u < n; ++u) {
      pos[u] = fill[deg[u]]++;
      order[pos[u]] = u;
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const NodeId u = order[i];
    for (NodeId v : g.neighbors(u)) {
      if (deg[v] <= deg[u]) continue;
      // Swap v with the first node of its bucket, then shrink the bucket.
      const Coreness dv = deg[v];
      const std::size_t pv = pos[v];
      const std::size_t pw = bin_start[dv];
      const NodeId w = order[pw];
      if (v != w) {
        order[pv] = w;
        pos[w] = pv;
        order[pw] = v;
        pos[v] = pw;
      }
      ++bin_start[dv];
      --deg[v];
    }
  }
  return CorenessMap(std::move(deg));
}

LocalityVerdict verify_locality(const Graph& g, const CorenessMap& c) {
  if (c.size() != g.num_nodes()) {
    throw std::invalid_argument("coreness map covers " + std::to_string(c.size()) + " nodes, graph has " +
                                std::to_string(g.num_nodes()));
  }
  LocalityVerdict verdict;
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    const Coreness k = c[u];
    std::size_t at_least_k = 0;
    std::size_t above_k = 0;
    for (NodeId v : g.neighbors(u)) {
      if (c[v] >= k) ++at_least_k;
      if (c[v] > k) ++above_k;
    }
    if (at_least_k < k || above_k > k) verdict.violations.push_back(u);
  }
  return verdict;
}

std::string DecompositionStats::k_avg_text() const {
  if (nodes == 0) return "0.00";
  const std::uint64_t hundredths = (k_sum * 200 + nodes) / (2 * nodes);
  std::string frac = std::to_string(hundredths % 100);
  if (frac.size() < 2) frac.insert(0, "0");
  return std::to_string(hundredths / 100) + "." + frac;
}

DecompositionStats stats(const Graph& g, const CorenessMap& c) {
  if (c.size() != g.num_nodes()) throw std::invalid_argument("coreness map does not cover the graph");
  DecompositionStats s;
  s.nodes = g.num_nodes();
  s.edges = g.num_edges();
  if (s.nodes == 0) return s;

  s.delta_min = std::numeric_limits<std::size_t>::max();
  for (NodeId u = 0; u < s.nodes; ++u) {
    const std::size_t d = g.degree(u);
    s.k_max = std::max(s.k_max, c[u]);
    s.k_sum += c[u];
    s.delta_max = std::max(s.delta_max, d);
    if (d < s.delta_min) {
      s.delta_min = d;
      s.min_degree_count = 1;
    } else if (d == s.delta_min) {
      ++s.min_degree_count;
    }
  }
  return s;
}

void write_coreness(std::ostream& out, const Graph& g, const CorenessMap& c) {
  const auto s = stats(g, c);
  out << "# N=" << s.nodes << " M=" << s.edges << " k_max=" << s.k_max << '\n';
  for (NodeId u = 0; u < g.num_nodes(); ++u) out << g.label(u) << '\t' << c[u] << '\n';
}

CorenessMap read_coreness(std::istream& in, const Graph& g) {
  constexpr Coreness kUnset = std::numeric_limits<Coreness>::max();
  std::vector<Coreness> values(g.num_nodes(), kUnset);

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string node;
    if (!(fields >> node) || node.front() == '#') continue;
    long long value = -1;
    std::string extra;
    if (!(fields >> value) || (fields >> extra) || value < 0 || value >= kUnset) {
      throw ParseError(line_no, "expected 'node<TAB>coreness'");
    }
    const auto u = g.find(node);
    if (!u) throw ParseError(line_no, "unknown node '" + node + "'");
    if (values[*u] != kUnset) throw ParseError(line_no, "node '" + node + "' listed twice");
    values[*u] = static_cast<Coreness>(value);
  }
  const auto missing = std::find(values.begin(), values.end(), kUnset);
  if (missing != values.end()) {
    throw std::invalid_argument("coreness file lacks node '" +
                                g.label(static_cast<NodeId>(missing - values.begin())) + "'");
  }
  return CorenessMap(std::move(values));
}

}  // namespace dkcore
