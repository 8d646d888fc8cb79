#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "erc20graph/bytes.hpp"
#include "erc20graph/errors.hpp"
#include "erc20graph/ingest.hpp"
#include "erc20graph/uint256.hpp"

namespace erc20graph {

using NodeId = std::uint32_t;

struct Edge {
  NodeId from = 0;
  NodeId to = 0;
  UInt256 value;
  std::uint64_t block = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Directed multigraph of one token's transfers inside one block window.
// Node ids index `nodes` in order of first appearance along `edges`.
struct TokenGraph {
  Address token;
  BlockWindow window;
  std::vector<Address> nodes;
  std::vector<Edge> edges;

  std::size_t num_nodes() const noexcept { return nodes.size(); }
  std::size_t num_edges() const noexcept { return edges.size(); }
  bool empty() const noexcept { return edges.empty(); }

  friend bool operator==(const TokenGraph&, const TokenGraph&) = default;
};

// Incremental builder: interns endpoint addresses to dense ids.
class TokenGraphBuilder {
 public:
  TokenGraphBuilder(Address token, BlockWindow window) { graph_.token = token; graph_.window = window; }

  void add(const Address& from, const Address& to, const UInt256& value, std::uint64_t block) {
    NodeId f = intern(from);
    NodeId t = intern(to);
    graph_.edges.push_back({f, t, value, block});
  }

  TokenGraph finish() && {
    index_.clear();
    return std::move(graph_);
  }

 private:
  NodeId intern(const Address& a) {
    auto [it, inserted] = index_.try_emplace(a, static_cast<NodeId>(graph_.nodes.size()));
    if (inserted) graph_.nodes.push_back(a);
    return it->second;
  }

  TokenGraph graph_;
  std::unordered_map<Address, NodeId> index_;
};

// One graph per distinct token. Events must be in (block, logIndex) order,
// which partition_windows guarantees.
inline std::map<Address, TokenGraph> build_graphs(const std::vector<TransferEvent>& events, BlockWindow window) {
  std::unordered_map<Address, TokenGraphBuilder> builders;
  for (const auto& e : events) {
    auto it = builders.find(e.token);
    if (it == builders.end()) it = builders.emplace(e.token, TokenGraphBuilder(e.token, window)).first;
    it->second.add(e.from, e.to, e.value, e.block);
  }
  std::map<Address, TokenGraph> out;
  for (auto& [token, b] : builders) out.emplace(token, std::move(b).finish());
  return out;
}

// Union by size with path halving over dense ids.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1), count_(n) {
    std::iota(parent_.begin(), parent_.end(), 0u);
  }

  std::uint32_t find(std::uint32_t x) noexcept {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Returns true if two distinct sets were merged.
  bool unite(std::uint32_t a, std::uint32_t b) noexcept {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --count_;
    return true;
  }

  std::size_t count() const noexcept { return count_; }
  std::size_t size() const noexcept { return parent_.size(); }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
  std::size_t count_;
};

struct ComponentSummary {
  std::size_t count = 0;
  // sizes[c] = node count of component c; ids ordered by smallest member id.
  std::vector<std::size_t> sizes;
  // membership[node] = component id.
  std::vector<std::uint32_t> membership;
};

inline ComponentSummary weak_components(const TokenGraph& graph) {
  if (graph.nodes.empty()) throw EmptyGraphError("weak_components on an empty graph");
  DisjointSets sets(graph.nodes.size());
  for (const auto& e : graph.edges) sets.unite(e.from, e.to);

  ComponentSummary out;
  out.count = sets.count();
  out.membership.resize(graph.nodes.size());
  std::vector<std::uint32_t> root_to_id(graph.nodes.size(), UINT32_MAX);
  for (std::uint32_t v = 0; v < graph.nodes.size(); ++v) {
    auto r = sets.find(v);
    if (root_to_id[r] == UINT32_MAX) {
      root_to_id[r] = static_cast<std::uint32_t>(out.sizes.size());
      out.sizes.push_back(0);
    }
    out.membership[v] = root_to_id[r];
    ++out.sizes[root_to_id[r]];
  }
  return out;
}

// Multiplicity-counting degrees; a self-loop adds one to each side.
struct DegreeStats {
  std::vector<std::size_t> in;
  std::vector<std::size_t> out;

  std::size_t total(NodeId v) const noexcept { return in[v] + out[v]; }
};

inline DegreeStats degree_stats(const TokenGraph& graph) {
  DegreeStats d;
  d.in.assign(graph.nodes.size(), 0);
  d.out.assign(graph.nodes.size(), 0);
  for (const auto& e : graph.edges) {
    ++d.out[e.from];
    ++d.in[e.to];
  }
  return d;
}

// Edge-list export for external plotting tools.
inline void write_graph_edgelist(std::ostream& out, const TokenGraph& g) {
  out << "# token=" << g.token.hex() << " window=" << g.window.start << '-' << g.window.end << '\n';
  for (const auto& e : g.edges)
    out << g.nodes[e.from].hex() << '\t' << g.nodes[e.to].hex() << '\t' << to_decimal(e.value) << '\t' << e.block
        << '\n';
}

}  // namespace erc20graph
