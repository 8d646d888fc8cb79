#include <gtest/gtest.h>

#include <numeric>
#include <sstream>

#include "erc20graph/graph.hpp"
#include "erc20graph/rng.hpp"
#include "oracles.hpp"

using namespace erc20graph;

namespace {

Address addr(std::uint32_t id) {
  Address a;
  a.bytes[16] = static_cast<std::uint8_t>(id >> 24);
  a.bytes[17] = static_cast<std::uint8_t>(id >> 16);
  a.bytes[18] = static_cast<std::uint8_t>(id >> 8);
  a.bytes[19] = static_cast<std::uint8_t>(id);
  a.bytes[0] = 0x5a;  // keep clear of the null address
  return a;
}

TransferEvent ev(std::uint32_t token, std::uint32_t from, std::uint32_t to, std::uint64_t block = 1,
                 std::uint64_t value = 1) {
  TransferEvent e;
  e.token = addr(1000 + token);
  e.from = addr(from);
  e.to = addr(to);
  e.block = block;
  e.value = value;
  return e;
}

const BlockWindow kWindow{0, 100'000};

TokenGraph graph_of(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  TokenGraphBuilder b(addr(1000), kWindow);
  std::uint64_t block = 1;
  for (auto [f, t] : edges) b.add(addr(f), addr(t), 1, block++);
  return std::move(b).finish();
}

std::vector<std::size_t> sorted(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST(BuildGraphs, PartitionsByToken) {
  auto g = build_graphs({ev(1, 1, 2), ev(2, 3, 4)}, kWindow);
  ASSERT_EQ(g.size(), 2u);
  for (const auto& [token, graph] : g) {
    EXPECT_EQ(graph.token, token);
    EXPECT_EQ(graph.num_nodes(), 2u);
    EXPECT_EQ(graph.num_edges(), 1u);
    EXPECT_EQ(graph.window, kWindow);
  }
}

TEST(BuildGraphs, ParallelEdgesAreKept) {
  auto g = build_graphs({ev(1, 1, 2), ev(1, 1, 2)}, kWindow);
  const auto& t = g.begin()->second;
  EXPECT_EQ(t.num_nodes(), 2u);
  ASSERT_EQ(t.num_edges(), 2u);
  EXPECT_EQ(t.edges[0].from, t.edges[1].from);
  EXPECT_EQ(t.edges[0].to, t.edges[1].to);
}

TEST(BuildGraphs, SelfLoop) {
  auto g = build_graphs({ev(1, 7, 7)}, kWindow);
  const auto& t = g.begin()->second;
  EXPECT_EQ(t.num_nodes(), 1u);
  ASSERT_EQ(t.num_edges(), 1u);
  EXPECT_EQ(t.edges[0].from, t.edges[0].to);
}

TEST(BuildGraphs, NullAddressIsOrdinaryNode) {
  auto e = ev(1, 0, 2);
  e.from = kNullAddress;
  auto g = build_graphs({e, ev(1, 2, 3)}, kWindow);
  const auto& t = g.begin()->second;
  EXPECT_EQ(t.num_nodes(), 3u);
  EXPECT_EQ(t.nodes[0], kNullAddress);
}

// Every event becomes exactly one edge, nodes are exactly the endpoints and
// edge order follows event order.
TEST(BuildGraphs, EventsMapOneToOne) {
  Rng rng(5);
  std::vector<TransferEvent> events;
  for (std::uint64_t i = 0; i < 2000; ++i)
    events.push_back(ev(static_cast<std::uint32_t>(rng.uniform_int(0, 9)), static_cast<std::uint32_t>(rng.uniform_int(0, 300)),
                        static_cast<std::uint32_t>(rng.uniform_int(0, 300)), i, i));
  auto graphs = build_graphs(events, kWindow);
  std::size_t edges = 0;
  for (const auto& [token, g] : graphs) {
    edges += g.num_edges();
    std::set<Address> endpoints;
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      endpoints.insert(g.nodes[g.edges[i].from]);
      endpoints.insert(g.nodes[g.edges[i].to]);
      if (i) EXPECT_LT(g.edges[i - 1].block, g.edges[i].block);
      EXPECT_EQ(g.edges[i].value, g.edges[i].block);  // value tags the source event
    }
    EXPECT_EQ(endpoints, std::set<Address>(g.nodes.begin(), g.nodes.end()));
    EXPECT_EQ(endpoints.size(), g.num_nodes());
  }
  EXPECT_EQ(edges, events.size());
  EXPECT_EQ(build_graphs(events, kWindow), graphs);
}

TEST(WeakComponents, Chain) {
  auto c = weak_components(graph_of({{1, 2}, {2, 3}}));
  EXPECT_EQ(c.count, 1u);
  EXPECT_EQ(c.sizes, std::vector<std::size_t>{3});
}

TEST(WeakComponents, TwoPairs) {
  auto c = weak_components(graph_of({{1, 2}, {3, 4}}));
  EXPECT_EQ(c.count, 2u);
  EXPECT_EQ(sorted(c.sizes), (std::vector<std::size_t>{2, 2}));
  EXPECT_EQ(c.membership[0], c.membership[1]);
  EXPECT_NE(c.membership[0], c.membership[2]);
}

TEST(WeakComponents, DirectionIgnored) {
  auto c = weak_components(graph_of({{1, 2}, {3, 2}}));
  EXPECT_EQ(c.count, 1u);
}

TEST(WeakComponents, EmptyGraphIsError) {
  TokenGraph empty;
  EXPECT_THROW(weak_components(empty), EmptyGraphError);
}

TEST(WeakComponents, MatchesBfsOracle40Nodes) {
  Rng rng(40);
  std::vector<std::pair<int, int>> raw;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  // Touch every node once via a self-loop so node ids match the oracle's.
  for (std::uint32_t v = 0; v < 40; ++v) edges.emplace_back(v, v);
  for (int i = 0; i < 30; ++i) {
    auto a = static_cast<std::uint32_t>(rng.uniform_int(0, 39));
    auto b = static_cast<std::uint32_t>(rng.uniform_int(0, 39));
    edges.emplace_back(a, b);
  }
  for (auto [a, b] : edges) raw.emplace_back(static_cast<int>(a), static_cast<int>(b));
  auto c = weak_components(graph_of(edges));
  auto o = oracle::bfs_components(40, raw);
  EXPECT_EQ(c.count, o.count);
  EXPECT_EQ(sorted(c.sizes), o.sorted_sizes);
}

// Invariants on 500 random multigraphs: oracle agreement, sum(sizes) = n,
// membership consistent with edges, handshake, refinement.
TEST(WeakComponents, RandomGraphProperties) {
  Rng rng(500);
  for (int trial = 0; trial < 500; ++trial) {
    auto n = static_cast<std::uint32_t>(rng.uniform_int(1, 50));
    auto m = rng.uniform_int(0, 200);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t v = 0; v < n; ++v) edges.emplace_back(v, v);
    for (std::uint64_t i = 0; i < m; ++i)
      edges.emplace_back(static_cast<std::uint32_t>(rng.uniform_int(0, n - 1)),
                         static_cast<std::uint32_t>(rng.uniform_int(0, n - 1)));
    auto g = graph_of(edges);
    ASSERT_EQ(g.num_nodes(), n);
    auto c = weak_components(g);

    std::vector<std::pair<int, int>> raw;
    for (auto [a, b] : edges) raw.emplace_back(static_cast<int>(a), static_cast<int>(b));
    auto o = oracle::bfs_components(n, raw);
    ASSERT_EQ(c.count, o.count);
    ASSERT_EQ(sorted(c.sizes), o.sorted_sizes);
    EXPECT_EQ(std::accumulate(c.sizes.begin(), c.sizes.end(), std::size_t{0}), n);
    EXPECT_EQ(c.sizes.size(), c.count);
    for (const auto& e : g.edges) EXPECT_EQ(c.membership[e.from], c.membership[e.to]);

    auto d = degree_stats(g);
    EXPECT_EQ(std::accumulate(d.in.begin(), d.in.end(), std::size_t{0}), g.num_edges());
    EXPECT_EQ(std::accumulate(d.out.begin(), d.out.end(), std::size_t{0}), g.num_edges());

    // Refinement: one extra edge lowers the count by one iff it bridges two
    // components, and never raises it.
    auto a = static_cast<std::uint32_t>(rng.uniform_int(0, n - 1));
    auto b = static_cast<std::uint32_t>(rng.uniform_int(0, n - 1));
    edges.emplace_back(a, b);
    auto c2 = weak_components(graph_of(edges));
    if (c.membership[a] == c.membership[b]) EXPECT_EQ(c2.count, c.count);
    else EXPECT_EQ(c2.count + 1, c.count);
  }
}

TEST(DegreeStats, Star) {
  auto g = graph_of({{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
  auto d = degree_stats(g);
  EXPECT_EQ(d.out[0], 5u);
  EXPECT_EQ(d.in[0], 0u);
  for (NodeId v = 1; v <= 5; ++v) {
    EXPECT_EQ(d.in[v], 1u);
    EXPECT_EQ(d.out[v], 0u);
  }
}

TEST(DegreeStats, MultiplicityCounts) {
  auto d = degree_stats(graph_of({{1, 2}, {1, 2}}));
  EXPECT_EQ(d.out[0], 2u);
  EXPECT_EQ(d.in[1], 2u);
}

TEST(DegreeStats, SelfLoopCountsOnBothSides) {
  auto d = degree_stats(graph_of({{1, 1}}));
  EXPECT_EQ(d.in[0], 1u);
  EXPECT_EQ(d.out[0], 1u);
  EXPECT_EQ(d.total(0), 2u);
}

TEST(GraphExport, EdgeListFormat) {
  TokenGraphBuilder b(addr(1000), BlockWindow{18'000'000, 18'100'000});
  b.add(addr(1), addr(2), 10, 18'000'005);
  std::ostringstream out;
  write_graph_edgelist(out, std::move(b).finish());
  EXPECT_EQ(out.str(), "# token=" + addr(1000).hex() + " window=18000000-18100000\n" + addr(1).hex() + "\t" +
                           addr(2).hex() + "\t10\t18000005\n");
}
