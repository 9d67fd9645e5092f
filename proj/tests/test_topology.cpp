#include <doctest.h>

#include <random>
#include <sstream>

#include "lchp/error.hpp"
#include "lchp/topology.hpp"
#include "oracles.hpp"

using namespace lchp;

TEST_CASE("lattice construction") {
  SUBCASE("n=2 is a 4-cycle") {
    const auto t = Topology::lattice(2);
    CHECK(t.size() == 4);
    CHECK(t.edge_count() == 4);
  }
  SUBCASE("n=3 degrees") {
    const auto t = Topology::lattice(3);
    CHECK(t.degree(t.at(1, 1)) == 4);
    for (auto [r, c] : {std::pair{0, 0}, {0, 2}, {2, 0}, {2, 2}}) CHECK(t.degree(t.at(r, c)) == 2);
    CHECK(t.degree(t.at(0, 1)) == 3);
  }
  SUBCASE("default unit buffers") {
    const auto t = Topology::lattice(4);
    for (NodeId v = 0; v < t.size(); ++v) CHECK(t.buffer(v) == 1);
  }
  CHECK_THROWS_AS(Topology::lattice(1), InvalidParameter);
  CHECK_THROWS_AS(Topology::lattice(0), InvalidParameter);
}

TEST_CASE("regular tree construction") {
  CHECK(Topology::regular_tree(2, 1).size() == 3);
  CHECK(Topology::regular_tree(3, 2).size() == 13);
  const auto t = Topology::regular_tree(2, 4);
  CHECK(t.size() == 31);
  CHECK(t.level(t.first_leaf()) == 4);
  CHECK(t.degree(0) == 2);
  CHECK(t.degree(1) == 3);
  CHECK(t.degree(t.first_leaf()) == 1);
  CHECK_THROWS_AS(Topology::regular_tree(1, 3), InvalidParameter);
  CHECK_THROWS_AS(Topology::regular_tree(2, 0), InvalidParameter);
}

TEST_CASE("reachable caches around the analysed users") {
  SUBCASE("lattice n=7 mid-boundary, h=2: nine caches") {
    const auto t = Topology::lattice(7);
    const auto s = neighborhood(t, mid_boundary_user(t).node, 2);
    CHECK(s.members.size() == 9);
  }
  SUBCASE("binary tree depth 4, leaf user, h=2: distances {0,1,2,2}") {
    const auto t = Topology::regular_tree(2, 4);
    auto s = neighborhood(t, leaf_user(t).node, 2);
    std::sort(s.distances.begin(), s.distances.end());
    CHECK(s.distances == std::vector<std::size_t>{0, 1, 2, 2});
  }
  SUBCASE("binary tree depth 5, leaf user, h=3: distances {0,1,2,2,3,3}") {
    const auto t = Topology::regular_tree(2, 5);
    auto s = neighborhood(t, leaf_user(t).node, 3);
    std::sort(s.distances.begin(), s.distances.end());
    CHECK(s.distances == std::vector<std::size_t>{0, 1, 2, 2, 3, 3});
  }
}

TEST_CASE("hop distance") {
  const auto grid = Topology::lattice(3);
  CHECK(hop_distance(grid, grid.at(0, 0), grid.at(2, 2)) == Hops{4});
  const auto tree = Topology::regular_tree(2, 3);
  const NodeId leaf = tree.first_leaf();
  CHECK(hop_distance(tree, leaf, leaf + 1) == Hops{2});
  for (NodeId v = 0; v < tree.size(); ++v) CHECK(hop_distance(tree, v, v) == Hops{0});

  const std::pair<NodeId, NodeId> edges[] = {{0, 1}, {2, 3}};
  const auto split = Topology::from_edges(4, edges);
  CHECK_FALSE(hop_distance(split, 0, 3).has_value());
}

TEST_CASE("neighborhood basics") {
  const auto t = Topology::lattice(7);
  const NodeId center = t.at(3, 3);
  const auto s0 = neighborhood(t, center, 0);
  CHECK(s0.members == std::vector<NodeId>{center});
  CHECK(neighborhood(t, center, 1).members.size() == 5);
  const auto s2 = neighborhood(t, center, 2);
  CHECK(s2.contains(center));
  CHECK(s2.distances[std::find(s2.members.begin(), s2.members.end(), center) - s2.members.begin()] == 0);
}

TEST_CASE("lattice boundary reach is (h+1)^2 when n >= 2h+1") {
  for (std::size_t h = 1; h <= 6; ++h) {
    const auto t = Topology::lattice(2 * h + 1);
    CHECK(neighborhood(t, mid_boundary_user(t).node, h).members.size() == (h + 1) * (h + 1));
  }
}

TEST_CASE("distance properties on random graphs") {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng() % 49;
    const auto t = oracle::random_graph(rng, n, 3.0 / static_cast<double>(n));
    const auto ref = oracle::floyd_warshall(t);
    std::vector<std::vector<Hops>> d(n);
    for (NodeId a = 0; a < n; ++a) d[a] = bfs_distances(t, a);
    for (NodeId a = 0; a < n; ++a) {
      for (NodeId b = 0; b < n; ++b) {
        // BFS agrees with Floyd-Warshall, and unreachable is never a number.
        if (ref[a][b] == oracle::unreachable) REQUIRE_FALSE(d[a][b].has_value());
        else REQUIRE(d[a][b] == Hops{ref[a][b]});
        REQUIRE(d[a][b] == d[b][a]);
        for (NodeId c = 0; c < n; ++c)
          if (d[a][b] && d[b][c]) REQUIRE(d[a][c].has_value());
        if (d[a][b]) {
          for (NodeId c = 0; c < n; ++c)
            if (d[b][c]) REQUIRE(*d[a][c] <= *d[a][b] + *d[b][c]);
        }
      }
    }
    const NodeId v = rng() % n;
    for (std::size_t h = 0; h < 5; ++h) {
      const auto inner = neighborhood(t, v, h);
      const auto outer = neighborhood(t, v, h + 1);
      for (NodeId m : inner.members) REQUIRE(outer.contains(m));
      for (std::size_t i = 0; i < outer.members.size(); ++i)
        REQUIRE((outer.distances[i] <= h) == inner.contains(outer.members[i]));
    }
  }
}

TEST_CASE("edge list loading") {
  SUBCASE("path of three") {
    std::istringstream in("0 1\n1 2\n");
    const auto load = load_edge_list(in);
    CHECK(load.topology.size() == 3);
    CHECK(load.topology.kind() == TopologyKind::generic);
    CHECK(hop_distance(load.topology, 0, 2) == Hops{2});
    CHECK(load.warnings.empty());
  }
  SUBCASE("empty stream") {
    std::istringstream in("");
    CHECK_THROWS_AS(load_edge_list(in), EmptyGraph);
    std::istringstream comments("# nothing here\n\n");
    CHECK_THROWS_AS(load_edge_list(comments), EmptyGraph);
  }
  SUBCASE("labels are densified and buffers overridden") {
    std::istringstream in("# sparse labels\n10 40 3 0 # trailing comment\n40 7\n");
    const auto load = load_edge_list(in);
    const auto& t = load.topology;
    REQUIRE(t.size() == 3);
    CHECK(t.labels()[0] == 10);
    CHECK(t.labels()[1] == 40);
    CHECK(t.labels()[2] == 7);
    CHECK(t.buffer(0) == 3);
    CHECK(t.buffer(1) == 0);
    CHECK(t.buffer(2) == 1);
  }
  SUBCASE("duplicate edge warns") {
    std::istringstream in("0 1\n1 0\n");
    const auto load = load_edge_list(in);
    CHECK(load.topology.edge_count() == 1);
    REQUIRE(load.warnings.size() == 1);
    CHECK(load.warnings[0].find("line 2") != std::string::npos);
  }
  SUBCASE("errors carry the line number") {
    std::istringstream in("0 1\n1 x\n");
    try {
      load_edge_list(in);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
    std::istringstream three("0 1 2\n");
    CHECK_THROWS_AS(load_edge_list(three), ParseError);
    std::istringstream loop("0 1\n3 3\n");
    CHECK_THROWS_AS(load_edge_list(loop), ParseError);
    std::istringstream negative("0 -1\n");
    CHECK_THROWS_AS(load_edge_list(negative), ParseError);
  }
  SUBCASE("written lists load back to the same graph") {
    const auto tree = Topology::regular_tree(3, 3).with_uniform_buffer(2);
    std::stringstream buf;
    write_edge_list(buf, tree);
    const auto back = load_edge_list(buf).topology;
    REQUIRE(back.size() == tree.size());
    CHECK(back.edge_count() == tree.edge_count());
    for (NodeId v = 0; v < back.size(); ++v) {
      CHECK(back.buffer(v) == 2);
      const NodeId original = back.labels()[v];
      CHECK(back.degree(v) == tree.degree(original));
    }
  }
}

TEST_CASE("from_edges validation") {
  const std::pair<NodeId, NodeId> loop[] = {{1, 1}};
  CHECK_THROWS_AS(Topology::from_edges(2, loop), InvalidParameter);
  const std::pair<NodeId, NodeId> outside[] = {{0, 5}};
  CHECK_THROWS_AS(Topology::from_edges(2, outside), InvalidParameter);
  const std::pair<NodeId, NodeId> twice[] = {{0, 1}, {1, 0}};
  const auto t = Topology::from_edges(2, twice);
  CHECK(t.edge_count() == 1);
  CHECK(t.adjacent(0, 1));
  CHECK(t.adjacent(1, 0));
  CHECK_THROWS_AS(t.with_buffers({1}), InvalidParameter);
}
