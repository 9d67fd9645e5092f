#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "lchp/error.hpp"
#include "lchp/placement.hpp"
#include "oracles.hpp"

using namespace lchp;

namespace {

Topology path3() {
  const std::pair<NodeId, NodeId> e[] = {{0, 1}, {1, 2}};
  return Topology::from_edges(3, e);
}

Topology single(std::uint32_t buffer) {
  return Topology::from_edges(1, std::span<const std::pair<NodeId, NodeId>>{})
      .with_uniform_buffer(buffer);
}

void check_capacity(const Topology& t, const Placement& pl) {
  for (NodeId v = 0; v < t.size(); ++v) {
    const auto& c = pl.contents(v);
    REQUIRE(c.size() <= t.buffer(v));
    REQUIRE(std::set<Rank>(c.begin(), c.end()).size() == c.size());
  }
}

}  // namespace

TEST_CASE("place_by_centrality") {
  SUBCASE("path, degree, ascending") {
    const auto t = path3();
    const auto pl = place_by_centrality(t, 10, degree_centrality(t), Order::ascending);
    CHECK(pl.contents(0) == std::vector<Rank>{1});
    CHECK(pl.contents(2) == std::vector<Rank>{2});
    CHECK(pl.contents(1) == std::vector<Rank>{3});
    CHECK(pl.policy() == Policy::lchp);
  }
  SUBCASE("path, degree, descending") {
    const auto t = path3();
    const auto pl = place_by_centrality(t, 10, degree_centrality(t), Order::descending);
    CHECK(pl.contents(1) == std::vector<Rank>{1});
    CHECK(pl.contents(0) == std::vector<Rank>{2});
    CHECK(pl.contents(2) == std::vector<Rank>{3});
    CHECK(pl.policy() == Policy::hchp);
  }
  SUBCASE("tie-break by descending id") {
    const auto t = path3();
    const auto pl = place_by_centrality(t, 10, degree_centrality(t), Order::ascending,
                                        TieBreak::descending_id);
    CHECK(pl.contents(2) == std::vector<Rank>{1});
    CHECK(pl.contents(0) == std::vector<Rank>{2});
  }
  SUBCASE("single node, buffer 2, N=5") {
    const auto t = single(2);
    const auto pl = place_by_centrality(t, 5, degree_centrality(t), Order::ascending);
    CHECK(pl.contents(0) == std::vector<Rank>{1, 2});
  }
  SUBCASE("catalog smaller than capacity") {
    const auto t = Topology::lattice(3).with_uniform_buffer(2);
    const auto pl = place_by_centrality(t, 5, 2, Order::ascending);
    CHECK(pl.cached_items() == 5);
    check_capacity(t, pl);
  }
  CHECK_THROWS_AS(place_by_centrality(path3(), 0, 1, Order::ascending), InvalidParameter);
}

TEST_CASE("place_greedy") {
  SUBCASE("binary tree depth 4, leaf user, h=2") {
    const auto t = Topology::regular_tree(2, 4);
    const auto user = leaf_user(t);
    const auto pl = place_greedy(t, user, 100, 2);
    const NodeId parent = (user.node - 1) / 2;
    const NodeId grandparent = (parent - 1) / 2;
    const NodeId sibling = user.node + 1;
    CHECK(pl.contents(user.node) == std::vector<Rank>{1});
    CHECK(pl.contents(parent) == std::vector<Rank>{2});
    CHECK(pl.contents(sibling) == std::vector<Rank>{3});
    CHECK(pl.contents(grandparent) == std::vector<Rank>{3});
    CHECK(pl.cached_items() == 4);
  }
  SUBCASE("h=0 fills only the attachment") {
    const auto t = Topology::lattice(5);
    const auto user = mid_boundary_user(t);
    const auto pl = place_greedy(t, user, 100, 0);
    CHECK(pl.contents(user.node) == std::vector<Rank>{1});
    CHECK(pl.cached_items() == 1);
  }
  SUBCASE("larger buffers take consecutive blocks per ring") {
    auto t = Topology::lattice(5).with_uniform_buffer(2);
    const auto user = mid_boundary_user(t);
    const auto pl = place_greedy(t, user, 100, 1);
    CHECK(pl.contents(user.node) == std::vector<Rank>{1, 2});
    for (NodeId w : t.neighbors(user.node)) CHECK(pl.contents(w) == std::vector<Rank>{3, 4});
  }
  SUBCASE("catalog runs out") {
    const auto t = Topology::lattice(5);
    const auto pl = place_greedy(t, mid_boundary_user(t), 2, 3);
    for (NodeId v = 0; v < t.size(); ++v)
      for (Rank x : pl.contents(v)) CHECK(x <= 2);
  }
  CHECK_THROWS_AS(place_greedy(path3(), {0, 7}, 10, 1), InvalidParameter);
}

TEST_CASE("algorithm1 hand traces") {
  SUBCASE("path a-b-c, h=1") {
    const auto r = algorithm1(path3(), 10, 1);
    REQUIRE(r.rounds.size() == 2);
    CHECK(r.rounds[0] == std::vector<NodeId>{0, 2});
    CHECK(r.rounds[1] == std::vector<NodeId>{1});
    CHECK(r.placement.contents(0) == std::vector<Rank>{1});
    CHECK(r.placement.contents(2) == std::vector<Rank>{1});
    CHECK(r.placement.contents(1) == std::vector<Rank>{2});
  }
  SUBCASE("single node, buffer 3, N=2") {
    const auto r = algorithm1(single(3), 2, 1);
    CHECK(r.placement.contents(0) == std::vector<Rank>{1, 2});
    CHECK(r.rounds.size() == 1);
  }
  SUBCASE("sequential mode acts one node per round") {
    const auto r = algorithm1(path3(), 10, 1, {RoundMode::sequential, TieBreak::ascending_id});
    REQUIRE(r.rounds.size() == 3);
    for (const auto& round : r.rounds) CHECK(round.size() == 1);
    // Nodes 0 and 2 are two hops apart, so both still see rank 1 missing.
    CHECK(r.placement.contents(0) == std::vector<Rank>{1});
    CHECK(r.placement.contents(2) == std::vector<Rank>{1});
    CHECK(r.placement.contents(1) == std::vector<Rank>{2});
  }
  SUBCASE("zero-buffer nodes never act") {
    const auto t = path3().with_buffers({0, 1, 0});
    const auto r = algorithm1(t, 10, 1);
    CHECK(r.placement.contents(1) == std::vector<Rank>{1});
    CHECK(r.placement.cached_items() == 1);
  }
}

TEST_CASE("algorithm1 on the 7x7 lattice") {
  const auto t = Topology::lattice(7);
  const std::size_t n = t.size();
  for (RoundMode mode : {RoundMode::synchronous, RoundMode::sequential}) {
    const auto r = algorithm1(t, 100, 2, {mode, TieBreak::ascending_id});
    CHECK(r.rounds.size() <= n);
    std::vector<std::size_t> round_of(n);
    for (std::size_t k = 0; k < r.rounds.size(); ++k)
      for (NodeId v : r.rounds[k]) round_of[v] = k;
    // Corners have the lowest CCC and act first.
    CHECK(r.rounds[0] == (mode == RoundMode::synchronous ? std::vector<NodeId>{0, 6, 42, 48}
                                                         : std::vector<NodeId>{0}));
    // Nodes within h hops of each other see each other, so they only share a
    // rank when they acted in the same round.
    for (NodeId v = 0; v < n; ++v) {
      const auto s = neighborhood(t, v, 2);
      for (NodeId w : s.members) {
        if (w == v || round_of[w] == round_of[v]) continue;
        for (Rank x : r.placement.contents(v)) CHECK_FALSE(r.placement.holds(w, x));
      }
    }
  }
  // Members of one neighborhood can be 2h apart and repeat a rank.
  const auto r = algorithm1(t, 100, 2);
  std::multiset<Rank> row0;
  for (std::size_t c = 0; c < 7; ++c)
    for (Rank x : r.placement.contents(t.at(0, c))) row0.insert(x);
  CHECK(row0.count(1) > 1);
}

TEST_CASE("algorithm1 properties on random graphs") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 40;
    const auto t = oracle::random_buffers(
        rng, oracle::random_graph(rng, n, 2.5 / static_cast<double>(n)), 0, 3);
    const std::size_t h = 1 + rng() % 3;
    const std::size_t catalog = 1 + rng() % 60;
    const auto r = algorithm1(t, catalog, h);
    check_capacity(t, r.placement);
    REQUIRE(r.rounds.size() <= t.size());

    // Nodes acting together are never inside each other's neighborhood, and
    // each acting node adds only ranks absent from its neighborhood so far.
    Placement replay(t.size(), Policy::algorithm1, h);
    for (const auto& movers : r.rounds) {
      for (NodeId v : movers) {
        const auto s = neighborhood(t, v, h);
        for (NodeId w : movers) REQUIRE((w == v || !s.contains(w)));
        for (Rank x : r.placement.contents(v)) REQUIRE_FALSE(availability(replay, x, s));
      }
      for (NodeId v : movers)
        for (Rank x : r.placement.contents(v)) replay.store(v, x);
    }
    CHECK(replay.cached_items() == r.placement.cached_items());

    // Determinism.
    const auto again = algorithm1(t, catalog, h);
    for (NodeId v = 0; v < t.size(); ++v) REQUIRE(again.placement.contents(v) == r.placement.contents(v));
  }
}

TEST_CASE("capacity invariant holds for every policy") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng() % 30;
    const auto t = oracle::random_buffers(rng, oracle::random_connected_graph(rng, n, 0.1), 0, 4);
    const std::size_t h = 1 + rng() % 3;
    const std::size_t catalog = 1 + rng() % 80;
    check_capacity(t, place_by_centrality(t, catalog, h, Order::ascending));
    check_capacity(t, place_by_centrality(t, catalog, h, Order::descending));
    check_capacity(t, place_by_centrality(t, catalog, betweenness_centrality(t), Order::ascending));
    check_capacity(t, place_greedy(t, {0, rng() % n}, catalog, h));
    check_capacity(t, algorithm1(t, catalog, h).placement);
  }
}

TEST_CASE("availability") {
  const auto t = Topology::lattice(7);
  const NodeId center = t.at(3, 3);
  Placement empty(t.size(), Policy::lchp, 2);
  CHECK_FALSE(availability(empty, 1, neighborhood(t, center, 2)));

  Placement pl(t.size(), Policy::lchp, 2);
  pl.store(center, 4);
  pl.store(t.at(3, 6), 5);
  CHECK(availability(pl, 4, neighborhood(t, center, 2)));
  CHECK_FALSE(availability(pl, 5, neighborhood(t, center, 2)));
  CHECK(availability(pl, 5, neighborhood(t, center, 3)));
  CHECK_THROWS_AS(pl.store(center, 4), InvalidParameter);
}

TEST_CASE("placement CSV and policy names") {
  const auto r = algorithm1(path3(), 10, 1);
  std::ostringstream out;
  write_placement_csv(out, r.placement);
  CHECK(out.str() == "# policy=algorithm1 h=1\nnode,slot,content_rank\n0,0,1\n1,0,2\n2,0,1\n");
  CHECK(parse_policy("lchp") == Policy::lchp);
  CHECK(parse_policy("HCHP") == Policy::hchp);
  CHECK(parse_policy("Greedy") == Policy::greedy);
  CHECK_THROWS_AS(parse_policy("random"), InvalidParameter);
}
