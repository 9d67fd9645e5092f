#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "lchp/centrality.hpp"
#include "lchp/demand.hpp"
#include "lchp/topology.hpp"

namespace lchp {

enum class Policy { lchp, hchp, greedy, algorithm1 };

std::string to_string(Policy p);
Policy parse_policy(const std::string& name);

/// Node visiting order for centrality-driven placement.
enum class Order { ascending, descending };

/// How equal centrality scores are ordered.
enum class TieBreak { ascending_id, descending_id };

/// Content ranks cached at every node, in the order they were stored.
class Placement {
 public:
  Placement() = default;
  Placement(std::size_t nodes, Policy policy, std::size_t radius)
      : slots_(nodes), policy_(policy), radius_(radius) {}

  std::size_t size() const noexcept { return slots_.size(); }
  Policy policy() const noexcept { return policy_; }
  std::size_t radius() const noexcept { return radius_; }

  const std::vector<Rank>& contents(NodeId v) const { return slots_.at(v); }
  bool holds(NodeId v, Rank x) const;
  std::size_t cached_items() const noexcept;

  /// Appends `x` to node v. Rejects duplicates within the node.
  void store(NodeId v, Rank x);

 private:
  std::vector<std::vector<Rank>> slots_;
  Policy policy_ = Policy::lchp;
  std::size_t radius_ = 0;
};

/// Visits nodes by centrality (ascending = LCHP, descending = HCHP) and fills
/// each buffer with the next most popular contents. Each rank is placed at
/// most once across the network.
Placement place_by_centrality(const Topology& t, std::size_t catalog_size,
                              const CentralityTable& centrality, Order order,
                              TieBreak tiebreak = TieBreak::ascending_id);

/// Same, with CCC of radius h as the centrality.
Placement place_by_centrality(const Topology& t, std::size_t catalog_size, std::size_t h,
                              Order order, TieBreak tiebreak = TieBreak::ascending_id);

/// Hop-ring greedy around one user: every cache at distance k <= h holds the
/// most popular contents not already held by a ring closer than k. With unit
/// buffers the attachment caches rank 1, ring 1 rank 2, ring 2 rank 3, ...
Placement place_greedy(const Topology& t, const UserAttachment& user,
                       std::size_t catalog_size, std::size_t h);

enum class RoundMode {
  /// Every node that is the strict minimum of its own neighborhood acts.
  synchronous,
  /// Only the single global minimum acts per round.
  sequential,
};

struct Algorithm1Options {
  RoundMode mode = RoundMode::synchronous;
  TieBreak tiebreak = TieBreak::ascending_id;
};

struct Algorithm1Result {
  Placement placement;
  /// Nodes that filled their buffer in each round.
  std::vector<std::vector<NodeId>> rounds;
};

/// Distributed CCC placement. A node whose (CCC, tie-break) key is strictly
/// lowest within its h-hop neighborhood fills its buffer with the most popular
/// contents absent from that neighborhood, then reports +infinity.
Algorithm1Result algorithm1(const Topology& t, std::size_t catalog_size, std::size_t h,
                            const Algorithm1Options& options = {});

/// 1 iff some member of `s` caches x.
bool availability(const Placement& pl, Rank x, const Neighborhood& s);

/// CSV "node,slot,content_rank" with policy and h in a comment line.
void write_placement_csv(std::ostream& out, const Placement& pl);

}  // namespace lchp
