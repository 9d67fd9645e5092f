#include "lchp/placement.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>

#include <fmt/format.h>

#include "lchp/error.hpp"

namespace lchp {

std::string to_string(Policy p) {
  switch (p) {
    case Policy::lchp:
      return "LCHP";
    case Policy::hchp:
      return "HCHP";
    case Policy::greedy:
      return "greedy";
    case Policy::algorithm1:
      return "algorithm1";
  }
  return "?";
}

Policy parse_policy(const std::string& name) {
  std::string lower = name;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (Policy p : {Policy::lchp, Policy::hchp, Policy::greedy, Policy::algorithm1}) {
    std::string candidate = to_string(p);
    std::transform(candidate.begin(), candidate.end(), candidate.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (candidate == lower) return p;
  }
  throw InvalidParameter(fmt::format("unknown policy '{}'", name));
}

bool Placement::holds(NodeId v, Rank x) const {
  const auto& c = slots_.at(v);
  return std::find(c.begin(), c.end(), x) != c.end();
}

std::size_t Placement::cached_items() const noexcept {
  std::size_t n = 0;
  for (const auto& c : slots_) n += c.size();
  return n;
}

void Placement::store(NodeId v, Rank x) {
  if (holds(v, x)) throw InvalidParameter(fmt::format("node {} already caches rank {}", v, x));
  slots_.at(v).push_back(x);
}

namespace {

bool id_before(NodeId a, NodeId b, TieBreak tiebreak) {
  return tiebreak == TieBreak::ascending_id ? a < b : a > b;
}

}  // namespace

Placement place_by_centrality(const Topology& t, std::size_t catalog_size,
                              const CentralityTable& centrality, Order order,
                              TieBreak tiebreak) {
  if (catalog_size == 0) throw InvalidParameter("catalog must be nonempty");
  if (centrality.size() != t.size())
    throw InvalidParameter("centrality table does not match topology");

  std::vector<NodeId> nodes(t.size());
  std::iota(nodes.begin(), nodes.end(), NodeId{0});
  std::sort(nodes.begin(), nodes.end(), [&](NodeId a, NodeId b) {
    const double sa = centrality[a];
    const double sb = centrality[b];
    if (sa != sb) return order == Order::ascending ? sa < sb : sa > sb;
    return id_before(a, b, tiebreak);
  });

  Placement pl(t.size(), order == Order::ascending ? Policy::lchp : Policy::hchp,
               centrality.radius.value_or(0));
  Rank next = 1;
  for (NodeId v : nodes) {
    for (std::uint32_t slot = 0; slot < t.buffer(v) && next <= catalog_size; ++slot)
      pl.store(v, next++);
    if (next > catalog_size) break;
  }
  return pl;
}

Placement place_by_centrality(const Topology& t, std::size_t catalog_size, std::size_t h,
                              Order order, TieBreak tiebreak) {
  return place_by_centrality(t, catalog_size, ccc(t, h), order, tiebreak);
}

Placement place_greedy(const Topology& t, const UserAttachment& user,
                       std::size_t catalog_size, std::size_t h) {
  if (catalog_size == 0) throw InvalidParameter("catalog must be nonempty");
  if (user.node >= t.size())
    throw InvalidParameter(fmt::format("user attachment {} not in topology", user.node));

  const auto dist = bfs_distances(t, user.node, h);
  std::vector<std::vector<NodeId>> rings(h + 1);
  for (NodeId v = 0; v < t.size(); ++v)
    if (dist[v]) rings[*dist[v]].push_back(v);

  Placement pl(t.size(), Policy::greedy, h);
  Rank next = 1;
  for (const auto& ring : rings) {
    std::uint32_t widest = 0;
    for (NodeId v : ring) widest = std::max(widest, t.buffer(v));
    for (NodeId v : ring)
      for (std::uint32_t slot = 0; slot < t.buffer(v) && next + slot <= catalog_size; ++slot)
        pl.store(v, next + slot);
    next += widest;
    if (next > catalog_size) break;
  }
  return pl;
}

Algorithm1Result algorithm1(const Topology& t, std::size_t catalog_size, std::size_t h,
                            const Algorithm1Options& options) {
  if (catalog_size == 0) throw InvalidParameter("catalog must be nonempty");
  const std::size_t n = t.size();
  const auto score = ccc(t, h);

  std::vector<Neighborhood> hoods;
  hoods.reserve(n);
  for (NodeId v = 0; v < n; ++v) hoods.push_back(neighborhood(t, v, h));

  // A node is done once its buffer is full or it has had its turn; either way
  // it reports +infinity from then on.
  std::vector<bool> done(n, false);
  for (NodeId v = 0; v < n; ++v) done[v] = t.buffer(v) == 0;

  constexpr double infinity = std::numeric_limits<double>::infinity();
  auto key_less = [&](NodeId a, NodeId b) {
    const double ka = done[a] ? infinity : score[a];
    const double kb = done[b] ? infinity : score[b];
    if (ka != kb) return ka < kb;
    return id_before(a, b, options.tiebreak);
  };

  Algorithm1Result result{Placement(n, Policy::algorithm1, h), {}};
  const std::size_t guard = std::max<std::size_t>(1, n * catalog_size);
  for (std::size_t round = 0;; ++round) {
    if (std::all_of(done.begin(), done.end(), [](bool d) { return d; })) break;
    if (round >= guard)
      throw std::runtime_error(fmt::format(
          "algorithm1 did not terminate after {} rounds ({} nodes, {} contents)", round, n,
          catalog_size));

    std::vector<NodeId> movers;
    if (options.mode == RoundMode::sequential) {
      NodeId best = n;
      for (NodeId v = 0; v < n; ++v)
        if (!done[v] && (best == n || key_less(v, best))) best = v;
      movers.push_back(best);
    } else {
      for (NodeId v = 0; v < n; ++v) {
        if (done[v]) continue;
        const bool minimal = std::all_of(
            hoods[v].members.begin(), hoods[v].members.end(),
            [&](NodeId w) { return w == v || key_less(v, w); });
        if (minimal) movers.push_back(v);
      }
    }

    // Movers never sit in each other's neighborhood, so filling them in id
    // order sees the same X_S as a simultaneous update would.
    for (NodeId v : movers) {
      std::set<Rank> present;
      for (NodeId w : hoods[v].members)
        for (Rank x : result.placement.contents(w)) present.insert(x);
      Rank x = 1;
      while (result.placement.contents(v).size() < t.buffer(v) && x <= catalog_size) {
        if (!present.contains(x)) result.placement.store(v, x);
        ++x;
      }
      done[v] = true;
    }
    result.rounds.push_back(std::move(movers));
  }
  return result;
}

bool availability(const Placement& pl, Rank x, const Neighborhood& s) {
  return std::any_of(s.members.begin(), s.members.end(),
                     [&](NodeId v) { return v < pl.size() && pl.holds(v, x); });
}

void write_placement_csv(std::ostream& out, const Placement& pl) {
  out << "# policy=" << to_string(pl.policy()) << " h=" << pl.radius() << "\n";
  out << "node,slot,content_rank\n";
  for (NodeId v = 0; v < pl.size(); ++v) {
    const auto& c = pl.contents(v);
    for (std::size_t slot = 0; slot < c.size(); ++slot)
      out << v << ',' << slot << ',' << c[slot] << '\n';
  }
}

}  // namespace lchp
