#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lchp/topology.hpp"

namespace lchp {

enum class Metric { ccc, degree, closeness, betweenness };

std::string to_string(Metric m);
Metric parse_metric(const std::string& name);

/// One score per node for a single metric.
struct CentralityTable {
  Metric metric = Metric::degree;
  /// Neighborhood radius; set only for CCC.
  std::optional<std::size_t> radius;
  std::vector<double> scores;
  /// Closeness on a disconnected graph: scores cover each node's reachable set.
  bool partial = false;

  std::size_t size() const noexcept { return scores.size(); }
  double operator[](NodeId v) const { return scores.at(v); }
};

enum class SelfBuffer { exclude, include };

/// Cache-Connectivity Centrality: total buffer held by the nodes within `h`
/// hops of v. By default v's own buffer is left out, so with unit buffers and
/// h = 1 the score equals the degree.
CentralityTable ccc(const Topology& t, std::size_t h, SelfBuffer self = SelfBuffer::exclude);

CentralityTable degree_centrality(const Topology& t);

/// 1 / sum of hop distances to every other (reachable) node.
CentralityTable closeness_centrality(const Topology& t);

/// Brandes accumulation, each unordered (s, t) pair counted once.
CentralityTable betweenness_centrality(const Topology& t);

CentralityTable centrality(const Topology& t, Metric metric, std::size_t h);

/// Groups nodes with equal score (relative tolerance 1e-9) into tiers of
/// strictly increasing score. Nodes inside a tier are sorted by id.
std::vector<std::vector<NodeId>> tier_partition(const CentralityTable& table);

/// CSV "node,score" preceded by a "# metric=..., h=..." comment line.
void write_centrality_csv(std::ostream& out, const CentralityTable& table,
                          const Topology* labels_from = nullptr);

}  // namespace lchp
