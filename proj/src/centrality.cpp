#include "lchp/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <ostream>
#include <stack>

#include <fmt/format.h>

#include "lchp/error.hpp"

namespace lchp {

std::string to_string(Metric m) {
  switch (m) {
    case Metric::ccc:
      return "ccc";
    case Metric::degree:
      return "degree";
    case Metric::closeness:
      return "closeness";
    case Metric::betweenness:
      return "betweenness";
  }
  return "?";
}

Metric parse_metric(const std::string& name) {
  for (Metric m : {Metric::ccc, Metric::degree, Metric::closeness, Metric::betweenness})
    if (to_string(m) == name) return m;
  throw InvalidParameter(fmt::format("unknown centrality metric '{}'", name));
}

CentralityTable ccc(const Topology& t, std::size_t h, SelfBuffer self) {
  if (h < 1) throw InvalidParameter("CCC radius must be >= 1");
  CentralityTable table{Metric::ccc, h, std::vector<double>(t.size(), 0.0), false};
  for (NodeId v = 0; v < t.size(); ++v) {
    const auto dist = bfs_distances(t, v, h);
    std::uint64_t total = 0;
    for (NodeId w = 0; w < t.size(); ++w) {
      if (!dist[w]) continue;
      if (w == v && self == SelfBuffer::exclude) continue;
      total += t.buffer(w);
    }
    table.scores[v] = static_cast<double>(total);
  }
  return table;
}

CentralityTable degree_centrality(const Topology& t) {
  CentralityTable table{Metric::degree, std::nullopt, std::vector<double>(t.size()), false};
  for (NodeId v = 0; v < t.size(); ++v) table.scores[v] = static_cast<double>(t.degree(v));
  return table;
}

CentralityTable closeness_centrality(const Topology& t) {
  if (t.size() < 2) throw InvalidParameter("closeness is undefined on a single-node graph");
  CentralityTable table{Metric::closeness, std::nullopt, std::vector<double>(t.size()), false};
  for (NodeId v = 0; v < t.size(); ++v) {
    std::size_t sum = 0;
    for (const Hops& d : bfs_distances(t, v)) {
      if (d) sum += *d;
      else table.partial = true;
    }
    table.scores[v] = sum == 0 ? 0.0 : 1.0 / static_cast<double>(sum);
  }
  return table;
}

CentralityTable betweenness_centrality(const Topology& t) {
  const std::size_t n = t.size();
  CentralityTable table{Metric::betweenness, std::nullopt, std::vector<double>(n, 0.0), false};

  std::vector<double> sigma(n);
  std::vector<long> dist(n);
  std::vector<double> delta(n);
  std::vector<std::vector<NodeId>> preds(n);
  for (NodeId s = 0; s < n; ++s) {
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(delta.begin(), delta.end(), 0.0);
    for (auto& p : preds) p.clear();

    std::vector<NodeId> order;
    std::deque<NodeId> queue{s};
    sigma[s] = 1.0;
    dist[s] = 0;
    while (!queue.empty()) {
      const NodeId v = queue.front();
      queue.pop_front();
      order.push_back(v);
      for (NodeId w : t.neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          preds[w].push_back(v);
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const NodeId w = *it;
      for (NodeId v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) table.scores[w] += delta[w];
    }
  }
  // Every unordered pair was accumulated from both endpoints.
  for (double& s : table.scores) s /= 2.0;
  return table;
}

CentralityTable centrality(const Topology& t, Metric metric, std::size_t h) {
  switch (metric) {
    case Metric::ccc:
      return ccc(t, h);
    case Metric::degree:
      return degree_centrality(t);
    case Metric::closeness:
      return closeness_centrality(t);
    case Metric::betweenness:
      return betweenness_centrality(t);
  }
  throw InvalidParameter("unknown metric");
}

std::vector<std::vector<NodeId>> tier_partition(const CentralityTable& table) {
  std::vector<NodeId> order(table.size());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return table.scores[a] < table.scores[b]; });

  std::vector<std::vector<NodeId>> tiers;
  double anchor = 0.0;
  for (NodeId v : order) {
    const double s = table.scores[v];
    if (tiers.empty() || std::abs(s - anchor) > 1e-9 * std::max(1.0, std::abs(anchor))) {
      tiers.emplace_back();
      anchor = s;
    }
    tiers.back().push_back(v);
  }
  for (auto& tier : tiers) std::sort(tier.begin(), tier.end());
  return tiers;
}

void write_centrality_csv(std::ostream& out, const CentralityTable& table,
                          const Topology* labels_from) {
  out << "# metric=" << to_string(table.metric);
  if (table.radius) out << " h=" << *table.radius;
  if (table.partial) out << " partial=1";
  out << "\nnode,score\n";
  for (NodeId v = 0; v < table.size(); ++v) {
    const auto label = labels_from ? labels_from->labels()[v] : v;
    out << fmt::format("{},{:.17g}\n", label, table.scores[v]);
  }
}

}  // namespace lchp
