#include "lchp/topology.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

#include <fmt/format.h>

#include "lchp/error.hpp"

namespace lchp {

namespace {

void link(std::vector<std::vector<NodeId>>& adj, NodeId a, NodeId b) {
  adj[a].push_back(b);
  adj[b].push_back(a);
}

std::vector<std::uint64_t> identity_labels(std::size_t n) {
  std::vector<std::uint64_t> labels(n);
  std::iota(labels.begin(), labels.end(), std::uint64_t{0});
  return labels;
}

}  // namespace

Topology Topology::lattice(std::size_t n) {
  if (n < 2) throw InvalidParameter(fmt::format("lattice side must be >= 2, got {}", n));
  Topology t;
  t.kind_ = TopologyKind::lattice;
  t.side_ = n;
  t.adjacency_.resize(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const NodeId v = r * n + c;
      if (c + 1 < n) link(t.adjacency_, v, v + 1);
      if (r + 1 < n) link(t.adjacency_, v, v + n);
    }
  }
  for (auto& nbrs : t.adjacency_) std::sort(nbrs.begin(), nbrs.end());
  t.edge_count_ = 2 * n * (n - 1);
  t.buffers_.assign(n * n, 1);
  t.labels_ = identity_labels(n * n);
  return t;
}

Topology Topology::regular_tree(std::size_t arity, std::size_t depth) {
  if (arity < 2) throw InvalidParameter(fmt::format("tree arity must be >= 2, got {}", arity));
  if (depth < 1) throw InvalidParameter("tree depth must be >= 1");
  std::size_t count = 0;
  std::size_t level_width = 1;
  for (std::size_t d = 0; d <= depth; ++d) {
    count += level_width;
    level_width *= arity;
  }
  Topology t;
  t.kind_ = TopologyKind::tree;
  t.arity_ = arity;
  t.depth_ = depth;
  t.adjacency_.resize(count);
  for (NodeId v = 1; v < count; ++v) link(t.adjacency_, (v - 1) / arity, v);
  for (auto& nbrs : t.adjacency_) std::sort(nbrs.begin(), nbrs.end());
  t.edge_count_ = count - 1;
  t.buffers_.assign(count, 1);
  t.labels_ = identity_labels(count);
  return t;
}

Topology Topology::from_edges(std::size_t node_count,
                              std::span<const std::pair<NodeId, NodeId>> edges) {
  Topology t;
  t.adjacency_.resize(node_count);
  std::set<std::pair<NodeId, NodeId>> seen;
  for (auto [a, b] : edges) {
    if (a >= node_count || b >= node_count)
      throw InvalidParameter(fmt::format("edge ({}, {}) outside 0..{}", a, b, node_count));
    if (a == b) throw InvalidParameter(fmt::format("self-loop at node {}", a));
    if (!seen.emplace(std::min(a, b), std::max(a, b)).second) continue;
    link(t.adjacency_, a, b);
  }
  for (auto& nbrs : t.adjacency_) std::sort(nbrs.begin(), nbrs.end());
  t.edge_count_ = seen.size();
  t.buffers_.assign(node_count, 1);
  t.labels_ = identity_labels(node_count);
  return t;
}

bool Topology::adjacent(NodeId a, NodeId b) const {
  const auto& nbrs = adjacency_.at(a);
  return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

std::uint64_t Topology::total_buffer() const noexcept {
  return std::accumulate(buffers_.begin(), buffers_.end(), std::uint64_t{0});
}

Topology Topology::with_buffers(std::vector<std::uint32_t> buffers) const {
  if (buffers.size() != size())
    throw InvalidParameter(
        fmt::format("buffer vector has {} entries for {} nodes", buffers.size(), size()));
  Topology t = *this;
  t.buffers_ = std::move(buffers);
  return t;
}

Topology Topology::with_uniform_buffer(std::uint32_t b) const {
  return with_buffers(std::vector<std::uint32_t>(size(), b));
}

NodeId Topology::at(std::size_t row, std::size_t col) const {
  if (kind_ != TopologyKind::lattice) throw InvalidParameter("at() requires a lattice");
  if (row >= side_ || col >= side_)
    throw InvalidParameter(fmt::format("({}, {}) outside {}x{} lattice", row, col, side_, side_));
  return row * side_ + col;
}

std::pair<std::size_t, std::size_t> Topology::row_col(NodeId v) const {
  if (kind_ != TopologyKind::lattice) throw InvalidParameter("row_col() requires a lattice");
  return {v / side_, v % side_};
}

std::size_t Topology::level(NodeId v) const {
  if (kind_ != TopologyKind::tree) throw InvalidParameter("level() requires a tree");
  std::size_t lvl = 0;
  while (v != 0) {
    v = (v - 1) / arity_;
    ++lvl;
  }
  return lvl;
}

NodeId Topology::first_leaf() const {
  if (kind_ != TopologyKind::tree) throw InvalidParameter("first_leaf() requires a tree");
  NodeId v = 0;
  for (std::size_t d = 0; d < depth_; ++d) v = v * arity_ + 1;
  return v;
}

std::string Topology::describe() const {
  switch (kind_) {
    case TopologyKind::lattice:
      return fmt::format("lattice-{}", side_);
    case TopologyKind::tree:
      return fmt::format("tree-{}-{}", arity_, depth_);
    case TopologyKind::generic:
      break;
  }
  return fmt::format("graph-{}n-{}e", size(), edge_count_);
}

UserAttachment mid_boundary_user(const Topology& lattice) {
  return {0, lattice.at(0, lattice.side() / 2)};
}

UserAttachment leaf_user(const Topology& tree) { return {0, tree.first_leaf()}; }

UserAttachment default_user(const Topology& t) {
  switch (t.kind()) {
    case TopologyKind::lattice:
      return mid_boundary_user(t);
    case TopologyKind::tree:
      return leaf_user(t);
    case TopologyKind::generic:
      break;
  }
  return {0, 0};
}

bool Neighborhood::contains(NodeId v) const {
  return std::binary_search(members.begin(), members.end(), v);
}

std::vector<Hops> bfs_distances(const Topology& t, NodeId source,
                                std::optional<std::size_t> max_hops) {
  if (source >= t.size()) throw InvalidParameter(fmt::format("node {} out of range", source));
  std::vector<Hops> dist(t.size());
  std::deque<NodeId> frontier{source};
  dist[source] = 0;
  while (!frontier.empty()) {
    const NodeId v = frontier.front();
    frontier.pop_front();
    const std::size_t dv = *dist[v];
    if (max_hops && dv >= *max_hops) continue;
    for (NodeId w : t.neighbors(v)) {
      if (dist[w]) continue;
      dist[w] = dv + 1;
      frontier.push_back(w);
    }
  }
  return dist;
}

Hops hop_distance(const Topology& t, NodeId a, NodeId b) {
  if (b >= t.size()) throw InvalidParameter(fmt::format("node {} out of range", b));
  return bfs_distances(t, a)[b];
}

Neighborhood neighborhood(const Topology& t, NodeId v, std::size_t h) {
  const auto dist = bfs_distances(t, v, h);
  Neighborhood s{v, h, {}, {}};
  for (NodeId w = 0; w < dist.size(); ++w) {
    if (!dist[w]) continue;
    s.members.push_back(w);
    s.distances.push_back(*dist[w]);
  }
  return s;
}

struct EdgeListLoader {
  static EdgeListLoad load(std::istream& in);
};

EdgeListLoad EdgeListLoader::load(std::istream& in) {
  std::unordered_map<std::uint64_t, NodeId> index;
  std::vector<std::uint64_t> labels;
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::set<std::pair<NodeId, NodeId>> seen;
  std::unordered_map<NodeId, std::uint32_t> overrides;
  std::vector<std::string> warnings;

  auto intern = [&](std::uint64_t label) {
    auto [it, inserted] = index.emplace(label, labels.size());
    if (inserted) labels.push_back(label);
    return it->second;
  };

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream fields(raw);
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    if (tokens.size() != 2 && tokens.size() != 4)
      throw ParseError(fmt::format("expected 'u v' or 'u v buffer_u buffer_v', got {} fields",
                                   tokens.size()),
                       line_no);

    std::vector<std::uint64_t> values;
    for (const auto& tok : tokens) {
      if (tok.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError(fmt::format("'{}' is not a non-negative integer", tok), line_no);
      try {
        values.push_back(std::stoull(tok));
      } catch (const std::out_of_range&) {
        throw ParseError(fmt::format("'{}' is out of range", tok), line_no);
      }
    }
    if (values[0] == values[1])
      throw ParseError(fmt::format("self-loop on node {}", values[0]), line_no);

    const NodeId a = intern(values[0]);
    const NodeId b = intern(values[1]);
    if (tokens.size() == 4) {
      for (int k = 0; k < 2; ++k) {
        if (values[2 + k] > UINT32_MAX)
          throw ParseError(fmt::format("buffer {} is too large", values[2 + k]), line_no);
        overrides[k == 0 ? a : b] = static_cast<std::uint32_t>(values[2 + k]);
      }
    }
    if (!seen.emplace(std::min(a, b), std::max(a, b)).second) {
      warnings.push_back(fmt::format("line {}: duplicate edge {} {} ignored", line_no,
                                     values[0], values[1]));
      continue;
    }
    edges.emplace_back(a, b);
  }
  if (edges.empty()) throw EmptyGraph();

  Topology t = Topology::from_edges(labels.size(), edges);
  for (auto [v, b] : overrides) t.buffers_[v] = b;
  t.labels_ = std::move(labels);
  return {std::move(t), std::move(warnings)};
}

EdgeListLoad load_edge_list(std::istream& in) { return EdgeListLoader::load(in); }

EdgeListLoad load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter(fmt::format("cannot open edge list '{}'", path));
  return load_edge_list(in);
}

void write_edge_list(std::ostream& out, const Topology& t) {
  out << "# " << t.describe() << ": u v buffer_u buffer_v\n";
  const auto labels = t.labels();
  for (NodeId a = 0; a < t.size(); ++a) {
    for (NodeId b : t.neighbors(a)) {
      if (b < a) continue;
      out << labels[a] << ' ' << labels[b] << ' ' << t.buffer(a) << ' ' << t.buffer(b) << '\n';
    }
  }
}

}  // namespace lchp
