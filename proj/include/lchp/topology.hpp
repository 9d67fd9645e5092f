#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace lchp {

using NodeId = std::size_t;

/// Hop count between two nodes; std::nullopt when no path exists.
using Hops = std::optional<std::size_t>;

enum class TopologyKind { lattice, tree, generic };

/// Static undirected caching graph. Every node is a cache with an integer
/// buffer measured in content units. Immutable once built.
class Topology {
 public:
  /// n x n grid, node (row, col) has id row * n + col. Requires n >= 2.
  static Topology lattice(std::size_t n);

  /// Full tree in breadth-first numbering: root 0, the children of node i are
  /// i * arity + 1 ... i * arity + arity. Leaves sit at level `depth`.
  static Topology regular_tree(std::size_t arity, std::size_t depth);

  /// Generic graph over nodes 0..node_count-1. Duplicate edges are merged;
  /// self-loops and out-of-range endpoints are rejected.
  static Topology from_edges(std::size_t node_count,
                             std::span<const std::pair<NodeId, NodeId>> edges);

  std::size_t size() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  TopologyKind kind() const noexcept { return kind_; }

  std::span<const NodeId> neighbors(NodeId v) const { return adjacency_.at(v); }
  std::size_t degree(NodeId v) const { return adjacency_.at(v).size(); }
  bool adjacent(NodeId a, NodeId b) const;

  std::uint32_t buffer(NodeId v) const { return buffers_.at(v); }
  std::span<const std::uint32_t> buffers() const noexcept { return buffers_; }
  std::uint64_t total_buffer() const noexcept;

  /// Copy with replaced per-node buffers (size must match).
  Topology with_buffers(std::vector<std::uint32_t> buffers) const;
  Topology with_uniform_buffer(std::uint32_t b) const;

  /// Lattice side length, or arity/depth for trees; zero for other kinds.
  std::size_t side() const noexcept { return side_; }
  std::size_t arity() const noexcept { return arity_; }
  std::size_t depth() const noexcept { return depth_; }

  /// Lattice addressing.
  NodeId at(std::size_t row, std::size_t col) const;
  std::pair<std::size_t, std::size_t> row_col(NodeId v) const;

  /// Tree addressing: level 0 is the root.
  std::size_t level(NodeId v) const;
  NodeId first_leaf() const;

  /// Original labels for graphs loaded from text; identity otherwise.
  std::span<const std::uint64_t> labels() const noexcept { return labels_; }

  std::string describe() const;

 private:
  friend struct EdgeListLoader;

  TopologyKind kind_ = TopologyKind::generic;
  std::vector<std::vector<NodeId>> adjacency_;
  std::vector<std::uint32_t> buffers_;
  std::vector<std::uint64_t> labels_;
  std::size_t edge_count_ = 0;
  std::size_t side_ = 0;
  std::size_t arity_ = 0;
  std::size_t depth_ = 0;
};

/// A user co-located with a cache node: retrieval from that node costs 0 hops.
struct UserAttachment {
  std::size_t user = 0;
  NodeId node = 0;
};

/// Midpoint of the bottom boundary row, (0, n / 2).
UserAttachment mid_boundary_user(const Topology& lattice);

/// Leftmost leaf of a regular tree.
UserAttachment leaf_user(const Topology& tree);

/// The canonical analysed user for lattices and trees.
UserAttachment default_user(const Topology& t);

struct Neighborhood {
  NodeId center = 0;
  std::size_t radius = 0;
  /// Sorted by NodeId; `distances[i]` belongs to `members[i]`.
  std::vector<NodeId> members;
  std::vector<std::size_t> distances;

  bool contains(NodeId v) const;
};

/// Breadth-first distances from `source`, optionally truncated at `max_hops`
/// (nodes further away are reported unreachable).
std::vector<Hops> bfs_distances(const Topology& t, NodeId source,
                                std::optional<std::size_t> max_hops = std::nullopt);

Hops hop_distance(const Topology& t, NodeId a, NodeId b);

/// All nodes within `h` hops of `v`, including `v` itself.
Neighborhood neighborhood(const Topology& t, NodeId v, std::size_t h);

/// Result of parsing an edge list: the topology plus any non-fatal warnings.
struct EdgeListLoad {
  Topology topology;
  std::vector<std::string> warnings;
};

/// Parses "u v [buffer_u buffer_v]" lines. '#' starts a comment. Labels are
/// arbitrary non-negative integers, densified in order of first appearance.
EdgeListLoad load_edge_list(std::istream& in);
EdgeListLoad load_edge_list_file(const std::string& path);

/// Writes the format accepted by load_edge_list, buffers included.
void write_edge_list(std::ostream& out, const Topology& t);

}  // namespace lchp
