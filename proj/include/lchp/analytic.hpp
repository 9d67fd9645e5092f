#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <boost/rational.hpp>

#include "lchp/cost.hpp"
#include "lchp/demand.hpp"
#include "lchp/placement.hpp"

namespace lchp::analytic {

using Fraction = boost::rational<std::int64_t>;

/// Mean hop distance from a mid-boundary user to the reachable nodes of row i
/// (i = 1 is the user's own boundary row), radius h.
Fraction mean_row_distance(std::size_t i, std::size_t h);

/// Number of reachable nodes on rows 1..i-1. reachable_below(h + 2, h) is the
/// full half-diamond (h + 1)^2.
std::size_t reachable_below(std::size_t i, std::size_t h);

struct GridRowProfile {
  std::size_t h = 0;
  /// Index i - 1 for row i.
  std::vector<std::size_t> counts;
  std::vector<Fraction> mean_distance;
  /// cumulative[i - 1] = reachable_below(i, h), i = 1..h+2.
  std::vector<std::size_t> cumulative;
};

GridRowProfile grid_row_profile(std::size_t h);

/// A cost as exact per-rank coefficients: rank r (1-based) costs
/// coefficients[r - 1] hops, every rank above `cached` goes to the origin.
struct CostFormula {
  std::vector<Fraction> coefficients;
  std::size_t cached = 0;

  /// Throws if the catalog is smaller than `cached`.
  CostReport evaluate(const Popularity& pop) const;
};

/// Grid formulas for a mid-boundary user: row-averaged LCHP, its reversed-row
/// HCHP counterpart, and one-content-per-hop-ring greedy.
CostFormula grid_formula(Policy policy, std::size_t h);

/// Binary-tree formulas for a leaf user; closed forms exist for h = 2 and 3.
std::optional<CostFormula> tree_formula(Policy policy, std::size_t h);

CostReport grid_cost(Policy policy, std::size_t h, const Popularity& pop);

struct TreeCost {
  CostReport report;
  /// False when h has no closed form and the value came from tier averaging
  /// on a generated binary tree of depth h + 2.
  bool closed_form = true;
};

TreeCost tree_cost(Policy policy, std::size_t h, const Popularity& pop);

enum class Shape { grid, tree };

struct Crosscheck {
  CostReport analytic;
  CostReport simulated;
  double deviation = 0.0;  // max over in-network and origin parts
};

/// Compares the closed form against the graph evaluator: tier-averaged CCC
/// tiers for LCHP/HCHP, exact cost of place_greedy for greedy. Grids use a
/// lattice of side `size` with a mid-boundary user; trees a binary tree of
/// depth `size` (default h + 2) with a leaf user. The closed grid forms hold
/// only when no reachable node's CCC is clipped by a side, i.e. side >= 4h + 1;
/// the default side is max(2h + 5, 4h + 1).
Crosscheck crosscheck(Policy policy, Shape shape, std::size_t h, const Popularity& pop,
                      std::optional<std::size_t> size = std::nullopt);

}  // namespace lchp::analytic
