#include "lchp/analytic.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "lchp/centrality.hpp"
#include "lchp/error.hpp"

namespace lchp::analytic {

namespace {

double to_double(const Fraction& f) {
  return static_cast<double>(f.numerator()) / static_cast<double>(f.denominator());
}

CostFormula from_integers(std::initializer_list<int> hops) {
  CostFormula f;
  for (int c : hops) f.coefficients.emplace_back(c);
  f.cached = f.coefficients.size();
  return f;
}

CostFormula greedy_formula(std::size_t h) {
  CostFormula f;
  for (std::size_t k = 0; k <= h; ++k) f.coefficients.emplace_back(static_cast<std::int64_t>(k));
  f.cached = h + 1;
  return f;
}

}  // namespace

Fraction mean_row_distance(std::size_t i, std::size_t h) {
  if (i < 1 || i > h + 1)
    throw InvalidParameter(fmt::format("row {} outside 1..{} for h = {}", i, h + 1, h));
  if (i == 1) {
    const auto hh = static_cast<std::int64_t>(h);
    return Fraction(hh * (hh + 1), 2 * hh + 1);
  }
  return Fraction(1) + mean_row_distance(i - 1, h - 1);
}

std::size_t reachable_below(std::size_t i, std::size_t h) {
  if (i < 1 || i > h + 2)
    throw InvalidParameter(fmt::format("row {} outside 1..{} for h = {}", i, h + 2, h));
  std::size_t m = 0;
  for (std::size_t row = 2; row <= i; ++row) m += 2 * (h + 2 - row) + 1;
  return m;
}

GridRowProfile grid_row_profile(std::size_t h) {
  GridRowProfile p;
  p.h = h;
  for (std::size_t i = 1; i <= h + 1; ++i) {
    p.counts.push_back(2 * (h - i + 1) + 1);
    p.mean_distance.push_back(mean_row_distance(i, h));
  }
  for (std::size_t i = 1; i <= h + 2; ++i) p.cumulative.push_back(reachable_below(i, h));
  return p;
}

CostReport CostFormula::evaluate(const Popularity& pop) const {
  if (pop.size() < cached)
    throw InvalidParameter(
        fmt::format("formula caches {} contents but the catalog has {}", cached, pop.size()));
  CostReport r;
  for (std::size_t k = 0; k < cached; ++k) r.in_network += to_double(coefficients[k]) * pop(k + 1);
  r.origin_coefficient = pop.tail_mass(cached);
  return r;
}

CostFormula grid_formula(Policy policy, std::size_t h) {
  if (h < 1) throw InvalidParameter("grid formulas need h >= 1");
  if (policy == Policy::greedy) return greedy_formula(h);
  if (policy == Policy::algorithm1)
    throw InvalidParameter("no closed form for the distributed algorithm");

  const auto profile = grid_row_profile(h);
  std::vector<std::size_t> rows(h + 1);
  for (std::size_t i = 0; i <= h; ++i) rows[i] = policy == Policy::lchp ? i : h - i;

  CostFormula f;
  for (std::size_t row : rows)
    f.coefficients.insert(f.coefficients.end(), profile.counts[row], profile.mean_distance[row]);
  f.cached = f.coefficients.size();
  return f;
}

std::optional<CostFormula> tree_formula(Policy policy, std::size_t h) {
  if (policy == Policy::algorithm1)
    throw InvalidParameter("no closed form for the distributed algorithm");
  if (h != 2 && h != 3) return std::nullopt;
  if (policy == Policy::greedy) return greedy_formula(h);
  // Leaf user: own leaf 0, sibling leaf 2; parent 1, grandparent 2; for h = 3
  // the parent's sibling and the great-grandparent sit 3 hops away.
  if (h == 2)
    return policy == Policy::lchp ? from_integers({1, 1, 1, 2}) : from_integers({2, 1, 1, 1});
  return policy == Policy::lchp ? from_integers({1, 1, 2, 2, 2, 3})
                                : from_integers({3, 2, 2, 2, 1, 1});
}

CostReport grid_cost(Policy policy, std::size_t h, const Popularity& pop) {
  return grid_formula(policy, h).evaluate(pop);
}

TreeCost tree_cost(Policy policy, std::size_t h, const Popularity& pop) {
  if (h < 1) throw InvalidParameter("tree formulas need h >= 1");
  if (auto f = tree_formula(policy, h)) return {f->evaluate(pop), true};

  const Topology tree = Topology::regular_tree(2, h + 2);
  const UserAttachment user = leaf_user(tree);
  if (policy == Policy::greedy)
    return {expected_cost(tree, place_greedy(tree, user, pop.size(), h), user, h, pop), false};
  const auto tiers = tier_partition(ccc(tree, h));
  const Order order = policy == Policy::lchp ? Order::ascending : Order::descending;
  return {tier_averaged_cost(tree, tiers, order, user, h, pop), false};
}

Crosscheck crosscheck(Policy policy, Shape shape, std::size_t h, const Popularity& pop,
                      std::optional<std::size_t> size) {
  Crosscheck c;
  Topology t = shape == Shape::grid ? Topology::lattice(size.value_or(std::max(2 * h + 5, 4 * h + 1)))
                                    : Topology::regular_tree(2, size.value_or(h + 2));
  const UserAttachment user = default_user(t);
  if (shape == Shape::grid) {
    c.analytic = grid_cost(policy, h, pop);
  } else {
    const auto f = tree_formula(policy, h);
    if (!f) throw InvalidParameter(fmt::format("no closed tree form for h = {}", h));
    c.analytic = f->evaluate(pop);
  }

  if (policy == Policy::greedy) {
    c.simulated = expected_cost(t, place_greedy(t, user, pop.size(), h), user, h, pop);
  } else {
    const auto tiers = tier_partition(ccc(t, h));
    const Order order = policy == Policy::lchp ? Order::ascending : Order::descending;
    c.simulated = tier_averaged_cost(t, tiers, order, user, h, pop);
  }
  c.deviation = std::max(std::abs(c.analytic.in_network - c.simulated.in_network),
                         std::abs(c.analytic.origin_coefficient - c.simulated.origin_coefficient));
  return c;
}

}  // namespace lchp::analytic
