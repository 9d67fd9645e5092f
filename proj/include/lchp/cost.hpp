#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lchp/demand.hpp"
#include "lchp/placement.hpp"
#include "lchp/topology.hpp"

namespace lchp {

/// Expected retrieval cost for one user, split into the hops spent inside the
/// h-hop neighborhood and the probability mass sent to the origin server.
struct CostReport {
  double in_network = 0.0;
  /// Multiplies the origin cost c_o.
  double origin_coefficient = 0.0;
  /// Standard error of the total; Monte Carlo only.
  std::optional<double> stderr_total;

  double total(double origin_cost) const { return in_network + origin_coefficient * origin_cost; }
};

/// Exact expectation for a concrete placement: each rank is fetched from the
/// nearest cache holding it within h hops, otherwise from the origin.
CostReport expected_cost(const Topology& t, const Placement& pl, const UserAttachment& user,
                         std::size_t h, const Popularity& pop);

/// Expectation averaged over every arrangement of content inside each tier.
/// Tiers receive contents in popularity order (ascending tier index for LCHP,
/// reversed for HCHP); a tier takes as many contents as the buffer it exposes
/// within h hops of the user, and each content costs the buffer-weighted mean
/// distance to those members. Tiers with nothing reachable take no content.
CostReport tier_averaged_cost(const Topology& t, std::span<const std::vector<NodeId>> tiers,
                              Order order, const UserAttachment& user, std::size_t h,
                              const Popularity& pop);

struct MonteCarloOptions {
  std::size_t requests = 100000;
  std::uint64_t seed = 1;
  /// Worker threads; results do not depend on this.
  std::size_t threads = 1;
};

/// Sample mean of the per-request cost with c_o substituted. Requests are cut
/// into fixed chunks with independent sub-seeds and merged in chunk order.
CostReport monte_carlo_cost(const Topology& t, const Placement& pl, const UserAttachment& user,
                            std::size_t h, const Popularity& pop, double origin_cost,
                            const MonteCarloOptions& options);

enum class Evaluator { tier_averaged, exact };

std::string to_string(Evaluator e);

struct PolicyCost {
  Policy policy;
  Evaluator evaluator;
  CostReport report;
};

/// Evaluates each policy with its matching evaluator: tier-averaged CCC tiers
/// for LCHP/HCHP, exact expectation of the concrete placement otherwise.
std::vector<PolicyCost> policy_comparison(const Topology& t, const UserAttachment& user,
                                          std::size_t h, const Popularity& pop,
                                          std::span<const Policy> policies);

/// One line of the cost CSV.
struct CostRow {
  std::string policy;
  std::string topology;
  std::size_t h = 0;
  double psi = 0.0;
  double origin_cost = 0.0;
  CostReport report;
};

inline constexpr const char* cost_csv_header =
    "policy,topology,h,psi,c_o,in_network,origin_coeff,total,stderr";

void write_cost_csv(std::ostream& out, std::span<const CostRow> rows);
std::vector<CostRow> read_cost_csv(std::istream& in);

}  // namespace lchp
