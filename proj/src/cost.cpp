#include "lchp/cost.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include <fmt/format.h>

#include "lchp/error.hpp"

namespace lchp {

namespace {

void check_user(const Topology& t, const UserAttachment& user) {
  if (user.node >= t.size())
    throw InvalidParameter(fmt::format("user attachment {} not in topology", user.node));
}

/// Nearest hop distance to each rank within the user's neighborhood; index 0
/// unused, nullopt means the request goes to the origin.
std::vector<Hops> nearest_copy(const Topology& t, const Placement& pl, const UserAttachment& user,
                               std::size_t h, std::size_t catalog_size) {
  if (pl.size() != t.size()) throw InvalidParameter("placement does not match topology");
  const auto hood = neighborhood(t, user.node, h);
  std::vector<Hops> best(catalog_size + 1);
  for (std::size_t i = 0; i < hood.members.size(); ++i) {
    for (Rank x : pl.contents(hood.members[i])) {
      if (x > catalog_size) continue;
      if (!best[x] || hood.distances[i] < *best[x]) best[x] = hood.distances[i];
    }
  }
  return best;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct ChunkSums {
  double in_network = 0.0;
  double misses = 0.0;
  double total = 0.0;
  double total_sq = 0.0;
};

}  // namespace

CostReport expected_cost(const Topology& t, const Placement& pl, const UserAttachment& user,
                         std::size_t h, const Popularity& pop) {
  check_user(t, user);
  const auto best = nearest_copy(t, pl, user, h, pop.size());
  CostReport r;
  for (Rank x = 1; x <= pop.size(); ++x) {
    if (best[x]) r.in_network += pop(x) * static_cast<double>(*best[x]);
    else r.origin_coefficient += pop(x);
  }
  return r;
}

CostReport tier_averaged_cost(const Topology& t, std::span<const std::vector<NodeId>> tiers,
                              Order order, const UserAttachment& user, std::size_t h,
                              const Popularity& pop) {
  check_user(t, user);
  const auto dist = bfs_distances(t, user.node, h);

  std::vector<bool> covered(t.size(), false);
  for (const auto& tier : tiers)
    for (NodeId v : tier) {
      if (v >= t.size()) throw InvalidParameter(fmt::format("tier member {} out of range", v));
      covered[v] = true;
    }
  if (std::find(covered.begin(), covered.end(), false) != covered.end())
    throw InvalidParameter("tiers must cover every cache node");

  std::vector<std::size_t> visit(tiers.size());
  for (std::size_t i = 0; i < visit.size(); ++i)
    visit[i] = order == Order::ascending ? i : tiers.size() - 1 - i;

  CostReport r;
  Rank next = 1;
  for (std::size_t idx : visit) {
    std::uint64_t capacity = 0;
    std::uint64_t weighted_hops = 0;
    for (NodeId v : tiers[idx]) {
      if (!dist[v]) continue;
      capacity += t.buffer(v);
      weighted_hops += static_cast<std::uint64_t>(t.buffer(v)) * *dist[v];
    }
    if (capacity == 0) continue;
    const double mean = static_cast<double>(weighted_hops) / static_cast<double>(capacity);
    for (std::uint64_t k = 0; k < capacity && next <= pop.size(); ++k, ++next)
      r.in_network += pop(next) * mean;
  }
  r.origin_coefficient = pop.tail_mass(next - 1);
  return r;
}

CostReport monte_carlo_cost(const Topology& t, const Placement& pl, const UserAttachment& user,
                            std::size_t h, const Popularity& pop, double origin_cost,
                            const MonteCarloOptions& options) {
  check_user(t, user);
  if (options.requests == 0) throw InvalidParameter("Monte Carlo needs at least one request");
  const auto best = nearest_copy(t, pl, user, h, pop.size());

  constexpr std::size_t chunk = 1 << 16;
  const std::size_t chunks = (options.requests + chunk - 1) / chunk;
  std::vector<std::uint64_t> seeds(chunks);
  std::uint64_t state = options.seed;
  for (auto& s : seeds) s = splitmix64(state);

  auto run_chunk = [&](std::size_t c) {
    std::mt19937_64 rng(seeds[c]);
    const std::size_t count = std::min(chunk, options.requests - c * chunk);
    ChunkSums sums;
    for (std::size_t i = 0; i < count; ++i) {
      const Rank x = pop.sample(rng);
      double cost = origin_cost;
      if (best[x]) {
        cost = static_cast<double>(*best[x]);
        sums.in_network += cost;
      } else {
        sums.misses += 1.0;
      }
      sums.total += cost;
      sums.total_sq += cost * cost;
    }
    return sums;
  };

  std::vector<ChunkSums> results(chunks);
  const std::size_t workers = std::clamp<std::size_t>(options.threads, 1, chunks);
  if (workers == 1) {
    for (std::size_t c = 0; c < chunks; ++c) results[c] = run_chunk(c);
  } else {
    std::vector<std::future<void>> jobs;
    for (std::size_t w = 0; w < workers; ++w)
      jobs.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t c = w; c < chunks; c += workers) results[c] = run_chunk(c);
      }));
    for (auto& j : jobs) j.get();
  }

  ChunkSums all;
  for (const auto& s : results) {
    all.in_network += s.in_network;
    all.misses += s.misses;
    all.total += s.total;
    all.total_sq += s.total_sq;
  }
  const double n = static_cast<double>(options.requests);
  CostReport r;
  r.in_network = all.in_network / n;
  r.origin_coefficient = all.misses / n;
  const double mean = all.total / n;
  const double var = options.requests > 1
                         ? std::max(0.0, (all.total_sq - n * mean * mean) / (n - 1.0))
                         : 0.0;
  r.stderr_total = std::sqrt(var / n);
  return r;
}

std::string to_string(Evaluator e) {
  return e == Evaluator::tier_averaged ? "tier-averaged" : "exact";
}

std::vector<PolicyCost> policy_comparison(const Topology& t, const UserAttachment& user,
                                          std::size_t h, const Popularity& pop,
                                          std::span<const Policy> policies) {
  if (policies.empty()) throw InvalidParameter("no policies to compare");
  std::optional<std::vector<std::vector<NodeId>>> tiers;
  std::vector<PolicyCost> out;
  for (Policy p : policies) {
    switch (p) {
      case Policy::lchp:
      case Policy::hchp: {
        if (!tiers) tiers = tier_partition(ccc(t, h));
        const Order order = p == Policy::lchp ? Order::ascending : Order::descending;
        out.push_back({p, Evaluator::tier_averaged,
                       tier_averaged_cost(t, *tiers, order, user, h, pop)});
        break;
      }
      case Policy::greedy:
        out.push_back({p, Evaluator::exact,
                       expected_cost(t, place_greedy(t, user, pop.size(), h), user, h, pop)});
        break;
      case Policy::algorithm1:
        out.push_back({p, Evaluator::exact,
                       expected_cost(t, algorithm1(t, pop.size(), h).placement, user, h, pop)});
        break;
    }
  }
  return out;
}

void write_cost_csv(std::ostream& out, std::span<const CostRow> rows) {
  out << cost_csv_header << '\n';
  for (const auto& row : rows) {
    out << fmt::format("{},{},{},{:.6g},{:.6g},{:.12f},{:.12f},{:.12f},", row.policy,
                       row.topology, row.h, row.psi, row.origin_cost, row.report.in_network,
                       row.report.origin_coefficient, row.report.total(row.origin_cost));
    if (row.report.stderr_total) out << fmt::format("{:.12f}", *row.report.stderr_total);
    out << '\n';
  }
}

std::vector<CostRow> read_cost_csv(std::istream& in) {
  std::vector<CostRow> rows;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != cost_csv_header)
        throw ParseError(fmt::format("expected header '{}'", cost_csv_header), line_no);
      header_seen = true;
      continue;
    }
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (line.back() == ',') f.emplace_back();
    if (f.size() != 9) throw ParseError(fmt::format("expected 9 fields, got {}", f.size()), line_no);
    try {
      CostRow row;
      row.policy = f[0];
      row.topology = f[1];
      row.h = std::stoul(f[2]);
      row.psi = std::stod(f[3]);
      row.origin_cost = std::stod(f[4]);
      row.report.in_network = std::stod(f[5]);
      row.report.origin_coefficient = std::stod(f[6]);
      if (!f[8].empty()) row.report.stderr_total = std::stod(f[8]);
      rows.push_back(std::move(row));
    } catch (const std::logic_error&) {
      throw ParseError("malformed number", line_no);
    }
  }
  if (!header_seen) throw ParseError("missing cost CSV header", line_no);
  return rows;
}

}  // namespace lchp
