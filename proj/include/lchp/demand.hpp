#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace lchp {

/// Content identifier: its popularity rank, 1 = most popular.
using Rank = std::size_t;

/// Ranked request probabilities p_1 >= p_2 >= ... > 0 summing to one.
class Popularity {
 public:
  /// p_k = k^-psi / sum_{j=1..n} j^-psi.
  static Popularity zipf(std::size_t n, double psi);

  /// Takes probabilities in rank order. They must be positive and
  /// non-increasing; the vector is renormalised to sum to one.
  static Popularity from_probabilities(std::vector<double> p);

  std::size_t size() const noexcept { return p_.size(); }

  /// Probability of rank `r` (1-based).
  double operator()(Rank r) const { return p_.at(r - 1); }

  std::span<const double> values() const noexcept { return p_; }

  /// sum_{j <= k} p_j and sum_{j > k} p_j. Require k <= size().
  double head_mass(std::size_t k) const;
  double tail_mass(std::size_t k) const;

  /// Inverse-CDF draw; `u` must lie in [0, 1).
  Rank rank_at(double u) const;

  /// `rng` must produce 64 uniformly random bits per call (std::mt19937_64).
  template <class Engine>
  Rank sample(Engine& rng) const {
    // 53 random bits give a platform-independent uniform in [0, 1).
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return rank_at(u);
  }

 private:
  explicit Popularity(std::vector<double> p);

  std::vector<double> p_;
  std::vector<double> cdf_;
  std::vector<double> tail_;  // tail_[k] = sum_{j > k} p_j
};

/// Rank-indexed popularity read from CSV "rank,probability" rows. Ranks must
/// cover 1..n. Totals off by more than 1e-9 are renormalised with a warning.
struct PopularityLoad {
  Popularity popularity;
  std::vector<std::string> warnings;
};

PopularityLoad load_popularity_csv(std::istream& in);

void write_popularity_csv(std::ostream& out, const Popularity& pop);

}  // namespace lchp
