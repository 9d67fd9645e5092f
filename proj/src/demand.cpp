#include "lchp/demand.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "lchp/error.hpp"

namespace lchp {

namespace {

// Summing smallest terms first keeps the normalisation error near one ulp.
double ascending_sum(std::span<const double> values) {
  double total = 0.0;
  for (auto it = values.rbegin(); it != values.rend(); ++it) total += *it;
  return total;
}

}  // namespace

Popularity::Popularity(std::vector<double> p) : p_(std::move(p)) {
  const double total = ascending_sum(p_);
  for (double& x : p_) x /= total;

  cdf_.resize(p_.size());
  std::partial_sum(p_.begin(), p_.end(), cdf_.begin());

  tail_.assign(p_.size() + 1, 0.0);
  for (std::size_t k = p_.size(); k-- > 0;) tail_[k] = tail_[k + 1] + p_[k];
}

Popularity Popularity::zipf(std::size_t n, double psi) {
  if (n == 0) throw InvalidParameter("catalog size must be >= 1");
  if (!(psi >= 0.0) || !std::isfinite(psi))
    throw InvalidParameter(fmt::format("Zipf skewness must be >= 0, got {}", psi));
  std::vector<double> w(n);
  for (std::size_t k = 0; k < n; ++k) w[k] = std::pow(static_cast<double>(k + 1), -psi);
  return Popularity(std::move(w));
}

Popularity Popularity::from_probabilities(std::vector<double> p) {
  if (p.empty()) throw InvalidParameter("popularity vector is empty");
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (!(p[k] > 0.0) || !std::isfinite(p[k]))
      throw InvalidParameter(fmt::format("probability of rank {} must be positive", k + 1));
    if (k > 0 && p[k] > p[k - 1])
      throw InvalidParameter(fmt::format("probability increases at rank {}", k + 1));
  }
  return Popularity(std::move(p));
}

double Popularity::head_mass(std::size_t k) const {
  if (k > size()) throw InvalidParameter(fmt::format("rank {} beyond catalog of {}", k, size()));
  return 1.0 - tail_[k];
}

double Popularity::tail_mass(std::size_t k) const {
  if (k > size()) throw InvalidParameter(fmt::format("rank {} beyond catalog of {}", k, size()));
  return tail_[k];
}

Rank Popularity::rank_at(double u) const {
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) return size();  // u above a cdf that rounded below 1
  return static_cast<Rank>(it - cdf_.begin()) + 1;
}

PopularityLoad load_popularity_csv(std::istream& in) {
  std::map<Rank, double> rows;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (raw.rfind("rank", 0) == 0) continue;  // header
    std::replace(raw.begin(), raw.end(), ',', ' ');
    std::istringstream fields(raw);
    long long rank = 0;
    double prob = 0.0;
    std::string extra;
    if (!(fields >> rank >> prob) || (fields >> extra))
      throw ParseError("expected 'rank,probability'", line_no);
    if (rank < 1) throw ParseError("ranks start at 1", line_no);
    if (!rows.emplace(static_cast<Rank>(rank), prob).second)
      throw ParseError(fmt::format("rank {} listed twice", rank), line_no);
  }
  if (rows.empty()) throw InvalidParameter("popularity file has no rows");
  if (rows.rbegin()->first != rows.size())
    throw InvalidParameter("popularity ranks must cover 1..N without gaps");

  std::vector<double> p;
  p.reserve(rows.size());
  for (const auto& [rank, prob] : rows) p.push_back(prob);

  std::vector<std::string> warnings;
  const double total = ascending_sum(p);
  if (std::abs(total - 1.0) > 1e-9)
    warnings.push_back(fmt::format("probabilities sum to {:.12g}; renormalised", total));
  return {Popularity::from_probabilities(std::move(p)), std::move(warnings)};
}

void write_popularity_csv(std::ostream& out, const Popularity& pop) {
  out << "rank,probability\n";
  for (Rank r = 1; r <= pop.size(); ++r) out << fmt::format("{},{:.17g}\n", r, pop(r));
}

}  // namespace lchp
