#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lchp/cost.hpp"
#include "lchp/placement.hpp"
#include "lchp/topology.hpp"

namespace lchp::experiments {

/// Bad or missing configuration field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(field) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

enum class EvaluatorChoice { automatic, analytic, simulated, both };

/// "lattice:N", "tree:ARITY:DEPTH" or "edges:PATH".
struct TopologySpec {
  TopologyKind kind = TopologyKind::lattice;
  std::size_t side = 0;
  std::size_t arity = 0;
  std::size_t depth = 0;
  std::string path;

  static TopologySpec parse(const std::string& text);
  std::string to_string() const;
};

struct ScenarioConfig {
  TopologySpec topology;
  std::vector<std::size_t> radii{2, 3};
  std::vector<double> psis{0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4, 1.6, 1.8, 2.0};
  std::size_t catalog = 100;
  double origin_cost = 5.0;
  std::vector<Policy> policies{Policy::lchp, Policy::hchp};
  EvaluatorChoice evaluator = EvaluatorChoice::automatic;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  /// Label of the user's attachment node for edge-list graphs.
  std::optional<std::uint64_t> user;
  std::string output;

  /// Applies one "key = value" setting.
  void set(const std::string& key, const std::string& value);
  void validate() const;
};

/// Reads a flat "key = value" file ('#' comments). Later keys win.
ScenarioConfig parse_config(std::istream& in);
ScenarioConfig load_config(const std::string& path);

/// Evaluates every policy x h x psi cell. Rows are ordered by policy, then
/// topology label, h and psi, and do not depend on `threads`.
std::vector<CostRow> run_sweep(const ScenarioConfig& config);

/// Writes to a sibling temporary file and renames it over `path`.
void write_csv_atomically(const std::string& path, std::span<const CostRow> rows);

/// Output path: the configured one, resolved against $LCHP_OUTPUT_DIR when
/// relative; "sweep.csv" when unset.
std::string resolve_output_path(const std::string& configured);

enum class CheckStatus { pass, fail, flagged };

struct Check {
  std::string criterion;
  std::string name;
  double target = 0.0;
  double computed = 0.0;
  double tolerance = 0.0;
  CheckStatus status = CheckStatus::pass;
  std::string note;
};

/// Reproduces the published grid and tree numbers and the structural claims
/// behind them. Known-inconsistent published values come back as `flagged`.
std::vector<Check> verify_published_numbers();

void print_checks(std::ostream& out, std::span<const Check> checks);
bool all_passed(std::span<const Check> checks);

/// SVG line chart: one series per (policy, topology, h), psi on x, total cost
/// on y. Throws on empty input.
void emit_chart(std::span<const CostRow> rows, std::ostream& out);
void emit_chart_file(std::span<const CostRow> rows, const std::string& path);

}  // namespace lchp::experiments
