#include "lchp/experiments.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <istream>
#include <sstream>
#include <tuple>

#include <fmt/format.h>

#include "lchp/analytic.hpp"
#include "lchp/error.hpp"

namespace lchp::experiments {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::string v = value;
  std::replace(v.begin(), v.end(), ',', ' ');
  std::istringstream in(v);
  std::vector<std::string> items;
  for (std::string item; in >> item;) items.push_back(item);
  return items;
}

template <class T>
T parse_number(const std::string& field, const std::string& text) {
  std::istringstream in(text);
  T value{};
  std::string rest;
  if (!(in >> value) || (in >> rest)) throw ConfigError(field, fmt::format("'{}' is not a number", text));
  if constexpr (std::is_unsigned_v<T>) {
    if (!text.empty() && text[0] == '-') throw ConfigError(field, "must be non-negative");
  }
  return value;
}

Topology build(const TopologySpec& spec) {
  switch (spec.kind) {
    case TopologyKind::lattice:
      return Topology::lattice(spec.side);
    case TopologyKind::tree:
      return Topology::regular_tree(spec.arity, spec.depth);
    case TopologyKind::generic:
      break;
  }
  auto load = load_edge_list_file(spec.path);
  return std::move(load.topology);
}

UserAttachment pick_user(const Topology& t, const ScenarioConfig& config) {
  if (!config.user) return default_user(t);
  const auto labels = t.labels();
  const auto it = std::find(labels.begin(), labels.end(), *config.user);
  if (it == labels.end())
    throw ConfigError("user", fmt::format("node {} is not in the topology", *config.user));
  return {0, static_cast<NodeId>(it - labels.begin())};
}

bool has_closed_form(const TopologySpec& spec, Policy p) {
  if (p == Policy::algorithm1) return false;
  return spec.kind == TopologyKind::lattice ||
         (spec.kind == TopologyKind::tree && spec.arity == 2);
}

struct Cell {
  std::size_t h;
  double psi;
  std::vector<CostRow> rows;
};

}  // namespace

TopologySpec TopologySpec::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  TopologySpec spec;
  if (kind == "lattice" || kind == "grid") {
    spec.kind = TopologyKind::lattice;
    spec.side = parse_number<std::size_t>("topology", rest);
    if (spec.side < 2) throw ConfigError("topology", "lattice side must be >= 2");
  } else if (kind == "tree") {
    std::string fields = rest;
    std::replace(fields.begin(), fields.end(), ':', ',');
    const auto parts = split_list(fields);
    if (parts.size() != 2) throw ConfigError("topology", "expected tree:ARITY:DEPTH");
    spec.kind = TopologyKind::tree;
    spec.arity = parse_number<std::size_t>("topology", parts[0]);
    spec.depth = parse_number<std::size_t>("topology", parts[1]);
    if (spec.arity < 2 || spec.depth < 1)
      throw ConfigError("topology", "tree needs arity >= 2 and depth >= 1");
  } else if (kind == "edges") {
    if (rest.empty()) throw ConfigError("topology", "expected edges:PATH");
    spec.kind = TopologyKind::generic;
    spec.path = rest;
  } else {
    throw ConfigError("topology", fmt::format("unknown topology '{}'", text));
  }
  return spec;
}

std::string TopologySpec::to_string() const {
  switch (kind) {
    case TopologyKind::lattice:
      return fmt::format("lattice:{}", side);
    case TopologyKind::tree:
      return fmt::format("tree:{}:{}", arity, depth);
    case TopologyKind::generic:
      break;
  }
  return "edges:" + path;
}

void ScenarioConfig::set(const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  if (key == "topology") {
    topology = TopologySpec::parse(value);
  } else if (key == "h") {
    radii.clear();
    for (const auto& item : split_list(value)) radii.push_back(parse_number<std::size_t>(key, item));
  } else if (key == "psi") {
    psis.clear();
    for (const auto& item : split_list(value)) psis.push_back(parse_number<double>(key, item));
  } else if (key == "catalog" || key == "N") {
    catalog = parse_number<std::size_t>(key, value);
  } else if (key == "c_o") {
    origin_cost = parse_number<double>(key, value);
  } else if (key == "policies") {
    policies.clear();
    for (const auto& item : split_list(value)) {
      try {
        policies.push_back(parse_policy(item));
      } catch (const InvalidParameter& e) {
        throw ConfigError(key, e.what());
      }
    }
  } else if (key == "evaluator") {
    if (value == "auto") evaluator = EvaluatorChoice::automatic;
    else if (value == "analytic") evaluator = EvaluatorChoice::analytic;
    else if (value == "simulated") evaluator = EvaluatorChoice::simulated;
    else if (value == "both") evaluator = EvaluatorChoice::both;
    else throw ConfigError(key, fmt::format("unknown evaluator '{}'", value));
  } else if (key == "seed") {
    seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "threads") {
    threads = parse_number<std::size_t>(key, value);
  } else if (key == "user") {
    user = parse_number<std::uint64_t>(key, value);
  } else if (key == "output") {
    output = value;
  } else {
    throw ConfigError(key, "unknown key");
  }
}

void ScenarioConfig::validate() const {
  if (topology.kind == TopologyKind::lattice && topology.side < 2)
    throw ConfigError("topology", "missing or invalid topology");
  if (topology.kind == TopologyKind::generic && !std::filesystem::exists(topology.path))
    throw ConfigError("topology", fmt::format("edge list '{}' does not exist", topology.path));
  if (radii.empty()) throw ConfigError("h", "empty list");
  for (auto h : radii)
    if (h < 1) throw ConfigError("h", "radii must be >= 1");
  if (psis.empty()) throw ConfigError("psi", "empty list");
  for (double psi : psis)
    if (!(psi > 0.0)) throw ConfigError("psi", "entries must be > 0");
  if (catalog < 1) throw ConfigError("catalog", "must be >= 1");
  if (!(origin_cost >= 0.0)) throw ConfigError("c_o", "must be >= 0");
  if (policies.empty()) throw ConfigError("policies", "empty policy list");
  if (threads < 1) throw ConfigError("threads", "must be >= 1");
}

ScenarioConfig parse_config(std::istream& in) {
  ScenarioConfig config;
  config.topology = {};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(fmt::format("line {}", line_no), "expected 'key = value'");
    config.set(trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return config;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", fmt::format("cannot open '{}'", path));
  return parse_config(in);
}

std::vector<CostRow> run_sweep(const ScenarioConfig& config) {
  config.validate();
  const Topology topology = build(config.topology);
  const UserAttachment user = pick_user(topology, config);
  const std::string analytic_label =
      config.topology.kind == TopologyKind::lattice ? "grid-analytic" : "tree-analytic";

  std::vector<Cell> cells;
  for (auto h : config.radii)
    for (double psi : config.psis) cells.push_back({h, psi, {}});

  auto evaluate = [&](Cell& cell) {
    const Popularity pop = Popularity::zipf(config.catalog, cell.psi);
    std::vector<Policy> simulated;
    for (Policy p : config.policies) {
      const bool closed = has_closed_form(config.topology, p);
      const bool want_analytic = closed && config.evaluator != EvaluatorChoice::simulated;
      const bool want_simulated = !closed || config.evaluator == EvaluatorChoice::simulated ||
                                  config.evaluator == EvaluatorChoice::both;
      if (want_analytic) {
        const CostReport r = config.topology.kind == TopologyKind::lattice
                                 ? analytic::grid_cost(p, cell.h, pop)
                                 : analytic::tree_cost(p, cell.h, pop).report;
        cell.rows.push_back({to_string(p), analytic_label, cell.h, cell.psi, config.origin_cost, r});
      }
      if (want_simulated) simulated.push_back(p);
    }
    if (simulated.empty()) return;
    for (const auto& pc : policy_comparison(topology, user, cell.h, pop, simulated))
      cell.rows.push_back({to_string(pc.policy), topology.describe(), cell.h, cell.psi,
                           config.origin_cost, pc.report});
  };

  const std::size_t workers = std::min(config.threads, std::max<std::size_t>(1, cells.size()));
  if (workers == 1) {
    for (auto& cell : cells) evaluate(cell);
  } else {
    std::vector<std::future<void>> jobs;
    for (std::size_t w = 0; w < workers; ++w)
      jobs.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t c = w; c < cells.size(); c += workers) evaluate(cells[c]);
      }));
    for (auto& j : jobs) j.get();
  }

  std::vector<CostRow> rows;
  for (auto& cell : cells)
    for (auto& row : cell.rows) rows.push_back(std::move(row));

  auto policy_index = [&](const std::string& name) { return static_cast<int>(parse_policy(name)); };
  std::stable_sort(rows.begin(), rows.end(), [&](const CostRow& a, const CostRow& b) {
    return std::tuple(policy_index(a.policy), a.topology, a.h, a.psi) <
           std::tuple(policy_index(b.policy), b.topology, b.h, b.psi);
  });
  return rows;
}

void write_csv_atomically(const std::string& path, std::span<const CostRow> rows) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", tmp.string()));
    write_cost_csv(out, rows);
    out.flush();
    if (!out) {
      out.close();
      fs::remove(tmp);
      throw std::runtime_error(fmt::format("write to '{}' failed", tmp.string()));
    }
  }
  fs::rename(tmp, target);
}

std::string resolve_output_path(const std::string& configured) {
  namespace fs = std::filesystem;
  fs::path p = configured.empty() ? fs::path("sweep.csv") : fs::path(configured);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("LCHP_OUTPUT_DIR"); dir && *dir) p = fs::path(dir) / p;
  }
  return p.string();
}

}  // namespace lchp::experiments
