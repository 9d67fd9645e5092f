// lchp: sweep, verify, gen and chart front end.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lchp/cost.hpp"
#include "lchp/error.hpp"
#include "lchp/experiments.hpp"
#include "lchp/topology.hpp"

namespace ex = lchp::experiments;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_config = 2;

struct SweepArgs {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string topology, h, psi, catalog, c_o, policies, evaluator, seed, threads, user, output;
};

int run_sweep(const SweepArgs& args) {
  ex::ScenarioConfig config = ex::load_config(args.config_path);
  const std::pair<const char*, const std::string*> flags[] = {
      {"topology", &args.topology}, {"h", &args.h},           {"psi", &args.psi},
      {"catalog", &args.catalog},   {"c_o", &args.c_o},       {"policies", &args.policies},
      {"evaluator", &args.evaluator}, {"seed", &args.seed},   {"threads", &args.threads},
      {"user", &args.user},         {"output", &args.output}};
  for (const auto& [key, value] : flags)
    if (!value->empty()) config.set(key, *value);
  for (const auto& kv : args.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ex::ConfigError(kv, "expected key=value");
    config.set(kv.substr(0, eq), kv.substr(eq + 1));
  }

  const auto rows = ex::run_sweep(config);
  const std::string path = ex::resolve_output_path(config.output);
  ex::write_csv_atomically(path, rows);
  std::cerr << "wrote " << rows.size() << " rows to " << path << '\n';
  return exit_ok;
}

int run_verify() {
  const auto checks = ex::verify_published_numbers();
  ex::print_checks(std::cout, checks);
  const bool ok = ex::all_passed(checks);
  std::cout << (ok ? "all checks passed\n" : "some checks FAILED\n");
  return ok ? exit_ok : exit_failed;
}

int run_gen(const std::string& kind, const std::vector<std::size_t>& params, unsigned buffer,
            const std::string& output) {
  lchp::Topology t = [&] {
    if (kind == "lattice" && params.size() == 1) return lchp::Topology::lattice(params[0]);
    if (kind == "tree" && params.size() == 2)
      return lchp::Topology::regular_tree(params[0], params[1]);
    throw ex::ConfigError("gen", "expected 'lattice N' or 'tree ARITY DEPTH'");
  }();
  t = t.with_uniform_buffer(buffer);
  if (output.empty() || output == "-") {
    lchp::write_edge_list(std::cout, t);
  } else {
    std::ofstream out(output);
    if (!out) throw ex::ConfigError("output", "cannot open " + output);
    lchp::write_edge_list(out, t);
  }
  return exit_ok;
}

int run_chart(const std::string& csv, const std::string& svg) {
  std::ifstream in(csv);
  if (!in) throw ex::ConfigError("csv", "cannot open " + csv);
  const auto rows = lchp::read_cost_csv(in);
  ex::emit_chart_file(rows, svg);
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Centrality-driven content placement: sweeps, published-number checks, generators"};
  app.require_subcommand(1);

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a policy x h x psi sweep and write CSV");
  sweep_cmd->set_help_flag("--help", "Print this help message and exit");
  sweep_cmd->add_option("config", sweep.config_path, "key = value scenario file")->required();
  sweep_cmd->add_option("--topology", sweep.topology, "lattice:N | tree:ARITY:DEPTH | edges:PATH");
  sweep_cmd->add_option("--h", sweep.h, "comma-separated radii");
  sweep_cmd->add_option("--psi", sweep.psi, "comma-separated Zipf skewness values");
  sweep_cmd->add_option("--catalog", sweep.catalog, "number of contents N");
  sweep_cmd->add_option("--c_o", sweep.c_o, "origin cost in hops");
  sweep_cmd->add_option("--policies", sweep.policies, "LCHP,HCHP,greedy,algorithm1");
  sweep_cmd->add_option("--evaluator", sweep.evaluator, "auto | analytic | simulated | both");
  sweep_cmd->add_option("--seed", sweep.seed);
  sweep_cmd->add_option("--threads", sweep.threads);
  sweep_cmd->add_option("--user", sweep.user, "attachment node label for edge-list graphs");
  sweep_cmd->add_option("-o,--output", sweep.output, "CSV path (relative to $LCHP_OUTPUT_DIR)");
  sweep_cmd->add_option("--set", sweep.overrides, "extra key=value overrides");

  auto* verify_cmd = app.add_subcommand("verify", "Check the published grid/tree numbers");

  std::string gen_kind;
  std::vector<std::size_t> gen_params;
  unsigned gen_buffer = 1;
  std::string gen_output;
  auto* gen_cmd = app.add_subcommand("gen", "Write a lattice or regular tree as an edge list");
  gen_cmd->add_option("kind", gen_kind, "lattice | tree")->required();
  gen_cmd->add_option("params", gen_params, "N, or ARITY DEPTH")->required();
  gen_cmd->add_option("--buffer", gen_buffer, "uniform buffer size");
  gen_cmd->add_option("-o,--output", gen_output, "output file (default stdout)");

  std::string chart_csv, chart_svg;
  auto* chart_cmd = app.add_subcommand("chart", "Render a sweep CSV as an SVG line chart");
  chart_cmd->add_option("csv", chart_csv)->required();
  chart_cmd->add_option("out", chart_svg)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_config;
  }

  try {
    if (*sweep_cmd) return run_sweep(sweep);
    if (*verify_cmd) return run_verify();
    if (*gen_cmd) return run_gen(gen_kind, gen_params, gen_buffer, gen_output);
    if (*chart_cmd) return run_chart(chart_csv, chart_svg);
  } catch (const ex::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return exit_config;
  } catch (const lchp::InvalidParameter& e) {
    std::cerr << "invalid parameter: " << e.what() << '\n';
    return exit_config;
  } catch (const lchp::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return exit_config;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_failed;
  }
  return exit_ok;
}
