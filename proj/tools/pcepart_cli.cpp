// pcepart command-line front end. Talks to the library only through the C API.
#include <cstdio>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "pcepart/pcepart.h"

namespace {

struct ConfigDeleter {
  void operator()(pcp_config* c) const { pcp_config_free(c); }
};
struct ResultDeleter {
  void operator()(pcp_result* r) const { pcp_result_free(r); }
};
using ConfigPtr = std::unique_ptr<pcp_config, ConfigDeleter>;
using ResultPtr = std::unique_ptr<pcp_result, ResultDeleter>;

int exit_code(pcp_status s) {
  switch (s) {
    case PCP_OK: return 0;
    case PCP_ERR_CONTRACT:
    case PCP_ERR_RESOURCE: return 2;
    case PCP_ERR_DATA: return 3;
    default: return 1;
  }
}

int report(pcp_status s) {
  if (s != PCP_OK) {
    std::fprintf(stderr, "pcepart: %s: %s\n", pcp_status_name(s), pcp_last_error());
  }
  return exit_code(s);
}

// Flags shared by every pipeline verb; each maps onto a config key.
const std::vector<std::pair<std::string, std::string>> kRunFlags = {
    {"data", "price CSV (date,open,high,low,close,volume,Name)"},
    {"m", "number of assets to keep"},
    {"lambda", "correlation threshold"},
    {"solver", "pce | qaoa | eda | local | brute"},
    {"k", "Pauli string order for pce"},
    {"splits", "number of splits or 'auto'"},
    {"seed", "random seed"},
    {"budget", "optimizer evaluations per restart"},
    {"restarts", "optimizer restarts per bipartition"},
    {"tol", "final trust-region radius"},
    {"reg-weight", "regularization weight"},
    {"alpha", "loss sharpness or 'auto'"},
    {"qaoa-p", "QAOA depth"},
    {"eda-population", "EDA population (0 = auto)"},
    {"eda-generations", "EDA generations"},
    {"eda-truncation", "EDA elite fraction"},
    {"train-fraction", "share of days used for training"},
    {"initial", "initial investment"},
    {"out", "output directory (default $PCEPART_OUT_DIR or ./pcepart_out)"},
};

struct RunArgs {
  std::string config_file;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
};

void add_run_flags(CLI::App* cmd, RunArgs& args) {
  cmd->add_option("--config", args.config_file, "key = value config file")->check(CLI::ExistingFile);
  for (const auto& [name, help] : kRunFlags) {
    args.options[name] = cmd->add_option("--" + name, args.values[name], help);
  }
}

pcp_status build_config(const RunArgs& args, ConfigPtr& out) {
  pcp_config* raw = nullptr;
  if (pcp_status s = pcp_config_new(&raw); s != PCP_OK) return s;
  out.reset(raw);
  if (!args.config_file.empty()) {
    if (pcp_status s = pcp_config_load(raw, args.config_file.c_str()); s != PCP_OK) return s;
  }
  for (const auto& [name, opt] : args.options) {
    if (opt->count() == 0) continue;
    if (pcp_status s = pcp_config_set(raw, name.c_str(), args.values.at(name).c_str()); s != PCP_OK) return s;
  }
  return PCP_OK;
}

int run_stage(const RunArgs& args, pcp_stage stage) {
  ConfigPtr config;
  if (pcp_status s = build_config(args, config); s != PCP_OK) return report(s);
  pcp_result* raw = nullptr;
  pcp_status s = pcp_run(config.get(), stage, &raw);
  ResultPtr result(raw);
  if (s != PCP_OK) return report(s);
  std::cout << pcp_result_text(result.get()) << '\n';
  std::cerr << "artifacts in " << pcp_result_output_dir(result.get()) << '\n';
  return 0;
}

int run_benchmark(const RunArgs& args, const std::string& solvers) {
  ConfigPtr config;
  if (pcp_status s = build_config(args, config); s != PCP_OK) return report(s);
  pcp_result* raw = nullptr;
  pcp_status s = pcp_benchmark(config.get(), solvers.c_str(), &raw);
  ResultPtr result(raw);
  if (s != PCP_OK) return report(s);
  std::cout << pcp_result_text(result.get());
  std::cerr << "benchmark.csv in " << pcp_result_output_dir(result.get()) << '\n';
  return 0;
}

int run_sizing(const std::string& m_list, const std::string& k_list, const std::string& edges) {
  pcp_result* raw = nullptr;
  pcp_status s = pcp_sizing_table(m_list.c_str(), k_list.c_str(), edges.c_str(), &raw);
  ResultPtr result(raw);
  if (s != PCP_OK) return report(s);
  std::cout << pcp_result_text(result.get());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Market-graph partitioning with PCE, QAOA and classical max-cut solvers"};
  app.set_version_flag("--version", std::string(pcp_version()));
  app.require_subcommand(1);

  std::string m_list = "10,20,30,50,100,150,200,250";
  std::string k_list = "2,3";
  std::string edges;
  auto* sizing = app.add_subcommand("sizing", "qubit, layer and gate-count table");
  sizing->add_option("--m", m_list, "comma-separated node counts")->capture_default_str();
  sizing->add_option("--k", k_list, "comma-separated Pauli orders")->capture_default_str();
  sizing->add_option("--edges", edges, "comma-separated edge counts aligned with --m (enables QAOA columns)");

  RunArgs graph_args, partition_args, backtest_args, bench_args;
  auto* graph = app.add_subcommand("graph", "build the correlation graph");
  add_run_flags(graph, graph_args);
  auto* partition = app.add_subcommand("partition", "graph + recursive bipartition");
  add_run_flags(partition, partition_args);
  auto* backtest = app.add_subcommand("backtest", "full pipeline through the backtest");
  add_run_flags(backtest, backtest_args);

  std::string solvers = "pce,eda,local";
  auto* bench = app.add_subcommand("benchmark", "compare solvers on one instance");
  add_run_flags(bench, bench_args);
  bench->add_option("--solvers", solvers, "comma-separated solver names")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*sizing) return run_sizing(m_list, k_list, edges);
  if (*graph) return run_stage(graph_args, PCP_STAGE_GRAPH);
  if (*partition) return run_stage(partition_args, PCP_STAGE_PARTITION);
  if (*backtest) return run_stage(backtest_args, PCP_STAGE_BACKTEST);
  if (*bench) return run_benchmark(bench_args, solvers);
  return 2;
}
