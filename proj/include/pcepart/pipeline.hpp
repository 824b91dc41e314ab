#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pcepart/market.hpp"
#include "pcepart/partition.hpp"
#include "pcepart/portfolio.hpp"

namespace pcepart {

/// Everything a run needs; round-trips through a `key = value` text file.
struct RunConfig {
  std::string dataset;
  int m = 10;
  double lambda = kDefaultLambda;
  std::string solver = "pce";  // pce | qaoa | eda | local | brute
  int k = 3;
  int n_splits = 0;  // 0 = auto
  std::uint64_t seed = 42;
  int budget = 1000;
  int restarts = 1;
  double tol = 1e-6;
  double reg_weight = 0.0;
  std::optional<double> alpha;
  int qaoa_p = 5;
  int eda_population = 0;  // 0 = round(20 sqrt(m))
  int eda_generations = 100;
  double eda_truncation = 0.5;
  double train_fraction = 0.8;
  double initial = kDefaultInitialInvestment;
  std::string out_dir;  // empty = $PCEPART_OUT_DIR or ./pcepart_out

  /// Sets one field from its text form. Unknown keys and bad values throw ContractError.
  void set(const std::string& key, const std::string& value);
  void load_file(const std::string& path);
  /// Canonical `key = value` dump (out_dir excluded); parseable by load_file.
  std::string to_text() const;
  void validate() const;

  int resolved_splits() const;
  std::filesystem::path resolved_out_dir() const;
};

inline constexpr const char* kOutDirEnv = "PCEPART_OUT_DIR";

/// Split count used by the published experiments: 2, 4, 6, 9 for
/// m = 10, 20, 30, 50 and m/10 - 1 from m = 100 on.
int auto_splits(int m);

/// Builds the named cut solver with the run's settings.
CutSolver make_solver(const RunConfig& config, const std::string& name);
CutSolver make_solver(const RunConfig& config);

/// Rejects solver/size combinations that exceed a cap before any compute.
void check_solver_caps(const std::string& solver, int m);

/// CSV: m,k,n,p,pce_gates,qaoa_p1_gates,qaoa_p2_gates. `edges` is either
/// empty (QAOA columns left blank) or aligned with `m_list`.
std::string sizing_table(const std::vector<int>& m_list, const std::vector<int>& k_list,
                         const std::vector<std::uint64_t>& edges = {});

/// All in-memory products of one run.
struct PipelineState {
  PriceTable prices;
  PriceTable train;
  PriceTable test;
  ReturnsMatrix train_returns;
  MarketGraph graph;
  std::optional<PartitionResult> partition;
  std::optional<Portfolio> portfolio;
  std::optional<BacktestResult> strategy_test, baseline_test, strategy_train, baseline_train;
};

enum class Stage { Graph, Partition, Backtest };

PipelineState run_stages(const RunConfig& config, Stage last);

/// Deterministic summary (no timings) of whatever stages ran.
nlohmann::json summarize(const RunConfig& config, const PipelineState& state);

struct RunReport {
  nlohmann::json summary;
  nlohmann::json timings;
  std::filesystem::path out_dir;
  std::vector<std::filesystem::path> files;
};

/// Runs up to `last`, writes artifacts, and removes them again if anything fails.
RunReport run_and_write(const RunConfig& config, Stage last);

struct BenchmarkRow {
  std::string solver;
  int m = 0;
  int n_splits = 0;
  double split_cut = 0.0;
  std::optional<double> oracle_cut;
  double split_seconds = 0.0;
  std::vector<std::size_t> leaf_sizes;
  std::vector<double> split_cuts;
  double terminal = 0.0;
  double baseline_terminal = 0.0;
  std::optional<double> sharpe_train, sharpe_test;
  std::string error;
};

/// Runs each solver on the configured instance and records one row per solver.
std::vector<BenchmarkRow> run_benchmark(const RunConfig& config, const std::vector<std::string>& solvers);
std::string benchmark_to_csv(const std::vector<BenchmarkRow>& rows);

}  // namespace pcepart
