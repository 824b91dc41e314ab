#include "pcepart/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include "pcepart/errors.hpp"
#include "pcepart/optimize.hpp"
#include "pcepart/pce.hpp"
#include "pcepart/qaoa.hpp"

namespace pcepart {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_as(const std::string& key, const std::string& text) {
  T v{};
  const std::string t = trim(text);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
    throw ContractError("config: bad value '" + text + "' for key '" + key + "'");
  }
  return v;
}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

const std::vector<std::string> kSolvers = {"pce", "qaoa", "eda", "local", "brute"};

}  // namespace

void RunConfig::set(const std::string& raw_key, const std::string& value) {
  std::string key = trim(raw_key);
  std::replace(key.begin(), key.end(), '-', '_');
  if (key == "data" || key == "dataset") {
    dataset = trim(value);
  } else if (key == "m") {
    m = parse_as<int>(key, value);
  } else if (key == "lambda") {
    lambda = parse_as<double>(key, value);
  } else if (key == "solver") {
    solver = trim(value);
  } else if (key == "k") {
    k = parse_as<int>(key, value);
  } else if (key == "splits" || key == "n_splits") {
    n_splits = trim(value) == "auto" ? 0 : parse_as<int>(key, value);
  } else if (key == "seed") {
    seed = parse_as<std::uint64_t>(key, value);
  } else if (key == "budget") {
    budget = parse_as<int>(key, value);
  } else if (key == "restarts") {
    restarts = parse_as<int>(key, value);
  } else if (key == "tol") {
    tol = parse_as<double>(key, value);
  } else if (key == "reg_weight") {
    reg_weight = parse_as<double>(key, value);
  } else if (key == "alpha") {
    if (trim(value) == "auto") {
      alpha.reset();
    } else {
      alpha = parse_as<double>(key, value);
    }
  } else if (key == "qaoa_p") {
    qaoa_p = parse_as<int>(key, value);
  } else if (key == "eda_population") {
    eda_population = parse_as<int>(key, value);
  } else if (key == "eda_generations") {
    eda_generations = parse_as<int>(key, value);
  } else if (key == "eda_truncation") {
    eda_truncation = parse_as<double>(key, value);
  } else if (key == "train_fraction") {
    train_fraction = parse_as<double>(key, value);
  } else if (key == "initial") {
    initial = parse_as<double>(key, value);
  } else if (key == "out" || key == "out_dir") {
    out_dir = trim(value);
  } else {
    throw ContractError("config: unknown key '" + raw_key + "'");
  }
}

void RunConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ContractError("cannot open config file '" + path + "'");
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ContractError(path + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    set(line.substr(0, eq), line.substr(eq + 1));
  }
}

std::string RunConfig::to_text() const {
  std::ostringstream os;
  os << "data = " << dataset << '\n'
     << "m = " << m << '\n'
     << "lambda = " << format_double(lambda) << '\n'
     << "solver = " << solver << '\n'
     << "k = " << k << '\n'
     << "splits = " << (n_splits == 0 ? std::string("auto") : std::to_string(n_splits)) << '\n'
     << "seed = " << seed << '\n'
     << "budget = " << budget << '\n'
     << "restarts = " << restarts << '\n'
     << "tol = " << format_double(tol) << '\n'
     << "reg_weight = " << format_double(reg_weight) << '\n'
     << "alpha = " << (alpha ? format_double(*alpha) : std::string("auto")) << '\n'
     << "qaoa_p = " << qaoa_p << '\n'
     << "eda_population = " << eda_population << '\n'
     << "eda_generations = " << eda_generations << '\n'
     << "eda_truncation = " << format_double(eda_truncation) << '\n'
     << "train_fraction = " << format_double(train_fraction) << '\n'
     << "initial = " << format_double(initial) << '\n';
  return os.str();
}

void RunConfig::validate() const {
  if (m < 2) throw ContractError("m must be >= 2");
  if (!(lambda >= 0.0 && lambda < 1.0)) throw ContractError("lambda must lie in [0, 1)");
  if (std::find(kSolvers.begin(), kSolvers.end(), solver) == kSolvers.end()) {
    throw ContractError("unknown solver '" + solver + "' (expected pce, qaoa, eda, local or brute)");
  }
  if (k < 1 || k > 3) throw ContractError("k must be 1, 2 or 3");
  if (n_splits < 0) throw ContractError("splits must be >= 1 or auto");
  if (budget < 1) throw ContractError("budget must be >= 1");
  if (restarts < 1) throw ContractError("restarts must be >= 1");
  if (!(tol > 0.0)) throw ContractError("tol must be positive");
  if (qaoa_p < 1) throw ContractError("qaoa_p must be >= 1");
  if (eda_population != 0 && eda_population < 10) throw ContractError("eda_population must be >= 10");
  if (eda_generations < 1) throw ContractError("eda_generations must be >= 1");
  if (!(eda_truncation > 0.0 && eda_truncation < 1.0)) throw ContractError("eda_truncation must lie in (0, 1)");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw ContractError("train_fraction must lie in (0, 1)");
  if (!(initial > 0.0)) throw ContractError("initial investment must be positive");
  if (resolved_splits() + 1 > m) {
    throw ContractError("splits = " + std::to_string(resolved_splits()) + " needs at least " +
                        std::to_string(resolved_splits() + 1) + " assets, m = " + std::to_string(m));
  }
}

int RunConfig::resolved_splits() const { return n_splits > 0 ? n_splits : auto_splits(m); }

std::filesystem::path RunConfig::resolved_out_dir() const {
  if (!out_dir.empty()) return out_dir;
  if (const char* env = std::getenv(kOutDirEnv); env && *env) return env;
  return "pcepart_out";
}

int auto_splits(int m) {
  if (m < 2) throw ContractError("auto_splits: m must be >= 2");
  int s = 0;
  if (m >= 100) {
    s = m / 10 - 1;
  } else if (m >= 50) {
    s = 9;
  } else {
    s = std::max(1, m / 5);
  }
  return std::clamp(s, 1, m - 1);
}

void check_solver_caps(const std::string& solver, int m) {
  if (solver == "qaoa" && m > kQaoaMaxQubits) {
    throw ContractError("solver qaoa supports at most " + std::to_string(kQaoaMaxQubits) +
                        " assets (one qubit per asset), got m = " + std::to_string(m));
  }
  if (solver == "brute" && m > kBruteForceMaxVertices) {
    throw ContractError("solver brute supports at most " + std::to_string(kBruteForceMaxVertices) +
                        " assets, got m = " + std::to_string(m));
  }
}

CutSolver make_solver(const RunConfig& config) { return make_solver(config, config.solver); }

CutSolver make_solver(const RunConfig& config, const std::string& name) {
  CutSolver s;
  s.name = name;
  if (name == "pce") {
    PceConfig pc;
    pc.k = config.k;
    pc.alpha_override = config.alpha;
    pc.reg_weight = config.reg_weight;
    pc.max_evals = config.budget;
    pc.tol = config.tol;
    pc.restarts = config.restarts;
    s.solve = [pc](const Graph& view, std::uint64_t seed) {
      PceConfig c = pc;
      c.seed = seed;
      if (view.vertex_count() >= 2 && view.edge_count() > 0) {
        // Small views can need more than budget evaluations just to seed the simplex.
        const Sizing sz = compute_sizing(view.vertex_count(), c.k);
        c.max_evals = std::max(c.max_evals, 2 * sz.n * sz.p + 3);
      }
      return bipartition_pce(view, c);
    };
  } else if (name == "qaoa") {
    QaoaConfig qc;
    qc.p = config.qaoa_p;
    qc.max_evals = std::max(config.budget, 2 * config.qaoa_p + 2);
    qc.tol = config.tol;
    qc.restarts = config.restarts;
    s.solve = [qc](const Graph& view, std::uint64_t seed) {
      QaoaConfig c = qc;
      c.seed = seed;
      return solve_qaoa(view, c);
    };
  } else if (name == "eda") {
    UmdaOptions uo;
    uo.population = config.eda_population;
    uo.generations = config.eda_generations;
    uo.truncation = config.eda_truncation;
    s.solve = [uo](const Graph& view, std::uint64_t seed) {
      const auto start = std::chrono::steady_clock::now();
      UmdaOptions o = uo;
      o.seed = seed;
      Bipartition bp;
      bp.sides = umda_maxcut(view, o);
      bp.diagnostics.cut_value = cut_value(view, bp.sides);
      bp.diagnostics.evaluations = umda_population(view.vertex_count(), o) * o.generations;
      bp.diagnostics.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      return bp;
    };
  } else if (name == "local") {
    s.solve = [](const Graph& view, std::uint64_t seed) {
      const auto start = std::chrono::steady_clock::now();
      std::mt19937_64 rng(seed);
      Bits x0(static_cast<std::size_t>(view.vertex_count()));
      for (auto& b : x0) b = static_cast<std::uint8_t>(rng() & 1U);
      Bipartition bp;
      bp.sides = local_search_cut(view, std::move(x0), seed);
      if (!is_two_sided(bp.sides) || view.edge_count() == 0) {
        repair_partition(view, bp.sides);
        bp.diagnostics.repaired = true;
      }
      bp.diagnostics.cut_value = cut_value(view, bp.sides);
      bp.diagnostics.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      return bp;
    };
  } else if (name == "brute") {
    s.solve = [](const Graph& view, std::uint64_t) {
      const auto start = std::chrono::steady_clock::now();
      Bipartition bp;
      MaxCut mc = brute_force_maxcut(view);
      bp.sides = std::move(mc.sides);
      if (!is_two_sided(bp.sides) || view.edge_count() == 0) {
        repair_partition(view, bp.sides);
        bp.diagnostics.repaired = true;
      }
      bp.diagnostics.cut_value = cut_value(view, bp.sides);
      bp.diagnostics.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      return bp;
    };
  } else {
    throw ContractError("unknown solver '" + name + "'");
  }
  return s;
}

std::string sizing_table(const std::vector<int>& m_list, const std::vector<int>& k_list,
                         const std::vector<std::uint64_t>& edges) {
  if (!edges.empty() && edges.size() != m_list.size()) {
    throw ContractError("sizing: edge list must be empty or match the m list in length");
  }
  std::ostringstream os;
  os << "m,k,n,p,pce_gates,qaoa_p1_gates,qaoa_p2_gates\n";
  for (std::size_t i = 0; i < m_list.size(); ++i) {
    for (int k : k_list) {
      const Sizing sz = compute_sizing(m_list[i], k);
      os << sz.m << ',' << k << ',' << sz.n << ',' << sz.p << ',' << hea_gate_count(sz) << ',';
      if (!edges.empty()) {
        const auto m = static_cast<std::uint64_t>(m_list[i]);
        os << qaoa_gate_count(m, edges[i], 1) << ',' << qaoa_gate_count(m, edges[i], 2);
      } else {
        os << ',';
      }
      os << '\n';
    }
  }
  return os.str();
}

PipelineState run_stages(const RunConfig& config, Stage last) {
  config.validate();
  check_solver_caps(config.solver, config.m);
  if (config.dataset.empty()) throw ContractError("no dataset given");

  PipelineState st;
  st.prices = load_prices(config.dataset, config.m);
  std::tie(st.train, st.test) = split_train_test(st.prices, {config.train_fraction});
  st.train_returns = compute_returns(st.train);
  st.graph = build_graph(pearson_matrix(st.train_returns), config.lambda, st.prices.assets);
  if (last == Stage::Graph) return st;

  st.partition = recursive_bipartition(st.graph.graph, config.resolved_splits(), make_solver(config), config.seed);
  if (last == Stage::Partition) return st;

  st.portfolio = select_representatives(st.partition->labels, st.train_returns);
  st.strategy_test = backtest(st.test, *st.portfolio, config.initial);
  st.baseline_test = baseline_backtest(st.test, config.initial);
  st.strategy_train = backtest(st.train, *st.portfolio, config.initial);
  st.baseline_train = baseline_backtest(st.train, config.initial);
  return st;
}

nlohmann::json summarize(const RunConfig& config, const PipelineState& st) {
  nlohmann::json j;
  nlohmann::json cfg;
  cfg["data"] = config.dataset;
  cfg["m"] = config.m;
  cfg["lambda"] = config.lambda;
  cfg["solver"] = config.solver;
  cfg["k"] = config.k;
  cfg["splits"] = config.resolved_splits();
  cfg["seed"] = config.seed;
  cfg["budget"] = config.budget;
  cfg["restarts"] = config.restarts;
  cfg["train_fraction"] = config.train_fraction;
  j["config"] = cfg;

  j["dates"] = {{"total", st.prices.date_count()},
                {"train", st.train.date_count()},
                {"test", st.test.date_count()},
                {"train_end", st.train.dates.empty() ? "" : st.train.dates.back()},
                {"test_start", st.test.dates.empty() ? "" : st.test.dates.front()}};
  j["assets"] = st.prices.assets;

  const GraphStats gs = graph_stats(st.graph.graph);
  j["graph"] = {{"nodes", gs.nodes},
                {"edges", gs.edges},
                {"density", gs.density},
                {"average_degree", gs.average_degree},
                {"clustering", gs.clustering},
                {"lambda", st.graph.lambda}};
  if (config.solver == "pce") {
    const Sizing sz = compute_sizing(config.m, config.k);
    j["sizing"] = {{"n", sz.n}, {"p", sz.p}, {"gates", hea_gate_count(sz)}, {"parameters", 2 * sz.n * sz.p + 1}};
  }

  if (st.partition) {
    const auto& tree = st.partition->tree;
    nlohmann::json leaves = nlohmann::json::array();
    for (int id : tree.leaves) leaves.push_back(tree.nodes[static_cast<std::size_t>(id)].vertices);
    nlohmann::json splits = nlohmann::json::array();
    for (const auto& s : tree.splits) {
      splits.push_back({{"node", s.node},
                        {"size", tree.nodes[static_cast<std::size_t>(s.node)].vertices.size()},
                        {"cut", s.cut_value},
                        {"evaluations", s.diagnostics.evaluations},
                        {"repaired", s.diagnostics.repaired}});
    }
    std::size_t lo = SIZE_MAX, hi = 0;
    for (int id : tree.leaves) {
      const auto n = tree.nodes[static_cast<std::size_t>(id)].vertices.size();
      lo = std::min(lo, n);
      hi = std::max(hi, n);
    }
    j["partition"] = {{"effective_splits", tree.effective_splits()},
                      {"leaves", leaves},
                      {"splits", splits},
                      {"max_leaf", hi},
                      {"min_leaf", lo}};
  }
  if (st.portfolio) {
    nlohmann::json reps = nlohmann::json::array();
    for (int a : st.portfolio->representatives) reps.push_back(st.prices.assets[static_cast<std::size_t>(a)]);
    j["portfolio"] = {{"representatives", st.portfolio->representatives},
                      {"symbols", reps},
                      {"weights", st.portfolio->weights}};
  }
  if (st.strategy_test) {
    j["backtest"] = {{"strategy_test", backtest_summary(*st.strategy_test)},
                     {"baseline_test", backtest_summary(*st.baseline_test)},
                     {"strategy_train", backtest_summary(*st.strategy_train)},
                     {"baseline_train", backtest_summary(*st.baseline_train)}};
  }
  return j;
}

namespace {

// Tracks files written during a run so a failure can remove them.
class OutputSession {
 public:
  explicit OutputSession(std::filesystem::path dir) : dir_(std::move(dir)) {
    if (!std::filesystem::exists(dir_)) {
      std::filesystem::create_directories(dir_);
      created_dir_ = true;
    }
  }
  ~OutputSession() {
    if (committed_) return;
    std::error_code ec;
    for (const auto& f : files_) std::filesystem::remove(f, ec);
    if (created_dir_ && std::filesystem::is_empty(dir_, ec)) std::filesystem::remove(dir_, ec);
  }

  void write(const std::string& name, const std::string& content) {
    const auto path = dir_ / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    files_.push_back(path);
    out << content;
    if (!out) throw std::runtime_error("write failed for " + path.string());
  }

  void commit() { committed_ = true; }
  const std::vector<std::filesystem::path>& files() const { return files_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::filesystem::path> files_;
  bool created_dir_ = false;
  bool committed_ = false;
};

}  // namespace

RunReport run_and_write(const RunConfig& config, Stage last) {
  config.validate();
  check_solver_caps(config.solver, config.m);

  RunReport report;
  report.out_dir = config.resolved_out_dir();
  const PipelineState st = run_stages(config, last);

  OutputSession out(report.out_dir);
  out.write("config.txt", config.to_text());
  out.write("graph.json", graph_to_json(st.graph).dump(2) + "\n");
  out.write("graph.edges", graph_to_edge_list(st.graph.graph));

  nlohmann::json timings;
  timings["split_seconds"] = nlohmann::json::array();
  if (st.partition) {
    out.write("dendrogram.json", export_dendrogram(st.partition->tree).dump(2) + "\n");
    out.write("labels.csv", labels_to_csv(st.partition->labels, st.prices.assets));
    for (const auto& s : st.partition->tree.splits) timings["split_seconds"].push_back(s.diagnostics.wall_seconds);
  }
  if (st.strategy_test) {
    out.write("backtest_strategy.csv", backtest_to_csv(*st.strategy_test));
    out.write("backtest_baseline.csv", backtest_to_csv(*st.baseline_test));
  }
  report.summary = summarize(config, st);
  report.timings = timings;
  out.write("summary.json", report.summary.dump(2) + "\n");
  out.write("timings.json", timings.dump(2) + "\n");
  out.commit();
  report.files = out.files();
  return report;
}

std::vector<BenchmarkRow> run_benchmark(const RunConfig& config, const std::vector<std::string>& solvers) {
  config.validate();
  if (config.dataset.empty()) throw ContractError("no dataset given");
  std::vector<BenchmarkRow> rows;
  for (const auto& name : solvers) {
    BenchmarkRow row;
    row.solver = name;
    row.m = config.m;
    row.n_splits = config.resolved_splits();
    try {
      RunConfig c = config;
      c.solver = name;
      c.validate();
      check_solver_caps(name, c.m);
      PipelineState st = run_stages(c, Stage::Graph);

      const CutSolver solver = make_solver(c);
      const auto t0 = std::chrono::steady_clock::now();
      const Bipartition single = solver.solve(st.graph.graph, c.seed);
      row.split_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      row.split_cut = cut_value(st.graph.graph, single.sides);
      if (c.m <= 16) row.oracle_cut = brute_force_maxcut(st.graph.graph).value;

      st.partition = recursive_bipartition(st.graph.graph, c.resolved_splits(), solver, c.seed);
      st.portfolio = select_representatives(st.partition->labels, st.train_returns);
      const auto test = backtest(st.test, *st.portfolio, c.initial);
      const auto train = backtest(st.train, *st.portfolio, c.initial);
      row.terminal = test.terminal;
      row.baseline_terminal = baseline_backtest(st.test, c.initial).terminal;
      row.sharpe_test = test.sharpe;
      row.sharpe_train = train.sharpe;
      for (int id : st.partition->tree.leaves) {
        row.leaf_sizes.push_back(st.partition->tree.nodes[static_cast<std::size_t>(id)].vertices.size());
      }
      for (const auto& s : st.partition->tree.splits) row.split_cuts.push_back(s.cut_value);
    } catch (const std::exception& ex) {
      row.error = ex.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string benchmark_to_csv(const std::vector<BenchmarkRow>& rows) {
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  auto join = [](const auto& xs) {
    std::ostringstream os;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) os << ';';
      if constexpr (std::is_floating_point_v<std::decay_t<decltype(xs[i])>>) {
        os << format_double(xs[i]);
      } else {
        os << xs[i];
      }
    }
    return os.str();
  };
  std::ostringstream os;
  os << "solver,m,n_splits,split_cut,oracle_cut,cut_ratio,split_seconds,leaf_sizes,split_cuts,"
        "terminal,baseline_terminal,sharpe_train,sharpe_test,status\n";
  for (const auto& r : rows) {
    std::string ratio;
    if (r.oracle_cut && *r.oracle_cut > 0.0) ratio = format_double(r.split_cut / *r.oracle_cut);
    std::string status = r.error.empty() ? "ok" : "error: " + r.error;
    std::replace(status.begin(), status.end(), ',', ';');
    std::replace(status.begin(), status.end(), '\n', ' ');
    os << r.solver << ',' << r.m << ',' << r.n_splits << ',' << format_double(r.split_cut) << ','
       << opt(r.oracle_cut) << ',' << ratio << ',' << format_double(r.split_seconds) << ','
       << join(r.leaf_sizes) << ',' << join(r.split_cuts) << ',' << format_double(r.terminal) << ','
       << format_double(r.baseline_terminal) << ',' << opt(r.sharpe_train) << ',' << opt(r.sharpe_test) << ','
       << status << '\n';
  }
  return os.str();
}

}  // namespace pcepart
