#include "pcepart/pcepart.h"

#include <exception>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "pcepart/errors.hpp"
#include "pcepart/market.hpp"
#include "pcepart/pce.hpp"
#include "pcepart/pipeline.hpp"
#include "pcepart/qaoa.hpp"

struct pcp_config {
  pcepart::RunConfig value;
};

struct pcp_result {
  std::string text;
  std::string out_dir;
};

namespace {

thread_local std::string g_last_error;

pcp_status fail(pcp_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

template <typename F>
pcp_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return PCP_OK;
  } catch (const pcepart::ContractError& e) {
    return fail(PCP_ERR_CONTRACT, e.what());
  } catch (const pcepart::DataError& e) {
    return fail(PCP_ERR_DATA, e.what());
  } catch (const pcepart::ResourceError& e) {
    return fail(PCP_ERR_RESOURCE, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(PCP_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(PCP_ERR_RESOURCE, "out of memory");
  } catch (const std::exception& e) {
    return fail(PCP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(PCP_ERR_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw pcepart::ContractError(what);
}

template <typename T>
std::vector<T> parse_list(const char* text, const char* what) {
  std::vector<T> out;
  if (!text) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    std::istringstream is(item);
    T v{};
    if (!(is >> v) || !(is >> std::ws).eof()) {
      throw pcepart::ContractError(std::string("bad ") + what + " entry '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

extern "C" {

const char* pcp_version(void) { return "0.1.0"; }

const char* pcp_last_error(void) { return g_last_error.c_str(); }

const char* pcp_status_name(pcp_status status) {
  switch (status) {
    case PCP_OK: return "ok";
    case PCP_ERR_INTERNAL: return "internal error";
    case PCP_ERR_CONTRACT: return "contract error";
    case PCP_ERR_DATA: return "data error";
    case PCP_ERR_RESOURCE: return "resource error";
    case PCP_ERR_IO: return "i/o error";
  }
  return "unknown status";
}

pcp_status pcp_config_new(pcp_config** out) {
  return guarded([&] {
    require(out != nullptr, "pcp_config_new: null output pointer");
    *out = new pcp_config{};
  });
}

void pcp_config_free(pcp_config* config) { delete config; }

pcp_status pcp_config_set(pcp_config* config, const char* key, const char* value) {
  return guarded([&] {
    require(config && key && value, "pcp_config_set: null argument");
    config->value.set(key, value);
  });
}

pcp_status pcp_config_load(pcp_config* config, const char* path) {
  return guarded([&] {
    require(config && path, "pcp_config_load: null argument");
    config->value.load_file(path);
  });
}

pcp_status pcp_config_text(const pcp_config* config, pcp_result** out) {
  return guarded([&] {
    require(config && out, "pcp_config_text: null argument");
    *out = new pcp_result{config->value.to_text(), {}};
  });
}

pcp_status pcp_sizing(int m, int k, int* n_qubits, int* layers, uint64_t* gates) {
  return guarded([&] {
    const auto sz = pcepart::compute_sizing(m, k);
    if (n_qubits) *n_qubits = sz.n;
    if (layers) *layers = sz.p;
    if (gates) *gates = pcepart::hea_gate_count(sz);
  });
}

pcp_status pcp_qaoa_gate_count(uint64_t m, uint64_t edges, int p, uint64_t* gates) {
  return guarded([&] {
    require(gates != nullptr, "pcp_qaoa_gate_count: null output pointer");
    *gates = pcepart::qaoa_gate_count(m, edges, p);
  });
}

pcp_status pcp_graph_metrics(uint64_t nodes, uint64_t edges, double* density, double* average_degree) {
  return guarded([&] {
    require(nodes == 0 || edges <= nodes * (nodes - 1) / 2, "pcp_graph_metrics: more edges than vertex pairs");
    if (density) *density = pcepart::graph_density(nodes, edges);
    if (average_degree) *average_degree = pcepart::average_degree(nodes, edges);
  });
}

pcp_status pcp_auto_splits(int m, int* n_splits) {
  return guarded([&] {
    require(n_splits != nullptr, "pcp_auto_splits: null output pointer");
    *n_splits = pcepart::auto_splits(m);
  });
}

pcp_status pcp_sizing_table(const char* m_list, const char* k_list, const char* edges_list, pcp_result** out) {
  return guarded([&] {
    require(m_list && k_list && out, "pcp_sizing_table: null argument");
    const auto ms = parse_list<int>(m_list, "m");
    const auto ks = parse_list<int>(k_list, "k");
    const auto es = parse_list<std::uint64_t>(edges_list, "edges");
    require(!ms.empty() && !ks.empty(), "pcp_sizing_table: empty m or k list");
    *out = new pcp_result{pcepart::sizing_table(ms, ks, es), {}};
  });
}

pcp_status pcp_run(const pcp_config* config, pcp_stage stage, pcp_result** out) {
  return guarded([&] {
    require(config && out, "pcp_run: null argument");
    pcepart::Stage s = pcepart::Stage::Backtest;
    switch (stage) {
      case PCP_STAGE_GRAPH: s = pcepart::Stage::Graph; break;
      case PCP_STAGE_PARTITION: s = pcepart::Stage::Partition; break;
      case PCP_STAGE_BACKTEST: s = pcepart::Stage::Backtest; break;
      default: throw pcepart::ContractError("pcp_run: unknown stage");
    }
    const auto report = pcepart::run_and_write(config->value, s);
    *out = new pcp_result{report.summary.dump(2), report.out_dir.string()};
  });
}

pcp_status pcp_benchmark(const pcp_config* config, const char* solvers, pcp_result** out) {
  return guarded([&] {
    require(config && solvers && out, "pcp_benchmark: null argument");
    std::vector<std::string> names;
    std::stringstream ss(solvers);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) names.push_back(item);
    }
    require(!names.empty(), "pcp_benchmark: no solvers given");
    const auto rows = pcepart::run_benchmark(config->value, names);
    const std::string csv = pcepart::benchmark_to_csv(rows);
    const auto dir = config->value.resolved_out_dir();
    std::filesystem::create_directories(dir);
    std::ofstream f(dir / "benchmark.csv", std::ios::binary | std::ios::trunc);
    if (!(f << csv)) throw std::filesystem::filesystem_error("cannot write benchmark.csv", dir, std::make_error_code(std::errc::io_error));
    *out = new pcp_result{csv, dir.string()};
  });
}

pcp_status pcp_maxcut(const pcp_config* config, int n_vertices, const int* edge_i, const int* edge_j,
                      const double* weights, size_t n_edges, uint64_t seed, uint8_t* sides_out, double* cut_out) {
  return guarded([&] {
    require(n_vertices >= 2, "pcp_maxcut: need at least 2 vertices");
    require(sides_out != nullptr, "pcp_maxcut: null output pointer");
    require(n_edges == 0 || (edge_i && edge_j && weights), "pcp_maxcut: null edge arrays");
    pcepart::Graph g(n_vertices);
    for (size_t e = 0; e < n_edges; ++e) g.add_edge(edge_i[e], edge_j[e], weights[e]);
    const pcepart::RunConfig cfg = config ? config->value : pcepart::RunConfig{};
    pcepart::check_solver_caps(cfg.solver, n_vertices);
    const auto bp = pcepart::make_solver(cfg).solve(g, seed);
    for (int v = 0; v < n_vertices; ++v) sides_out[v] = bp.sides[static_cast<std::size_t>(v)];
    if (cut_out) *cut_out = pcepart::cut_value(g, bp.sides);
  });
}

const char* pcp_result_text(const pcp_result* result) { return result ? result->text.c_str() : ""; }

const char* pcp_result_output_dir(const pcp_result* result) { return result ? result->out_dir.c_str() : ""; }

void pcp_result_free(pcp_result* result) { delete result; }

}  // extern "C"
