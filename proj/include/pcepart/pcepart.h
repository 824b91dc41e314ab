/*
 * C interface to the pcepart library: market-graph construction, recursive
 * max-cut partitioning (PCE, QAOA, EDA, local search, brute force) and
 * portfolio backtesting.
 *
 * Every function returns a pcp_status. On failure, pcp_last_error() gives a
 * message for the calling thread that stays valid until its next call.
 * Handles are opaque; release them with the matching *_free function.
 */
#ifndef PCEPART_H
#define PCEPART_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(PCEPART_BUILDING)
#define PCP_API __declspec(dllexport)
#else
#define PCP_API __declspec(dllimport)
#endif
#else
#define PCP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pcp_status {
  PCP_OK = 0,
  PCP_ERR_INTERNAL = 1,
  PCP_ERR_CONTRACT = 2, /* bad argument, precondition or cap violation */
  PCP_ERR_DATA = 3,     /* unusable input data */
  PCP_ERR_RESOURCE = 4, /* size limit exceeded inside a computation */
  PCP_ERR_IO = 5
} pcp_status;

typedef enum pcp_stage {
  PCP_STAGE_GRAPH = 0,     /* prices -> train split -> correlation graph */
  PCP_STAGE_PARTITION = 1, /* + recursive bipartition */
  PCP_STAGE_BACKTEST = 2   /* + representatives and backtests */
} pcp_stage;

typedef struct pcp_config pcp_config;
typedef struct pcp_result pcp_result;

PCP_API const char* pcp_version(void);
PCP_API const char* pcp_last_error(void);
PCP_API const char* pcp_status_name(pcp_status status);

/* Run configuration. Keys match the `key = value` config file format
 * (data, m, lambda, solver, k, splits, seed, budget, restarts, tol,
 * reg_weight, alpha, qaoa_p, eda_population, eda_generations,
 * eda_truncation, train_fraction, initial, out). */
PCP_API pcp_status pcp_config_new(pcp_config** out);
PCP_API void pcp_config_free(pcp_config* config);
PCP_API pcp_status pcp_config_set(pcp_config* config, const char* key, const char* value);
PCP_API pcp_status pcp_config_load(pcp_config* config, const char* path);
/* Canonical text form of the configuration (without the output directory). */
PCP_API pcp_status pcp_config_text(const pcp_config* config, pcp_result** out);

/* Qubits, layers and hardware-efficient-ansatz gate count for m variables at order k. */
PCP_API pcp_status pcp_sizing(int m, int k, int* n_qubits, int* layers, uint64_t* gates);
PCP_API pcp_status pcp_qaoa_gate_count(uint64_t m, uint64_t edges, int p, uint64_t* gates);
PCP_API pcp_status pcp_graph_metrics(uint64_t nodes, uint64_t edges, double* density, double* average_degree);
PCP_API pcp_status pcp_auto_splits(int m, int* n_splits);

/* CSV table; lists are comma separated. edges may be NULL or empty. */
PCP_API pcp_status pcp_sizing_table(const char* m_list, const char* k_list, const char* edges_list,
                                    pcp_result** out);

/* Runs the pipeline up to `stage` and writes its artifacts to the configured
 * output directory. The result text is the summary JSON. */
PCP_API pcp_status pcp_run(const pcp_config* config, pcp_stage stage, pcp_result** out);

/* Runs each comma-separated solver on the configured instance; writes
 * benchmark.csv to the output directory. The result text is the CSV. */
PCP_API pcp_status pcp_benchmark(const pcp_config* config, const char* solvers, pcp_result** out);

/* Splits one weighted graph with the configured solver (config may be NULL
 * for defaults). sides_out receives n_vertices entries of 0/1. */
PCP_API pcp_status pcp_maxcut(const pcp_config* config, int n_vertices, const int* edge_i, const int* edge_j,
                              const double* weights, size_t n_edges, uint64_t seed, uint8_t* sides_out,
                              double* cut_out);

PCP_API const char* pcp_result_text(const pcp_result* result);
PCP_API const char* pcp_result_output_dir(const pcp_result* result);
PCP_API void pcp_result_free(pcp_result* result);

#ifdef __cplusplus
}
#endif

#endif /* PCEPART_H */
