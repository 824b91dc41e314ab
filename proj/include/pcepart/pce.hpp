#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pcepart/graph.hpp"
#include "pcepart/optimize.hpp"
#include "pcepart/statevector.hpp"

namespace pcepart {

/// Pauli correlation encoding settings.
struct PceConfig {
  int k = 3;                            // encoding order, 1..3
  std::optional<double> alpha_override; // default n^floor(k/2)
  double reg_weight = 0.0;              // coefficient of the magnitude penalty
  int max_evals = 1000;                 // optimizer budget per restart
  double tol = 1e-6;
  int restarts = 1;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Qubit and layer counts for m binary variables.
struct Sizing {
  int m = 0;
  int n = 0;  // qubits
  int p = 0;  // HEA layers
};

std::uint64_t binomial(int n, int k);

/// Smallest n with 3 * C(n, k) >= m; p = max(1, floor(m / n)).
Sizing compute_sizing(int m, int k);

/// m weight-k strings: X family, then Y, then Z; supports in lexicographic order.
struct PauliAssignment {
  std::vector<PauliString> strings;
  std::size_t size() const { return strings.size(); }
};

PauliAssignment enumerate_pauli_strings(const Sizing& sizing, int k);

/// p layers of (RY, RZ per qubit, then a CZ ring), closed by one RY on qubit 0.
/// For n >= 3 this is 3np + 1 gates and 2np + 1 parameters.
Circuit build_hea(const Sizing& sizing);

/// Gate count of build_hea without building it.
std::size_t hea_gate_count(const Sizing& sizing);

double resolve_alpha(const PceConfig& config, int n_qubits);

/// x_i = 1 iff expectation_i > 0.
Bits decode_signs(std::span<const double> expectations);

std::vector<double> pauli_expectations(const StateVector& state, const PauliAssignment& assignment);

/// Correlation loss over the edges from precomputed expectations.
double pce_loss_from_expectations(const Graph& g, std::span<const double> expectations,
                                  double alpha, double reg_weight);

double pce_loss(const Graph& g, const PauliAssignment& assignment, const StateVector& state,
                const PceConfig& config);

struct BipartitionDiagnostics {
  double final_loss = 0.0;
  double cut_value = 0.0;
  int evaluations = 0;
  double wall_seconds = 0.0;
  int winning_restart = -1;  // -1 when no optimization ran (edgeless / trivial)
  bool repaired = false;
};

struct Bipartition {
  Bits sides;  // per local vertex; side 1 holds the positive-sign variables
  BipartitionDiagnostics diagnostics;
};

/// One variational max-cut split. Restart r draws its initial angles from
/// an independent stream seeded by (seed, r); the restart with the
/// highest decoded cut wins.
Bipartition bipartition_pce(const Graph& g, const PceConfig& config,
                            const Minimizer& optimizer = default_minimizer());

}  // namespace pcepart
