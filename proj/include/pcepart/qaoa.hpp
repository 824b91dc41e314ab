#pragma once

#include <cstdint>

#include "pcepart/graph.hpp"
#include "pcepart/optimize.hpp"
#include "pcepart/pce.hpp"
#include "pcepart/statevector.hpp"

namespace pcepart {

/// One-hot encoding uses one qubit per vertex; keep the statevector small.
inline constexpr int kQaoaMaxQubits = 14;

struct QaoaConfig {
  int p = 5;
  int max_evals = 1000;
  double tol = 1e-6;
  int restarts = 1;
  std::uint64_t seed = 0;
};

/// p*E + (p+1)*m: one H per qubit up front, then per layer one ZZ phase
/// gate per edge (counted once) and one RX mixer per qubit.
std::uint64_t qaoa_gate_count(std::uint64_t m, std::uint64_t edges, int p);

/// Parameters are [gamma_1..gamma_p, beta_1..beta_p]. Each edge phase is
/// realized as CNOT, RZ(gamma * w / w_max), CNOT.
Circuit build_qaoa_circuit(const Graph& g, int p);

/// Cut value of every computational basis state (bit q = side of vertex q).
std::vector<double> basis_cut_values(const Graph& g);

/// Maximizes the expected cut over the 2p angles. The answer is the most
/// probable basis state of the best restart, repaired to be two-sided.
Bipartition solve_qaoa(const Graph& g, const QaoaConfig& config,
                       const Minimizer& optimizer = default_minimizer());

}  // namespace pcepart
