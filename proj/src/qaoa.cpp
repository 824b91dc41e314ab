#include "pcepart/qaoa.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "pcepart/errors.hpp"

namespace pcepart {

std::uint64_t qaoa_gate_count(std::uint64_t m, std::uint64_t edges, int p) {
  if (m < 1) throw ContractError("qaoa_gate_count: m must be >= 1");
  if (p < 1) throw ContractError("qaoa_gate_count: p must be >= 1");
  const auto layers = static_cast<std::uint64_t>(p);
  return layers * edges + (layers + 1) * m;
}

Circuit build_qaoa_circuit(const Graph& g, int p) {
  if (p < 1) throw ContractError("QAOA needs p >= 1");
  const int m = g.vertex_count();
  Circuit c(m);
  for (int q = 0; q < m; ++q) c.add(GateKind::H, q);
  double wmax = 0.0;
  for (const Edge& e : g.edges()) wmax = std::max(wmax, std::abs(e.w));
  if (wmax == 0.0) wmax = 1.0;
  for (int layer = 0; layer < 2 * p; ++layer) c.new_parameter();
  for (int layer = 0; layer < p; ++layer) {
    for (const Edge& e : g.edges()) {
      c.add(GateKind::CNOT, e.i, e.j);
      c.add_shared(GateKind::RZ, e.j, layer, e.w / wmax);
      c.add(GateKind::CNOT, e.i, e.j);
    }
    for (int q = 0; q < m; ++q) c.add_shared(GateKind::RX, q, p + layer, 2.0);
  }
  return c;
}

std::vector<double> basis_cut_values(const Graph& g) {
  const int m = g.vertex_count();
  std::vector<double> cuts(std::size_t{1} << m, 0.0);
  for (std::size_t b = 0; b < cuts.size(); ++b) {
    double c = 0.0;
    for (const Edge& e : g.edges()) {
      if (((b >> e.i) ^ (b >> e.j)) & 1U) c += e.w;
    }
    cuts[b] = c;
  }
  return cuts;
}

Bipartition solve_qaoa(const Graph& g, const QaoaConfig& config, const Minimizer& optimizer) {
  const int m = g.vertex_count();
  if (m > kQaoaMaxQubits) {
    throw ResourceError("QAOA width " + std::to_string(m) + " exceeds the limit of " +
                        std::to_string(kQaoaMaxQubits) + " qubits");
  }
  if (m < 2) throw ContractError("solve_qaoa: graph needs at least 2 vertices");
  if (config.p < 1) throw ContractError("solve_qaoa: p must be >= 1");
  if (config.restarts < 1) throw ContractError("solve_qaoa: restarts must be >= 1");

  const auto start = std::chrono::steady_clock::now();
  Bipartition out;
  out.sides.assign(static_cast<std::size_t>(m), 0);
  if (g.edge_count() == 0) {
    repair_partition(g, out.sides);
    out.diagnostics.repaired = true;
    return out;
  }

  const Circuit circuit = build_qaoa_circuit(g, config.p);
  const auto cuts = basis_cut_values(g);
  const StateVector initial = zero_state(m, kQaoaMaxQubits);
  auto evolve = [&](std::span<const double> params) {
    StateVector psi = initial;
    apply_circuit_inplace(psi, circuit, params);
    return psi;
  };

  Objective obj;
  obj.arity = static_cast<std::size_t>(circuit.parameter_count());
  obj.evaluate = [&](std::span<const double> params) {
    const StateVector psi = evolve(params);
    double expected = 0.0;
    for (std::size_t b = 0; b < cuts.size(); ++b) expected += std::norm(psi[b]) * cuts[b];
    return -expected;
  };
  MinimizeOptions mopts;
  mopts.budget = config.max_evals;
  mopts.tol = config.tol;

  double best_cut = -1.0;
  for (int r = 0; r < config.restarts; ++r) {
    std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                      static_cast<std::uint32_t>(r)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    std::vector<double> x0(obj.arity);
    for (auto& v : x0) v = angle(rng);

    const OptResult res = optimizer(obj, std::move(x0), mopts);
    out.diagnostics.evaluations += res.evaluations_used;
    const auto probs = evolve(res.best_params).probabilities();
    const auto top = static_cast<std::size_t>(std::max_element(probs.begin(), probs.end()) - probs.begin());
    if (cuts[top] > best_cut) {
      best_cut = cuts[top];
      for (int q = 0; q < m; ++q) out.sides[static_cast<std::size_t>(q)] = (top >> q) & 1U;
      out.diagnostics.final_loss = res.best_value;
      out.diagnostics.winning_restart = r;
    }
  }
  if (!is_two_sided(out.sides)) {
    repair_partition(g, out.sides);
    out.diagnostics.repaired = true;
  }
  out.diagnostics.cut_value = cut_value(g, out.sides);
  out.diagnostics.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace pcepart
