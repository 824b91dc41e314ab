#include "pcepart/pce.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "pcepart/errors.hpp"

namespace pcepart {

void PceConfig::validate() const {
  if (k < 1 || k > 3) throw ContractError("PCE order k must be 1, 2 or 3, got " + std::to_string(k));
  if (restarts < 1) throw ContractError("PCE restarts must be >= 1");
  if (max_evals < 1) throw ContractError("PCE max_evals must be >= 1");
  if (reg_weight < 0.0) throw ContractError("PCE reg_weight must be >= 0");
  if (alpha_override && !(*alpha_override > 0.0)) throw ContractError("PCE alpha must be positive");
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

Sizing compute_sizing(int m, int k) {
  if (m < 2) throw ContractError("compute_sizing: m must be >= 2, got " + std::to_string(m));
  if (k < 1 || k > 3) throw ContractError("compute_sizing: k must be 1, 2 or 3, got " + std::to_string(k));
  int n = k;
  while (3 * binomial(n, k) < static_cast<std::uint64_t>(m)) ++n;
  return {m, n, std::max(1, m / n)};
}

PauliAssignment enumerate_pauli_strings(const Sizing& sizing, int k) {
  const int n = sizing.n;
  if (3 * binomial(n, k) < static_cast<std::uint64_t>(sizing.m)) {
    throw ContractError("enumerate_pauli_strings: 3*C(" + std::to_string(n) + "," + std::to_string(k) +
                        ") < m = " + std::to_string(sizing.m));
  }
  PauliAssignment out;
  out.strings.reserve(static_cast<std::size_t>(sizing.m));
  std::vector<int> support(static_cast<std::size_t>(k));
  for (char letter : {'X', 'Y', 'Z'}) {
    for (int i = 0; i < k; ++i) support[static_cast<std::size_t>(i)] = i;
    while (true) {
      if (out.strings.size() == static_cast<std::size_t>(sizing.m)) return out;
      std::string s(static_cast<std::size_t>(n), 'I');
      for (int q : support) s[static_cast<std::size_t>(q)] = letter;
      out.strings.emplace_back(std::move(s));
      // Next k-subset in lexicographic order.
      int i = k - 1;
      while (i >= 0 && support[static_cast<std::size_t>(i)] == n - k + i) --i;
      if (i < 0) break;
      ++support[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j) support[static_cast<std::size_t>(j)] = support[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

Circuit build_hea(const Sizing& sizing) {
  const int n = sizing.n;
  Circuit c(n);
  for (int layer = 0; layer < sizing.p; ++layer) {
    for (int q = 0; q < n; ++q) {
      c.add_parametric(GateKind::RY, q);
      c.add_parametric(GateKind::RZ, q);
    }
    if (n == 2) {
      c.add(GateKind::CZ, 0, 1);
    } else if (n > 2) {
      for (int q = 0; q < n; ++q) c.add(GateKind::CZ, q, (q + 1) % n);
    }
  }
  c.add_parametric(GateKind::RY, 0);
  return c;
}

std::size_t hea_gate_count(const Sizing& sizing) {
  const std::size_t n = static_cast<std::size_t>(sizing.n);
  const std::size_t ring = n > 2 ? n : (n == 2 ? 1 : 0);
  return static_cast<std::size_t>(sizing.p) * (2 * n + ring) + 1;
}

double resolve_alpha(const PceConfig& config, int n_qubits) {
  if (config.alpha_override) return *config.alpha_override;
  return std::pow(static_cast<double>(n_qubits), config.k / 2);
}

Bits decode_signs(std::span<const double> expectations) {
  Bits x(expectations.size());
  for (std::size_t i = 0; i < expectations.size(); ++i) x[i] = expectations[i] > 0.0 ? 1 : 0;
  return x;
}

std::vector<double> pauli_expectations(const StateVector& state, const PauliAssignment& assignment) {
  std::vector<double> out(assignment.size());
  for (std::size_t i = 0; i < assignment.size(); ++i) out[i] = expectation(state, assignment.strings[i]);
  return out;
}

double pce_loss_from_expectations(const Graph& g, std::span<const double> expectations,
                                  double alpha, double reg_weight) {
  if (expectations.size() < static_cast<std::size_t>(g.vertex_count())) {
    throw ContractError("pce_loss: " + std::to_string(expectations.size()) +
                        " encoded variables do not cover " + std::to_string(g.vertex_count()) + " vertices");
  }
  const std::size_t m = static_cast<std::size_t>(g.vertex_count());
  std::vector<double> t(m);
  for (std::size_t i = 0; i < m; ++i) t[i] = std::tanh(alpha * expectations[i]);
  double loss = 0.0;
  for (const Edge& e : g.edges()) {
    loss += e.w * t[static_cast<std::size_t>(e.i)] * t[static_cast<std::size_t>(e.j)];
  }
  if (reg_weight > 0.0 && m > 0) {
    double mag = 0.0;
    for (double v : t) mag += std::abs(v);
    loss += reg_weight * (-mag / static_cast<double>(m));
  }
  return loss;
}

double pce_loss(const Graph& g, const PauliAssignment& assignment, const StateVector& state,
                const PceConfig& config) {
  const auto ex = pauli_expectations(state, assignment);
  return pce_loss_from_expectations(g, ex, resolve_alpha(config, state.n_qubits()), config.reg_weight);
}

Bipartition bipartition_pce(const Graph& g, const PceConfig& config, const Minimizer& optimizer) {
  config.validate();
  const int m = g.vertex_count();
  if (m < 2) throw ContractError("bipartition_pce: graph needs at least 2 vertices, got " + std::to_string(m));

  const auto start = std::chrono::steady_clock::now();
  Bipartition out;
  out.sides.assign(static_cast<std::size_t>(m), 0);
  if (g.edge_count() == 0) {
    repair_partition(g, out.sides);
    out.diagnostics.repaired = true;
    out.diagnostics.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
  }

  const Sizing sizing = compute_sizing(m, config.k);
  const PauliAssignment assignment = enumerate_pauli_strings(sizing, config.k);
  const Circuit circuit = build_hea(sizing);
  const double alpha = resolve_alpha(config, sizing.n);
  const StateVector initial = zero_state(sizing.n);

  auto encode = [&](std::span<const double> theta) {
    StateVector psi = initial;
    apply_circuit_inplace(psi, circuit, theta);
    return pauli_expectations(psi, assignment);
  };
  Objective obj;
  obj.arity = static_cast<std::size_t>(circuit.parameter_count());
  obj.evaluate = [&](std::span<const double> theta) {
    return pce_loss_from_expectations(g, encode(theta), alpha, config.reg_weight);
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
    Bits bits = decode_signs(encode(res.best_params));
    bits.resize(static_cast<std::size_t>(m));
    const double cut = cut_value(g, bits);
    if (cut > best_cut) {
      best_cut = cut;
      out.sides = std::move(bits);
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
