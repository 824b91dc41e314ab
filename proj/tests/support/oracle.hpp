// Reference implementations used only by the tests. Deliberately naive.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pcepart/graph.hpp"
#include "pcepart/statevector.hpp"

namespace oracle {

using cd = std::complex<double>;

struct Dense {
  std::size_t dim = 0;
  std::vector<cd> a;  // row-major
  explicit Dense(std::size_t d = 0) : dim(d), a(d * d) {}
  cd& operator()(std::size_t r, std::size_t c) { return a[r * dim + c]; }
  cd operator()(std::size_t r, std::size_t c) const { return a[r * dim + c]; }
};

inline Dense identity(std::size_t d) {
  Dense m(d);
  for (std::size_t i = 0; i < d; ++i) m(i, i) = 1.0;
  return m;
}

inline Dense mat2(cd a, cd b, cd c, cd d) {
  Dense m(2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

inline Dense kron(const Dense& x, const Dense& y) {
  Dense m(x.dim * y.dim);
  for (std::size_t i = 0; i < x.dim; ++i)
    for (std::size_t j = 0; j < x.dim; ++j)
      for (std::size_t k = 0; k < y.dim; ++k)
        for (std::size_t l = 0; l < y.dim; ++l) m(i * y.dim + k, j * y.dim + l) = x(i, j) * y(k, l);
  return m;
}

inline Dense add(const Dense& x, const Dense& y) {
  Dense m(x.dim);
  for (std::size_t i = 0; i < m.a.size(); ++i) m.a[i] = x.a[i] + y.a[i];
  return m;
}

inline Dense mul(const Dense& x, const Dense& y) {
  Dense m(x.dim);
  for (std::size_t i = 0; i < x.dim; ++i)
    for (std::size_t k = 0; k < x.dim; ++k)
      for (std::size_t j = 0; j < x.dim; ++j) m(i, j) += x(i, k) * y(k, j);
  return m;
}

inline Dense adjoint(const Dense& x) {
  Dense m(x.dim);
  for (std::size_t i = 0; i < x.dim; ++i)
    for (std::size_t j = 0; j < x.dim; ++j) m(i, j) = std::conj(x(j, i));
  return m;
}

inline const Dense& I2() { static const Dense m = mat2(1, 0, 0, 1); return m; }
inline const Dense& X2() { static const Dense m = mat2(0, 1, 1, 0); return m; }
inline const Dense& Y2() { static const Dense m = mat2(0, cd(0, -1), cd(0, 1), 0); return m; }
inline const Dense& Z2() { static const Dense m = mat2(1, 0, 0, -1); return m; }
inline const Dense& P0() { static const Dense m = mat2(1, 0, 0, 0); return m; }
inline const Dense& P1() { static const Dense m = mat2(0, 0, 0, 1); return m; }

// Full operator from one factor per qubit; qubit q is bit q, so qubit 0 is the rightmost factor.
inline Dense tensor(const std::vector<Dense>& per_qubit) {
  Dense m = identity(1);
  for (auto it = per_qubit.rbegin(); it != per_qubit.rend(); ++it) m = kron(m, *it);
  return m;
}

inline Dense embed(int n, int q, const Dense& op) {
  std::vector<Dense> f(static_cast<std::size_t>(n), I2());
  f[static_cast<std::size_t>(q)] = op;
  return tensor(f);
}

inline Dense embed2(int n, int q0, const Dense& a, int q1, const Dense& b) {
  std::vector<Dense> f(static_cast<std::size_t>(n), I2());
  f[static_cast<std::size_t>(q0)] = a;
  f[static_cast<std::size_t>(q1)] = b;
  return tensor(f);
}

inline Dense gate_matrix(int n, const pcepart::Gate& g, const std::vector<double>& params) {
  using pcepart::GateKind;
  const double th = g.bound_angle(params);
  const double c = std::cos(th / 2), s = std::sin(th / 2);
  switch (g.kind) {
    case GateKind::RX: return embed(n, g.targets[0], mat2(c, cd(0, -s), cd(0, -s), c));
    case GateKind::RY: return embed(n, g.targets[0], mat2(c, -s, s, c));
    case GateKind::RZ: return embed(n, g.targets[0], mat2(std::polar(1.0, -th / 2), 0, 0, std::polar(1.0, th / 2)));
    case GateKind::H: {
      const double r = 1.0 / std::sqrt(2.0);
      return embed(n, g.targets[0], mat2(r, r, r, -r));
    }
    case GateKind::CZ:
      // |0><0| x I + |1><1| x Z
      return add(embed2(n, g.targets[0], P0(), g.targets[1], I2()), embed2(n, g.targets[0], P1(), g.targets[1], Z2()));
    case GateKind::CNOT:
      return add(embed2(n, g.targets[0], P0(), g.targets[1], I2()), embed2(n, g.targets[0], P1(), g.targets[1], X2()));
  }
  return identity(std::size_t{1} << n);
}

inline Dense circuit_matrix(const pcepart::Circuit& c, const std::vector<double>& params) {
  Dense u = identity(std::size_t{1} << c.n_qubits());
  for (const auto& g : c.gates()) u = mul(gate_matrix(c.n_qubits(), g, params), u);
  return u;
}

inline Dense pauli_matrix(const std::string& letters) {
  std::vector<Dense> f;
  for (char ch : letters) {
    switch (ch) {
      case 'X': f.push_back(X2()); break;
      case 'Y': f.push_back(Y2()); break;
      case 'Z': f.push_back(Z2()); break;
      default: f.push_back(I2()); break;
    }
  }
  return tensor(f);
}

inline std::vector<cd> matvec(const Dense& m, const std::vector<cd>& v) {
  std::vector<cd> out(m.dim);
  for (std::size_t i = 0; i < m.dim; ++i)
    for (std::size_t j = 0; j < m.dim; ++j) out[i] += m(i, j) * v[j];
  return out;
}

// <psi| M |psi> with psi = U|0>.
inline double sandwich(const Dense& u, const Dense& op) {
  std::vector<cd> psi(u.dim);
  for (std::size_t i = 0; i < u.dim; ++i) psi[i] = u(i, 0);
  const auto mpsi = matvec(op, psi);
  cd acc = 0;
  for (std::size_t i = 0; i < u.dim; ++i) acc += std::conj(psi[i]) * mpsi[i];
  return acc.real();
}

// Random circuit over every gate kind, with a mix of fixed and parametric rotations.
inline pcepart::Circuit random_circuit(int n, int gates, std::mt19937_64& rng) {
  using pcepart::GateKind;
  pcepart::Circuit c(n);
  std::uniform_int_distribution<int> kind(0, n >= 2 ? 5 : 3);
  std::uniform_int_distribution<int> qubit(0, n - 1);
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);
  std::bernoulli_distribution coin(0.5);
  for (int i = 0; i < gates; ++i) {
    const auto k = static_cast<GateKind>(kind(rng));
    if (pcepart::is_rotation(k)) {
      if (coin(rng)) c.add_parametric(k, qubit(rng));
      else c.add_fixed_rotation(k, qubit(rng), angle(rng));
    } else if (k == GateKind::H) {
      c.add(k, qubit(rng));
    } else {
      int a = qubit(rng), b = qubit(rng);
      while (b == a) b = qubit(rng);
      c.add(k, a, b);
    }
  }
  return c;
}

inline std::vector<double> random_params(std::size_t count, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);
  std::vector<double> p(count);
  for (auto& x : p) x = angle(rng);
  return p;
}

inline std::string random_pauli(int n, std::mt19937_64& rng) {
  static const char letters[] = "IXYZ";
  std::uniform_int_distribution<int> pick(0, 3);
  std::string s;
  for (int q = 0; q < n; ++q) s.push_back(letters[pick(rng)]);
  return s;
}

// Exhaustive max cut by plain enumeration of every assignment.
inline double max_cut(const pcepart::Graph& g) {
  const int n = g.vertex_count();
  double best = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    double cut = 0.0;
    for (const auto& e : g.edges())
      if (((mask >> e.i) & 1U) != ((mask >> e.j) & 1U)) cut += e.w;
    best = std::max(best, cut);
  }
  return best;
}

// G(m, p) with weights uniform in (lo, hi].
inline pcepart::Graph erdos_renyi(int m, double p, std::mt19937_64& rng, double lo = 0.05, double hi = 1.0) {
  pcepart::Graph g(m);
  std::bernoulli_distribution edge(p);
  std::uniform_real_distribution<double> w(lo, hi);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (edge(rng)) g.add_edge(i, j, w(rng));
  return g;
}

}  // namespace oracle
