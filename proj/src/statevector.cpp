#include "pcepart/statevector.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "pcepart/errors.hpp"

namespace pcepart {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

struct Mat2 {
  Amplitude m00, m01, m10, m11;
};

Mat2 single_qubit_matrix(GateKind kind, double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  switch (kind) {
    case GateKind::RX:
      return {c, {0.0, -s}, {0.0, -s}, c};
    case GateKind::RY:
      return {c, -s, s, c};
    case GateKind::RZ:
      return {{c, -s}, 0.0, 0.0, {c, s}};
    case GateKind::H:
      return {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
    default:
      throw std::logic_error("not a single-qubit gate");
  }
}

void apply_single(std::span<Amplitude> amps, int qubit, const Mat2& m) {
  const std::size_t stride = std::size_t{1} << qubit;
  const std::size_t dim = amps.size();
  for (std::size_t block = 0; block < dim; block += 2 * stride) {
    for (std::size_t i = block; i < block + stride; ++i) {
      const Amplitude a = amps[i];
      const Amplitude b = amps[i + stride];
      amps[i] = m.m00 * a + m.m01 * b;
      amps[i + stride] = m.m10 * a + m.m11 * b;
    }
  }
}

// Diagonal RZ avoids the two complex products against zero.
void apply_rz(std::span<Amplitude> amps, int qubit, double theta) {
  const Amplitude lo = std::polar(1.0, -theta / 2.0);
  const Amplitude hi = std::polar(1.0, theta / 2.0);
  const std::size_t bit = std::size_t{1} << qubit;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    amps[i] *= (i & bit) ? hi : lo;
  }
}

}  // namespace

double StateVector::norm() const {
  double sum = 0.0;
  for (const auto& a : amplitudes_) sum += std::norm(a);
  return std::sqrt(sum);
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> out(amplitudes_.size());
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) out[i] = std::norm(amplitudes_[i]);
  return out;
}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amplitudes) {
  const std::size_t dim = amplitudes.size();
  if (dim == 0 || !std::has_single_bit(dim)) {
    throw ContractError("amplitude count must be a power of two, got " + std::to_string(dim));
  }
  StateVector s;
  s.n_qubits_ = std::countr_zero(dim);
  s.amplitudes_ = std::move(amplitudes);
  return s;
}

StateVector zero_state(int n_qubits, int max_qubits) {
  if (n_qubits < 1) {
    throw ContractError("zero_state: n_qubits must be >= 1, got " + std::to_string(n_qubits));
  }
  if (n_qubits > max_qubits) {
    throw ResourceError("zero_state: " + std::to_string(n_qubits) +
                        " qubits exceeds the simulator limit of " + std::to_string(max_qubits));
  }
  StateVector s;
  s.n_qubits_ = n_qubits;
  s.amplitudes_.assign(std::size_t{1} << n_qubits, Amplitude{0.0, 0.0});
  s.amplitudes_[0] = 1.0;
  return s;
}

std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::H: return "H";
    case GateKind::CZ: return "CZ";
    case GateKind::CNOT: return "CNOT";
  }
  return "?";
}

bool is_rotation(GateKind kind) {
  return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ;
}

int gate_arity(GateKind kind) {
  return (kind == GateKind::CZ || kind == GateKind::CNOT) ? 2 : 1;
}

Gate Gate::inverse(std::span<const double> params) const {
  Gate inv = *this;
  if (is_rotation(kind)) {
    inv.angle = -bound_angle(params);
    inv.param = -1;
    inv.scale = 1.0;
  }
  return inv;
}

void Circuit::check_qubit(int q) const {
  if (q < 0 || q >= n_qubits_) {
    throw ContractError("qubit index " + std::to_string(q) + " out of range for " +
                        std::to_string(n_qubits_) + "-qubit circuit");
  }
}

std::vector<std::size_t> Circuit::parameter_slots() const {
  std::vector<std::size_t> slots;
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    if (gates_[i].param >= 0) slots.push_back(i);
  }
  return slots;
}

void Circuit::add(GateKind kind, int q0, int q1) {
  Gate g;
  g.kind = kind;
  check_qubit(q0);
  if (gate_arity(kind) == 2) {
    check_qubit(q1);
    if (q0 == q1) throw ContractError("two-qubit gate needs distinct targets");
    g.targets = {q0, q1};
  } else {
    g.targets = {q0, -1};
  }
  gates_.push_back(g);
}

void Circuit::add_fixed_rotation(GateKind kind, int qubit, double angle) {
  if (!is_rotation(kind)) throw ContractError("add_fixed_rotation: not a rotation gate");
  check_qubit(qubit);
  Gate g;
  g.kind = kind;
  g.targets = {qubit, -1};
  g.angle = angle;
  gates_.push_back(g);
}

int Circuit::add_parametric(GateKind kind, int qubit) {
  const int idx = n_params_;
  add_shared(kind, qubit, idx, 1.0);
  n_params_ = idx + 1;
  return idx;
}

void Circuit::add_shared(GateKind kind, int qubit, int param, double scale) {
  if (!is_rotation(kind)) throw ContractError("parametric gate must be a rotation");
  if (param < 0) throw ContractError("negative parameter index");
  check_qubit(qubit);
  Gate g;
  g.kind = kind;
  g.targets = {qubit, -1};
  g.param = param;
  g.scale = scale;
  gates_.push_back(g);
  if (param >= n_params_) n_params_ = param + 1;
}

Circuit& Circuit::append(const Circuit& other) {
  if (other.n_qubits_ != n_qubits_) {
    throw ContractError("cannot concatenate circuits of different widths");
  }
  const int offset = n_params_;
  for (Gate g : other.gates_) {
    if (g.param >= 0) g.param += offset;
    gates_.push_back(g);
  }
  n_params_ += other.n_params_;
  return *this;
}

Circuit operator+(Circuit lhs, const Circuit& rhs) {
  lhs.append(rhs);
  return lhs;
}

void apply_gate(StateVector& state, const Gate& gate, std::span<const double> params) {
  const int n = state.n_qubits();
  for (int t = 0; t < gate_arity(gate.kind); ++t) {
    const int q = gate.targets[static_cast<std::size_t>(t)];
    if (q < 0 || q >= n) {
      throw ContractError("gate target " + std::to_string(q) + " out of range for " +
                          std::to_string(n) + " qubits");
    }
  }
  auto amps = state.amplitudes();
  switch (gate.kind) {
    case GateKind::RZ:
      apply_rz(amps, gate.targets[0], gate.bound_angle(params));
      break;
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::H:
      apply_single(amps, gate.targets[0], single_qubit_matrix(gate.kind, gate.bound_angle(params)));
      break;
    case GateKind::CZ: {
      const std::size_t mask = (std::size_t{1} << gate.targets[0]) | (std::size_t{1} << gate.targets[1]);
      for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & mask) == mask) amps[i] = -amps[i];
      }
      break;
    }
    case GateKind::CNOT: {
      const std::size_t control = std::size_t{1} << gate.targets[0];
      const std::size_t target = std::size_t{1} << gate.targets[1];
      for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & control) && !(i & target)) std::swap(amps[i], amps[i | target]);
      }
      break;
    }
  }
}

void apply_circuit_inplace(StateVector& state, const Circuit& circuit,
                           std::span<const double> params) {
  if (circuit.n_qubits() != state.n_qubits()) {
    throw ContractError("circuit width " + std::to_string(circuit.n_qubits()) +
                        " does not match state width " + std::to_string(state.n_qubits()));
  }
  if (params.size() != static_cast<std::size_t>(circuit.parameter_count())) {
    throw ContractError("expected " + std::to_string(circuit.parameter_count()) +
                        " parameters, got " + std::to_string(params.size()));
  }
  for (const Gate& g : circuit.gates()) apply_gate(state, g, params);
}

StateVector apply_circuit(const StateVector& state, const Circuit& circuit,
                          std::span<const double> params) {
  StateVector out = state;
  apply_circuit_inplace(out, circuit, params);
  return out;
}

PauliString::PauliString(std::string letters) : letters_(std::move(letters)) {
  if (letters_.empty()) throw ContractError("empty Pauli string");
  if (letters_.size() > static_cast<std::size_t>(kMaxQubits)) {
    throw ContractError("Pauli string longer than the simulator limit");
  }
  for (std::size_t q = 0; q < letters_.size(); ++q) {
    const std::size_t bit = std::size_t{1} << q;
    switch (letters_[q]) {
      case 'I': break;
      case 'X': x_mask_ |= bit; break;
      case 'Y': x_mask_ |= bit; z_mask_ |= bit; ++y_count_; break;
      case 'Z': z_mask_ |= bit; break;
      default:
        throw ContractError(std::string("invalid Pauli letter '") + letters_[q] + "'");
    }
  }
}

int PauliString::weight() const { return std::popcount(x_mask_ | z_mask_); }

bool PauliString::commutes_with(const PauliString& other) const {
  // Symplectic product: count positions where the two factors anticommute.
  const int anti = std::popcount(x_mask_ & other.z_mask_) + std::popcount(z_mask_ & other.x_mask_);
  return anti % 2 == 0;
}

double expectation(const StateVector& state, const PauliString& pauli) {
  if (pauli.n_qubits() != state.n_qubits()) {
    throw ContractError("Pauli string on " + std::to_string(pauli.n_qubits()) +
                        " qubits applied to a " + std::to_string(state.n_qubits()) + "-qubit state");
  }
  // P|b> = i^{#Y} (-1)^{|b & phase|} |b ^ flip>, fused with the inner product.
  const auto amps = state.amplitudes();
  const std::size_t flip = pauli.flip_mask();
  const std::size_t phase = pauli.phase_mask();
  Amplitude sum{0.0, 0.0};
  for (std::size_t b = 0; b < amps.size(); ++b) {
    const Amplitude term = std::conj(amps[b ^ flip]) * amps[b];
    sum += (std::popcount(b & phase) & 1) ? -term : term;
  }
  static constexpr Amplitude kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  sum *= kIPow[pauli.y_count() % 4];
  if (std::abs(sum.imag()) >= 1e-10) {
    throw std::logic_error("Pauli expectation has imaginary residue " + std::to_string(sum.imag()));
  }
  return sum.real();
}

}  // namespace pcepart
