#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pcepart {

using Amplitude = std::complex<double>;

/// Hard cap on simulated width. 2^24 amplitudes is 256 MiB.
inline constexpr int kMaxQubits = 24;

/// Dense 2^n amplitude vector. Qubit q is bit q of the basis index.
class StateVector {
 public:
  StateVector() = default;

  int n_qubits() const { return n_qubits_; }
  std::size_t dimension() const { return amplitudes_.size(); }

  std::span<const Amplitude> amplitudes() const { return amplitudes_; }
  std::span<Amplitude> amplitudes() { return amplitudes_; }

  const Amplitude& operator[](std::size_t i) const { return amplitudes_[i]; }
  Amplitude& operator[](std::size_t i) { return amplitudes_[i]; }

  double norm() const;
  std::vector<double> probabilities() const;

  /// Builds a state from raw amplitudes; length must be a power of two.
  static StateVector from_amplitudes(std::vector<Amplitude> amplitudes);

  friend StateVector zero_state(int n_qubits, int max_qubits);

 private:
  int n_qubits_ = 0;
  std::vector<Amplitude> amplitudes_;
};

/// |0...0> on n qubits. Throws ResourceError above max_qubits.
StateVector zero_state(int n_qubits, int max_qubits = kMaxQubits);

enum class GateKind { RX, RY, RZ, H, CZ, CNOT };

std::string_view gate_name(GateKind kind);
bool is_rotation(GateKind kind);
int gate_arity(GateKind kind);

/// One gate. Rotation angles are either fixed (`param < 0`) or bound as
/// `scale * params[param]` when the circuit is applied.
struct Gate {
  GateKind kind = GateKind::H;
  std::array<int, 2> targets{0, -1};  // CNOT: {control, target}
  double angle = 0.0;
  int param = -1;
  double scale = 1.0;

  double bound_angle(std::span<const double> params) const {
    return param < 0 ? angle : scale * params[static_cast<std::size_t>(param)];
  }

  /// Inverse with the parameter binding already resolved.
  Gate inverse(std::span<const double> params) const;
};

class Circuit {
 public:
  explicit Circuit(int n_qubits = 0) : n_qubits_(n_qubits) {}

  int n_qubits() const { return n_qubits_; }
  std::size_t gate_count() const { return gates_.size(); }
  int parameter_count() const { return n_params_; }
  const std::vector<Gate>& gates() const { return gates_; }

  /// Indices of gates whose angle is bound to a free parameter.
  std::vector<std::size_t> parameter_slots() const;

  void add(GateKind kind, int q0, int q1 = -1);
  void add_fixed_rotation(GateKind kind, int qubit, double angle);
  /// Rotation driven by a fresh parameter; returns its index.
  int add_parametric(GateKind kind, int qubit);
  /// Rotation driven by an existing parameter, scaled.
  void add_shared(GateKind kind, int qubit, int param, double scale);
  /// Reserves a parameter index with no gate yet attached.
  int new_parameter() { return n_params_++; }

  /// Concatenation; the parameters of `other` are appended after ours.
  Circuit& append(const Circuit& other);

 private:
  void check_qubit(int q) const;

  int n_qubits_;
  int n_params_ = 0;
  std::vector<Gate> gates_;
};

Circuit operator+(Circuit lhs, const Circuit& rhs);

void apply_gate(StateVector& state, const Gate& gate, std::span<const double> params = {});

/// Pure evolution: returns circuit(params)|state>, leaving `state` untouched.
StateVector apply_circuit(const StateVector& state, const Circuit& circuit,
                          std::span<const double> params);

/// In-place variant for hot loops.
void apply_circuit_inplace(StateVector& state, const Circuit& circuit,
                           std::span<const double> params);

/// Tensor product of single-qubit Paulis; letter q acts on qubit q.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::string letters);

  int n_qubits() const { return static_cast<int>(letters_.size()); }
  const std::string& letters() const { return letters_; }
  char at(int q) const { return letters_[static_cast<std::size_t>(q)]; }
  int weight() const;

  /// Bits flipped by X/Y factors.
  std::size_t flip_mask() const { return x_mask_; }
  /// Bits whose value contributes a sign (Y/Z factors).
  std::size_t phase_mask() const { return z_mask_; }
  int y_count() const { return y_count_; }

  bool commutes_with(const PauliString& other) const;

  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.letters_ == b.letters_;
  }

 private:
  std::string letters_;
  std::size_t x_mask_ = 0;
  std::size_t z_mask_ = 0;
  int y_count_ = 0;
};

/// <state|P|state>. Throws ContractError on width mismatch.
double expectation(const StateVector& state, const PauliString& pauli);

}  // namespace pcepart
