#pragma once

// Two-qubit Ising system and a refocused TRP sweep acting as a CNOT.
//
// Basis order is |00>, |01>, |10>, |11> with |c t> = |c>_control (x) |t>_target
// and |0> = |up>, |1> = |down>. Frequencies are angular; J is in the same
// cycles unit so the Ising splitting is 2 pi J.

#include <array>
#include <complex>

#include "trp/dynamics.hpp"
#include "trp/profile.hpp"

namespace trp {

struct TwoQubitSystem {
  double omega_c = 0.0;
  double omega_t = 0.0;
  double J = 0.0;

  // Requires omega_c > omega_t > pi J > 0.
  void validate() const;
  friend bool operator==(const TwoQubitSystem&, const TwoQubitSystem&) = default;
};

struct LevelStructure {
  std::array<double, 4> energies{};  // |00>, |01>, |10>, |11>
  double omega_plus = 0.0;   // |10> <-> |11>
  double omega_minus = 0.0;  // |00> <-> |01>
};

LevelStructure level_structure(const TwoQubitSystem& sys);

class GateMatrix {
 public:
  using Matrix = std::array<std::array<Complex, 4>, 4>;

  GateMatrix() = default;
  explicit GateMatrix(const Matrix& m) : m_(m) {}

  static GateMatrix identity();

  Complex& operator()(int row, int col) { return m_[row][col]; }
  const Complex& operator()(int row, int col) const { return m_[row][col]; }
  const Matrix& data() const { return m_; }

  GateMatrix operator*(const GateMatrix& rhs) const;
  GateMatrix adjoint() const;
  // max |(U^dagger U - 1)_ij|
  double unitarity_error() const;
  // Largest magnitude coupling the control = 0 and control = 1 blocks.
  double off_block_magnitude() const;

 private:
  Matrix m_{};
};

GateMatrix ideal_cnot();

// <U_ref e_j | U_sim e_j> for each basis column j.
std::array<Complex, 4> column_overlaps(const GateMatrix& sim,
                                       const GateMatrix& ref);

// min_j |<U_ref e_j | U_sim e_j>|^2, insensitive to per-column phases.
double gate_fidelity(const GateMatrix& sim, const GateMatrix& ref);

struct CnotSimulation {
  GateMatrix gate;
  // Static z-field offset of the control = 0 block, units of b.
  double detuned_offset = 0.0;
  // max |tau - eta tau^(n-1)| over the sweep window.
  double half_bandwidth = 0.0;
  // false when pi J / b does not clear the sweep bandwidth.
  bool selective = true;
};

// Control qubit frozen (ideal refocusing); the target sees the TRP sweep
// centred on omega_plus, so the control = 0 block is detuned by -2 pi J.
// A zero-duration profile returns the identity.
CnotSimulation simulate_cnot(const TwoQubitSystem& sys, const SweepProfile& p,
                             const IntegratorSettings& s = {});

}  // namespace trp
