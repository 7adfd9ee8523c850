#include "trp/cnot.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "trp/error.hpp"

namespace trp {
namespace {

constexpr double kPi = std::numbers::pi;

// Evolves |up> and |down> through the sweep; columns of the 2x2 propagator.
std::array<SpinorState, 2> block_propagator(const SweepDynamics& dyn,
                                            std::span<const double> grid,
                                            const IntegratorSettings& s) {
  SpinorState up{1.0, 0.0};
  SpinorState down{0.0, 1.0};
  propagate(dyn, up, grid, s);
  propagate(dyn, down, grid, s);
  return {up, down};
}

}  // namespace

void TwoQubitSystem::validate() const {
  if (!(std::isfinite(omega_c) && std::isfinite(omega_t) && std::isfinite(J)))
    throw ConfigError("system parameters must be finite");
  if (!(omega_c > omega_t && omega_t > kPi * J && J > 0.0))
    throw ConfigError("system must satisfy omega_c > omega_t > pi J > 0");
}

LevelStructure level_structure(const TwoQubitSystem& sys) {
  sys.validate();
  // I_z = +1/2 for |0> = |up>, -1/2 for |1> = |down>.
  auto energy = [&](int c, int t) {
    const double mc = c == 0 ? 0.5 : -0.5;
    const double mt = t == 0 ? 0.5 : -0.5;
    return -sys.omega_c * mc - sys.omega_t * mt + 2.0 * kPi * sys.J * mc * mt;
  };
  LevelStructure ls;
  ls.energies = {energy(0, 0), energy(0, 1), energy(1, 0), energy(1, 1)};
  ls.omega_plus = ls.energies[3] - ls.energies[2];
  ls.omega_minus = ls.energies[1] - ls.energies[0];
  return ls;
}

GateMatrix GateMatrix::identity() {
  GateMatrix g;
  for (int i = 0; i < 4; ++i) g(i, i) = 1.0;
  return g;
}

GateMatrix GateMatrix::operator*(const GateMatrix& rhs) const {
  GateMatrix out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Complex acc{};
      for (int k = 0; k < 4; ++k) acc += m_[i][k] * rhs.m_[k][j];
      out(i, j) = acc;
    }
  return out;
}

GateMatrix GateMatrix::adjoint() const {
  GateMatrix out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = std::conj(m_[j][i]);
  return out;
}

double GateMatrix::unitarity_error() const {
  const GateMatrix prod = adjoint() * *this;
  double err = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      err = std::max(err, std::abs(prod(i, j) - (i == j ? 1.0 : 0.0)));
  return err;
}

double GateMatrix::off_block_magnitude() const {
  double m = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i / 2 != j / 2) m = std::max(m, std::abs(m_[i][j]));
  return m;
}

GateMatrix ideal_cnot() {
  GateMatrix g;
  g(0, 0) = 1.0;
  g(1, 1) = 1.0;
  g(2, 3) = 1.0;
  g(3, 2) = 1.0;
  return g;
}

std::array<Complex, 4> column_overlaps(const GateMatrix& sim,
                                       const GateMatrix& ref) {
  std::array<Complex, 4> out{};
  for (int j = 0; j < 4; ++j)
    for (int r = 0; r < 4; ++r) out[j] += std::conj(ref(r, j)) * sim(r, j);
  return out;
}

double gate_fidelity(const GateMatrix& sim, const GateMatrix& ref) {
  double f = 1.0;
  for (const Complex& o : column_overlaps(sim, ref)) f = std::min(f, std::norm(o));
  return f;
}

CnotSimulation simulate_cnot(const TwoQubitSystem& sys, const SweepProfile& p,
                             const IntegratorSettings& s) {
  sys.validate();
  CnotSimulation out;
  out.detuned_offset = -kPi * sys.J / p.field();
  if (p.empty()) {
    out.gate = GateMatrix::identity();
    return out;
  }
  s.validate();

  const std::vector<double> grid = uniform_grid(p.window(), s.grid_points);
  for (double tau : grid)
    out.half_bandwidth = std::max(
        out.half_bandwidth, std::abs(reduced_offset(p.order(), p.eta(), tau)));
  out.selective = std::abs(out.detuned_offset) > out.half_bandwidth;

  // Block c = 1 sits on resonance, block c = 0 is detuned by omega_minus - omega_plus.
  const std::array<double, 2> offsets{out.detuned_offset, 0.0};
  for (int c = 0; c < 2; ++c) {
    const auto cols = block_propagator(SweepDynamics::of(p, offsets[c]), grid, s);
    for (int t = 0; t < 2; ++t) {
      out.gate(2 * c + 0, 2 * c + t) = cols[t].up;
      out.gate(2 * c + 1, 2 * c + t) = cols[t].down;
    }
  }
  return out;
}

}  // namespace trp
