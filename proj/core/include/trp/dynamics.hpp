#pragma once

// Single-qubit Schrodinger dynamics under a twisted rapid passage sweep.
//
// Everything here runs in dimensionless time tau. The lab-basis generator is
//
//   i d|psi>/dtau = -(1/lambda) [cos(phi) sx - sin(phi) sy + (tau + offset) sz] |psi>
//
// with phi(tau) = (2/n) (eta/lambda) tau^n. Basis index 0 is |sz = +1> (up).

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "trp/profile.hpp"

namespace trp {

using Complex = std::complex<double>;

inline constexpr double kFaultToleranceThreshold = 1e-4;

struct SpinorState {
  Complex up;
  Complex down;

  double norm_squared() const { return std::norm(up) + std::norm(down); }
};

inline Complex inner(const SpinorState& bra, const SpinorState& ket) {
  return std::conj(bra.up) * ket.up + std::conj(bra.down) * ket.down;
}

// Instantaneous eigenbasis. minus is the Bloch-parallel (lower) state.
struct AdiabaticFrame {
  double e_minus = 0.0;
  double e_plus = 0.0;
  SpinorState minus;
  SpinorState plus;
};

// Eigenbasis of H = -sigma.F. Gauge: both spinors have a real non-negative
// up component.
AdiabaticFrame eigenframe(const Vec3& field);

// Eigenbasis of the lab Hamiltonian -sigma.F(t), t dimensional.
AdiabaticFrame adiabatic_frame(const SweepProfile& p, double t);

// Eigenbasis of the rotating-frame Hamiltonian, expressed in the lab basis
// through the frame transform. Energies are those of the rotating frame.
AdiabaticFrame rotating_adiabatic_frame(const SweepProfile& p, double t);

enum class ProjectionBasis {
  kRotating,  // eigenbasis of the rotating-frame Hamiltonian (default)
  kLab,       // eigenbasis of the lab Hamiltonian
};

std::string_view to_string(ProjectionBasis b);
ProjectionBasis projection_basis_from_string(std::string_view s);

struct IntegratorSettings {
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  double max_step = 0.5;  // dimensionless
  int grid_points = 4096;
  ProjectionBasis projection = ProjectionBasis::kRotating;
  std::size_t max_steps = 50'000'000;

  void validate() const;
  friend bool operator==(const IntegratorSettings&,
                         const IntegratorSettings&) = default;
};

struct TrajectoryPoint {
  double tau = 0.0;
  Complex S;
  Complex I;
  double P = 0.0;
  SpinorState state;  // lab basis
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;
  double tau0 = 0.0;

  double final_probability() const { return points.back().P; }
  // max |1 - (|S|^2 + |I|^2)| over the trajectory.
  double norm_drift() const;
};

// Dimensionless lab-frame generator. offset shifts the z-field by a static
// amount (units of b); the gate simulator uses it for detuned subspaces.
struct SweepDynamics {
  int n = 1;
  double lambda = 1.0;
  double eta = 0.0;
  double offset = 0.0;

  static SweepDynamics of(const SweepProfile& p, double offset = 0.0) {
    return {p.order(), p.lambda(), p.eta(), offset};
  }

  double twist_angle(double tau) const;
  double rotating_offset(double tau) const;
  // Lab-frame field direction (units of b).
  Vec3 lab_field(double tau) const;
  // Rotating-frame field rotated back to the lab azimuth (units of b).
  Vec3 rotating_field_in_lab(double tau) const;
};

// Uniform grid of `points` values over [-tau0/2, tau0/2], endpoints exact.
std::vector<double> uniform_grid(double tau0, int points);

// Integrates psi through grid[0] -> grid.back() in the lab basis, landing on
// every grid node. observer(k, psi) is called at each node including the
// first. Throws NumericalError on step underflow or exhausted step budget.
void propagate(const SweepDynamics& dyn, SpinorState& psi,
               std::span<const double> grid, const IntegratorSettings& s,
               const std::function<void(std::size_t, const SpinorState&)>&
                   observer = {});

// Same, integrating the rotating-frame Hamiltonian instead. psi is in the
// rotating basis on entry and exit.
void propagate_rotating(const SweepDynamics& dyn, SpinorState& psi,
                        std::span<const double> grid,
                        const IntegratorSettings& s);

Trajectory evolve(const SweepProfile& p, const IntegratorSettings& s = {});

// Final P from an independent rotating-frame integration, transformed back
// to the lab basis and projected exactly like evolve().
double rotating_frame_final_probability(const SweepProfile& p,
                                        const IntegratorSettings& s = {});

double final_probability(double lambda, int n, double eta,
                         const IntegratorSettings& s = {},
                         std::optional<double> tau0 = {});

// exp(-pi / lambda)
double landau_zener(double lambda);

// pi / omega1
double pi_pulse_duration(double omega1);

struct NotGateError {
  double probability = 0.0;
  bool fault_tolerant = false;
};

NotGateError not_gate_error(const SweepProfile& p,
                            const IntegratorSettings& s = {});

}  // namespace trp
