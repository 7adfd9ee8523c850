#pragma once

// Parameter sweeps over the dimensionless twist strength.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "trp/dynamics.hpp"

namespace trp {

struct SweepSpec {
  int n = 4;
  double lambda = 5.0;
  double eta_lo = 0.0;
  double eta_hi = 0.0;
  int steps = 2;
  IntegratorSettings settings;
  // Fixed window for every row; nullopt resolves the default per eta.
  std::optional<double> tau0;

  // steps >= 2 needs eta_lo < eta_hi; steps == 1 needs eta_lo == eta_hi.
  void validate() const;
  std::vector<double> grid() const;
  // FNV-1a over a canonical rendering of every field.
  std::uint64_t settings_hash() const;

  friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

struct SweepRow {
  double eta = 0.0;
  double probability = 0.0;
  double norm_drift = 0.0;
  double tau0 = 0.0;
  double wall_ms = 0.0;
  std::string error;  // empty on success

  bool ok() const { return error.empty(); }
};

struct SweepResult {
  std::vector<SweepRow> rows;  // sorted by eta
  std::uint64_t settings_hash = 0;
  double total_wall_ms = 0.0;
};

// Rows are independent; workers > 1 evaluates them concurrently but the
// result is identical to the serial run.
SweepResult sweep_eta(const SweepSpec& spec, unsigned workers = 1);

struct Minimum {
  double eta = 0.0;
  double probability = 0.0;
  int evaluations = 0;
};

// Coarse scan of `coarse_points` over [lo, hi]; the smallest sample must be
// interior with the sampled slope changing sign there, otherwise
// NoInteriorMinimum. Golden-section refinement then runs on the two
// neighbouring cells until the bracket is narrower than tol.
Minimum find_minimum(const std::function<double(double)>& objective,
                     double lo, double hi, double tol, int coarse_points = 11);

Minimum find_minimum(int n, double lambda, double lo, double hi, double tol,
                     const IntegratorSettings& s = {}, int coarse_points = 11);

inline constexpr double kConvergenceTolerance = 1e-3;

struct ConvergenceRow {
  double tau0 = 0.0;
  double probability = 0.0;
  bool covers_resonances = true;  // tau0/2 exceeds every resonance time
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  // nullopt for a single-entry ladder.
  std::optional<bool> converged;
};

// ladder must be strictly increasing.
ConvergenceReport convergence_report(int n, double lambda, double eta,
                                     const std::vector<double>& ladder,
                                     const IntegratorSettings& s = {});

}  // namespace trp
