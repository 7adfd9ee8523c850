#pragma once

// Run configuration (JSON) and result serialization.
//
// Config layout, every block optional unless the command needs it:
//
//   {
//     "command": "simulate",
//     "profile": {"n": 4, "lambda": 5.0, "eta": 4.6e-4, "tau0": 280},
//     "experimental": {"A_hz": 5e4, "delta_hz": 24.39, "omega1_hz": 393,
//                      "B_exp": 0, "omega0_hz": 0},
//     "system": {"omega_c": 500, "omega_t": 100, "J": 10},
//     "sweep": {"n": 4, "lambda": 5.0, "eta_lo": 3.95e-3, "eta_hi": 4.04e-3,
//               "steps": 10},
//     "translate": {"n": 4, "target_eta": 4.6e-4, "lambda": 5.0, "units": "hz"},
//     "integrator": {"rel_tol": 1e-12, "abs_tol": 1e-14, "max_step": 0.5,
//                    "grid_points": 4096, "projection": "rotating",
//                    "max_steps": 50000000},
//     "output": {"dir": ".", "timing": false},
//     "workers": 1
//   }
//
// A profile is given either as {n, b, a, B} or as {n, lambda, eta}; tau0 is
// optional in both forms.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "trp/cnot.hpp"
#include "trp/dynamics.hpp"
#include "trp/profile.hpp"
#include "trp/search.hpp"

namespace trp {

using Json = nlohmann::ordered_json;

struct ProfileConfig {
  int n = 4;
  std::optional<double> b, a, B;
  std::optional<double> lambda, eta;
  std::optional<double> tau0;

  SweepProfile build() const;
  friend bool operator==(const ProfileConfig&, const ProfileConfig&) = default;
};

struct SweepConfig {
  int n = 4;
  double lambda = 5.0;
  double eta_lo = 0.0;
  double eta_hi = 0.0;
  int steps = 2;
  std::optional<double> tau0;

  friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

struct TranslateConfig {
  std::optional<int> n;
  std::optional<double> target_eta;
  std::optional<double> lambda;
  FrequencyUnit units = FrequencyUnit::kHz;

  friend bool operator==(const TranslateConfig&, const TranslateConfig&) = default;
};

struct OutputConfig {
  std::string dir = ".";
  bool timing = false;

  friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

inline constexpr std::string_view kCommands[] = {"resonances", "simulate",
                                                 "sweep", "cnot", "translate"};

struct RunConfig {
  std::string command;
  std::optional<ProfileConfig> profile;
  std::optional<ExperimentalParams> experimental;
  std::optional<TwoQubitSystem> system;
  std::optional<SweepConfig> sweep;
  std::optional<TranslateConfig> translate;
  IntegratorSettings integrator;
  OutputConfig output;
  unsigned workers = 1;

  // Known command and the blocks it needs are present.
  void validate() const;
  SweepSpec sweep_spec() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// All parse failures throw ConfigError.
RunConfig parse_config(const Json& j);
RunConfig parse_config_text(std::string_view text);
Json to_json(const RunConfig& cfg);

// Dotted-path override, e.g. "profile.eta=1.6e-3". The value is parsed as
// JSON when possible and kept as a string otherwise.
void apply_override(Json& j, std::string_view assignment);

// 17 significant digits.
std::string format_double(double x);

std::string trajectory_csv(const Trajectory& traj);
Json trajectory_summary(const SweepProfile& p, const Trajectory& traj);

// timing = false writes 0 in wall_ms so reruns are byte-identical.
std::string sweep_csv(const SweepResult& result, bool timing);
// Wall times are included only with timing; generated_at is always present.
Json sweep_metadata(const SweepSpec& spec, const SweepResult& result,
                    bool timing = false);

Json gate_json(const GateMatrix& g);
GateMatrix gate_from_json(const Json& j);
Json cnot_report(const TwoQubitSystem& sys, const SweepProfile& p,
                 const CnotSimulation& sim);

// Writes to a temporary sibling then renames over path.
void write_atomic(const std::string& path, std::string_view content);

}  // namespace trp
