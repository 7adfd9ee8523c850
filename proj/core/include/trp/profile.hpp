#pragma once

// Twisted rapid passage sweep profiles.
//
// Units: hbar = 1 throughout, so energies and fields are angular frequencies.
// A profile is the field
//
//   F(t) = b cos(phi) x - b sin(phi) y + a t z,   phi(t) = (2/n) B t^n,
//
// whose rotating-frame z-component is a t - phi'(t)/2. In dimensionless time
// tau = (a/b) t that offset is b (tau - eta tau^(n-1)), with
// lambda = a/b^2 and eta = (B/a) (b/a)^(n-2).

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace trp {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

// Field seen in the frame co-rotating with the transverse component.
struct RotatingField {
  double x = 0.0;
  double z = 0.0;
};

struct DimensionlessParams {
  double lambda = 0.0;
  double eta = 0.0;
};

inline constexpr double kMinHalfWindow = 10.0;
inline constexpr double kMinDefaultWindow = 120.0;
inline constexpr double kWindowResonanceFactor = 6.0;

// x^n for small non-negative integer n, exact in sign for negative x.
constexpr double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

class SweepProfile {
 public:
  // tau0 = nullopt selects the default window (see default_window).
  // tau0 = 0 denotes an empty sweep; only the gate simulator accepts it.
  static SweepProfile from_dimensional(int n, double b, double a, double B,
                                       std::optional<double> tau0 = {});
  // Uses b = 1, a = lambda; B follows from eta.
  static SweepProfile from_dimensionless(int n, double lambda, double eta,
                                         std::optional<double> tau0 = {});

  int order() const { return n_; }
  double field() const { return b_; }
  double rate() const { return a_; }
  double twist() const { return twist_; }
  std::optional<double> window_override() const { return tau0_; }

  double lambda() const { return a_ / (b_ * b_); }
  double eta() const;
  DimensionlessParams dimensionless() const { return {lambda(), eta()}; }

  // Resolved dimensionless window tau0.
  double window() const;
  bool empty() const { return tau0_ && *tau0_ == 0.0; }

  // Dimensionless <-> dimensional time.
  double to_tau(double t) const { return t * a_ / b_; }
  double to_time(double tau) const { return tau * b_ / a_; }

  SweepProfile with_window(std::optional<double> tau0) const;

  friend bool operator==(const SweepProfile&, const SweepProfile&) = default;

 private:
  SweepProfile(int n, double b, double a, double B, std::optional<double> tau0);

  int n_;
  double b_;
  double a_;
  double twist_;
  std::optional<double> tau0_;
};

enum class Regime {
  kNone,          // n = 2 or eta = 0: only tau = 0
  kPositiveOdd,   // sgn B = +1, n odd: 0 and +|eta|^(-1/(n-2))
  kPositiveEven,  // sgn B = +1, n even: 0 and +-|eta|^(-1/(n-2))
  kNegativeOdd,   // sgn B = -1, n odd: 0 and -|eta|^(-1/(n-2))
  kNegativeEven,  // sgn B = -1, n even: 0 only
  kDegenerate,    // n = 2, eta = 1: z-field vanishes identically
};

std::string_view to_string(Regime r);

struct ResonanceSet {
  std::vector<double> times;  // sorted ascending, dimensionless
  Regime regime = Regime::kNone;

  bool degenerate() const { return regime == Regime::kDegenerate; }
  std::size_t size() const { return times.size(); }
  double max_abs() const;
};

// Azimuthal twist angle (2/n) B t^n and its time derivative 2 B t^(n-1).
double phase(const SweepProfile& p, double t);
double phase_rate(const SweepProfile& p, double t);

Vec3 lab_frame_field(const SweepProfile& p, double t);
RotatingField rotating_frame_field(const SweepProfile& p, double t);

// Dimensionless rotating-frame z-offset tau - eta tau^(n-1).
double reduced_offset(int n, double eta, double tau);

// Instantaneous gap 2 |F_rot(t)|; equals 2b at resonances.
double energy_gap(const SweepProfile& p, double t);

// Real roots of tau - eta tau^(n-1) = 0 in closed form. Throws ConfigError
// for n < 2.
ResonanceSet resonance_times(int n, double eta);
ResonanceSet resonance_times(const SweepProfile& p);

// max(120, 6 max|tau*|).
double default_window(int n, double eta);

DimensionlessParams eta_from_theory(int n, double a, double b, double B);
// Inverse of eta_from_theory for the twist strength.
double twist_from_eta(int n, double a, double b, double eta);

// Experimental NMR parameterization. Frequencies are given in Hz.
struct ExperimentalParams {
  double A_hz = 0.0;
  double delta_hz = 0.0;
  double omega1_hz = 0.0;
  double B_exp = 0.0;
  double omega0_hz = 0.0;

  void validate() const;
  friend bool operator==(const ExperimentalParams&,
                         const ExperimentalParams&) = default;
};

// How the Hz-valued experimental frequencies enter the experimental eta formulas.
enum class FrequencyUnit { kHz, kRadPerSecond };

std::string_view to_string(FrequencyUnit u);
FrequencyUnit frequency_unit_from_string(std::string_view s);

// eta3 = 3 B delta w1 / (4 A^2), eta4 = B delta w1^2 / (2 A^3). Only n = 3
// and n = 4 have a known translation; anything else throws ConfigError.
double eta_from_experiment(int n, const ExperimentalParams& exp,
                           FrequencyUnit unit = FrequencyUnit::kHz);
double twist_from_experiment_eta(int n, const ExperimentalParams& exp,
                                 double eta,
                                 FrequencyUnit unit = FrequencyUnit::kHz);

struct FrequencySchedule {
  double omega_det = 0.0;
  double omega_rf = 0.0;
};

// omega_det = omega0 + 2 a t, omega_rf = omega_det - phi'(t). omega0 is taken
// in the same units as the profile.
FrequencySchedule frequency_schedules(const SweepProfile& p,
                                      const ExperimentalParams& exp, double t);

// T4 = 4 A / (w1^2 lambda).
double inversion_time_quartic(double A, double omega1, double lambda,
                              FrequencyUnit unit = FrequencyUnit::kHz);

}  // namespace trp
