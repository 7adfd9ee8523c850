#include "trp/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "trp/error.hpp"

namespace trp {
namespace {

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

double unit_scale(FrequencyUnit u) {
  return u == FrequencyUnit::kRadPerSecond ? 2.0 * std::numbers::pi : 1.0;
}

// |eta|^(-1/(n-2)) with exact forms for the cubic and quartic cases.
double outer_root(int n, double abs_eta) {
  switch (n) {
    case 3:
      return 1.0 / abs_eta;
    case 4:
      return 1.0 / std::sqrt(abs_eta);
    default:
      return std::pow(abs_eta, -1.0 / static_cast<double>(n - 2));
  }
}

}  // namespace

SweepProfile::SweepProfile(int n, double b, double a, double B,
                           std::optional<double> tau0)
    : n_(n), b_(b), a_(a), twist_(B), tau0_(tau0) {
  if (n < 1) throw ConfigError("twist order n must be >= 1");
  if (!finite_positive(b)) throw ConfigError("field magnitude b must be > 0");
  if (!finite_positive(a)) throw ConfigError("inversion rate a must be > 0");
  if (!std::isfinite(B)) throw ConfigError("twist strength B must be finite");
  if (!std::isfinite(eta())) throw ConfigError("eta is not finite");
  if (tau0) {
    if (!std::isfinite(*tau0) || *tau0 < 0.0)
      throw ConfigError("tau0 must be finite and non-negative");
    if (*tau0 != 0.0 && *tau0 / 2.0 < kMinHalfWindow)
      throw ConfigError("tau0/2 must be >= 10 so the sweep starts far from resonance");
  }
}

SweepProfile SweepProfile::from_dimensional(int n, double b, double a, double B,
                                            std::optional<double> tau0) {
  return SweepProfile(n, b, a, B, tau0);
}

SweepProfile SweepProfile::from_dimensionless(int n, double lambda, double eta,
                                              std::optional<double> tau0) {
  if (!finite_positive(lambda)) throw ConfigError("lambda must be > 0");
  if (!std::isfinite(eta)) throw ConfigError("eta must be finite");
  if (n < 1) throw ConfigError("twist order n must be >= 1");
  const double b = 1.0;
  const double a = lambda;
  return SweepProfile(n, b, a, twist_from_eta(n, a, b, eta), tau0);
}

double SweepProfile::eta() const {
  return twist_ / a_ * std::pow(b_ / a_, n_ - 2);
}

double SweepProfile::window() const {
  if (tau0_) return *tau0_;
  return default_window(n_, eta());
}

SweepProfile SweepProfile::with_window(std::optional<double> tau0) const {
  return SweepProfile(n_, b_, a_, twist_, tau0);
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::kNone: return "single";
    case Regime::kPositiveOdd: return "positive-odd";
    case Regime::kPositiveEven: return "positive-even";
    case Regime::kNegativeOdd: return "negative-odd";
    case Regime::kNegativeEven: return "negative-even";
    case Regime::kDegenerate: return "degenerate";
  }
  return "unknown";
}

double ResonanceSet::max_abs() const {
  double m = 0.0;
  for (double t : times) m = std::max(m, std::abs(t));
  return m;
}

double phase(const SweepProfile& p, double t) {
  const int n = p.order();
  return 2.0 / n * p.twist() * ipow(t, n);
}

double phase_rate(const SweepProfile& p, double t) {
  return 2.0 * p.twist() * ipow(t, p.order() - 1);
}

Vec3 lab_frame_field(const SweepProfile& p, double t) {
  const double phi = phase(p, t);
  return {p.field() * std::cos(phi), -p.field() * std::sin(phi),
          p.rate() * t};
}

RotatingField rotating_frame_field(const SweepProfile& p, double t) {
  return {p.field(), p.rate() * t - 0.5 * phase_rate(p, t)};
}

double reduced_offset(int n, double eta, double tau) {
  return tau - eta * ipow(tau, n - 1);
}

double energy_gap(const SweepProfile& p, double t) {
  const RotatingField f = rotating_frame_field(p, t);
  return 2.0 * std::hypot(f.x, f.z);
}

ResonanceSet resonance_times(int n, double eta) {
  if (n < 2) throw ConfigError("resonance_times requires n >= 2");
  if (!std::isfinite(eta)) throw ConfigError("eta must be finite");
  ResonanceSet set;
  set.times.push_back(0.0);
  if (n == 2) {
    set.regime = eta == 1.0 ? Regime::kDegenerate : Regime::kNone;
    return set;
  }
  if (eta == 0.0) return set;

  const double r = outer_root(n, std::abs(eta));
  const bool odd = n % 2 == 1;
  if (eta > 0.0) {
    set.times.push_back(r);
    if (!odd) set.times.push_back(-r);
    set.regime = odd ? Regime::kPositiveOdd : Regime::kPositiveEven;
  } else {
    if (odd) set.times.push_back(-r);
    set.regime = odd ? Regime::kNegativeOdd : Regime::kNegativeEven;
  }
  std::sort(set.times.begin(), set.times.end());
  return set;
}

ResonanceSet resonance_times(const SweepProfile& p) {
  return resonance_times(p.order(), p.eta());
}

double default_window(int n, double eta) {
  double extent = 0.0;
  if (n == 1) {
    extent = std::abs(eta);
  } else {
    const ResonanceSet set = resonance_times(n, eta);
    if (!set.degenerate()) extent = set.max_abs();
  }
  return std::max(kMinDefaultWindow, kWindowResonanceFactor * extent);
}

DimensionlessParams eta_from_theory(int n, double a, double b, double B) {
  if (!finite_positive(a) || !finite_positive(b))
    throw ConfigError("a and b must be > 0");
  return {a / (b * b), B / a * std::pow(b / a, n - 2)};
}

double twist_from_eta(int n, double a, double b, double eta) {
  if (!finite_positive(a) || !finite_positive(b))
    throw ConfigError("a and b must be > 0");
  return eta * a * std::pow(a / b, n - 2);
}

void ExperimentalParams::validate() const {
  if (!finite_positive(A_hz)) throw ConfigError("A_hz must be > 0");
  if (!finite_positive(delta_hz)) throw ConfigError("delta_hz must be > 0");
  if (!finite_positive(omega1_hz)) throw ConfigError("omega1_hz must be > 0");
  if (!std::isfinite(B_exp)) throw ConfigError("B_exp must be finite");
  if (!std::isfinite(omega0_hz)) throw ConfigError("omega0_hz must be finite");
}

std::string_view to_string(FrequencyUnit u) {
  return u == FrequencyUnit::kHz ? "hz" : "rad_s";
}

FrequencyUnit frequency_unit_from_string(std::string_view s) {
  if (s == "hz") return FrequencyUnit::kHz;
  if (s == "rad_s") return FrequencyUnit::kRadPerSecond;
  throw ConfigError("unknown frequency unit '" + std::string(s) +
                    "' (expected hz or rad_s)");
}

namespace {

// Factor such that eta_n = B_exp * factor.
double experiment_factor(int n, const ExperimentalParams& exp,
                         FrequencyUnit unit) {
  exp.validate();
  const double s = unit_scale(unit);
  const double A = exp.A_hz * s;
  const double delta = exp.delta_hz * s;
  const double w1 = exp.omega1_hz * s;
  switch (n) {
    case 3:
      return 3.0 * delta * w1 / (4.0 * A * A);
    case 4:
      return delta * w1 * w1 / (2.0 * A * A * A);
    default:
      throw ConfigError("experimental translation is only defined for n = 3 or 4");
  }
}

}  // namespace

double eta_from_experiment(int n, const ExperimentalParams& exp,
                           FrequencyUnit unit) {
  return exp.B_exp * experiment_factor(n, exp, unit);
}

double twist_from_experiment_eta(int n, const ExperimentalParams& exp,
                                 double eta, FrequencyUnit unit) {
  return eta / experiment_factor(n, exp, unit);
}

FrequencySchedule frequency_schedules(const SweepProfile& p,
                                      const ExperimentalParams& exp, double t) {
  const double det = exp.omega0_hz + 2.0 * p.rate() * t;
  return {det, det - phase_rate(p, t)};
}

double inversion_time_quartic(double A, double omega1, double lambda,
                              FrequencyUnit unit) {
  if (!finite_positive(A) || !finite_positive(omega1) ||
      !finite_positive(lambda))
    throw ConfigError("A, omega1 and lambda must be > 0");
  const double s = unit_scale(unit);
  return 4.0 * (A * s) / ((omega1 * s) * (omega1 * s) * lambda);
}

}  // namespace trp
