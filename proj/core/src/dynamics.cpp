#include "trp/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "trp/error.hpp"

namespace trp {
namespace {

namespace odeint = boost::numeric::odeint;

using State = std::array<Complex, 2>;

constexpr Complex kI{0.0, 1.0};

// d psi/dtau = (i/lambda) [[z, e^{i phi}], [e^{-i phi}, -z]] psi
struct LabGenerator {
  const SweepDynamics& dyn;

  void operator()(const State& x, State& dxdt, double tau) const {
    const double g = 1.0 / dyn.lambda;
    const Complex twist = std::polar(1.0, dyn.twist_angle(tau));
    const double z = tau + dyn.offset;
    dxdt[0] = kI * g * (z * x[0] + twist * x[1]);
    dxdt[1] = kI * g * (std::conj(twist) * x[0] - z * x[1]);
  }
};

// d psi/dtau = (i/lambda) [[zbar, 1], [1, -zbar]] psi
struct RotatingGenerator {
  const SweepDynamics& dyn;

  void operator()(const State& x, State& dxdt, double tau) const {
    const double g = 1.0 / dyn.lambda;
    const double z = dyn.rotating_offset(tau);
    dxdt[0] = kI * g * (z * x[0] + x[1]);
    dxdt[1] = kI * g * (x[0] - z * x[1]);
  }
};

template <typename System>
void drive(const System& system, SpinorState& psi,
           std::span<const double> grid, const IntegratorSettings& s,
           const std::function<void(std::size_t, const SpinorState&)>&
               observer) {
  if (grid.empty()) return;
  auto stepper = odeint::make_controlled(
      s.abs_tol, s.rel_tol, odeint::runge_kutta_fehlberg78<State>());

  State x{psi.up, psi.down};
  double tau = grid.front();
  double dt = std::min(s.max_step, 1e-3);
  std::size_t steps = 0;
  if (observer) observer(0, psi);

  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double target = grid[k];
    while (tau < target) {
      double step = std::min(dt, s.max_step);
      const bool clamped = tau + step >= target;
      if (clamped) step = target - tau;

      double tau_try = tau;
      double dt_try = step;
      const auto res = stepper.try_step(system, x, tau_try, dt_try);
      if (++steps > s.max_steps)
        throw NumericalError("integrator step budget exhausted at tau = " +
                                 std::to_string(tau),
                             tau);
      if (res == odeint::success) {
        tau = clamped ? target : tau_try;
        dt = clamped ? std::max(dt, dt_try) : dt_try;
      } else {
        dt = dt_try;
        if (dt < 1e-13 * std::max(1.0, std::abs(tau)))
          throw NumericalError("step size underflow at tau = " +
                                   std::to_string(tau),
                               tau);
      }
    }
    psi = {x[0], x[1]};
    if (observer) observer(k, psi);
  }
}

struct Projector {
  const SweepDynamics& dyn;
  ProjectionBasis basis;

  AdiabaticFrame frame(double tau) const {
    return eigenframe(basis == ProjectionBasis::kLab
                          ? dyn.lab_field(tau)
                          : dyn.rotating_field_in_lab(tau));
  }
};

void validate_window(const SweepProfile& p) {
  if (p.empty()) throw ConfigError("cannot evolve a zero-duration sweep");
}

}  // namespace

AdiabaticFrame eigenframe(const Vec3& f) {
  const double rho2 = f.x * f.x + f.y * f.y;
  const double mag = std::sqrt(rho2 + f.z * f.z);
  // cos^2(theta/2) = (|F| + Fz) / 2|F| without cancellation.
  const double up = f.z >= 0.0 ? mag + f.z : rho2 / (mag - f.z);
  const double dn = f.z <= 0.0 ? mag - f.z : rho2 / (mag + f.z);
  const double c = std::sqrt(up / (2.0 * mag));
  const double s = std::sqrt(dn / (2.0 * mag));
  const double rho = std::sqrt(rho2);
  const Complex azimuth = rho > 0.0 ? Complex(f.x / rho, f.y / rho)
                                    : Complex(1.0, 0.0);
  AdiabaticFrame fr;
  fr.e_minus = -mag;
  fr.e_plus = mag;
  fr.minus = {Complex(c, 0.0), azimuth * s};
  fr.plus = {Complex(s, 0.0), -azimuth * c};
  return fr;
}

AdiabaticFrame adiabatic_frame(const SweepProfile& p, double t) {
  return eigenframe(lab_frame_field(p, t));
}

AdiabaticFrame rotating_adiabatic_frame(const SweepProfile& p, double t) {
  const Vec3 lab = lab_frame_field(p, t);
  return eigenframe({lab.x, lab.y, rotating_frame_field(p, t).z});
}

std::string_view to_string(ProjectionBasis b) {
  return b == ProjectionBasis::kLab ? "lab" : "rotating";
}

ProjectionBasis projection_basis_from_string(std::string_view s) {
  if (s == "rotating") return ProjectionBasis::kRotating;
  if (s == "lab") return ProjectionBasis::kLab;
  throw ConfigError("unknown projection basis '" + std::string(s) +
                    "' (expected rotating or lab)");
}

void IntegratorSettings::validate() const {
  auto tol_ok = [](double t) { return std::isfinite(t) && t > 0.0 && t <= 1e-6; };
  if (!tol_ok(rel_tol)) throw ConfigError("rel_tol must lie in (0, 1e-6]");
  if (!tol_ok(abs_tol)) throw ConfigError("abs_tol must lie in (0, 1e-6]");
  if (!(std::isfinite(max_step) && max_step > 0.0))
    throw ConfigError("max_step must be > 0");
  if (grid_points < 2) throw ConfigError("grid_points must be >= 2");
  if (max_steps == 0) throw ConfigError("max_steps must be > 0");
}

double Trajectory::norm_drift() const {
  double drift = 0.0;
  for (const auto& pt : points)
    drift = std::max(drift, std::abs(1.0 - (std::norm(pt.S) + std::norm(pt.I))));
  return drift;
}

double SweepDynamics::twist_angle(double tau) const {
  return 2.0 / n * (eta / lambda) * ipow(tau, n);
}

double SweepDynamics::rotating_offset(double tau) const {
  return reduced_offset(n, eta, tau) + offset;
}

Vec3 SweepDynamics::lab_field(double tau) const {
  const double phi = twist_angle(tau);
  return {std::cos(phi), -std::sin(phi), tau + offset};
}

Vec3 SweepDynamics::rotating_field_in_lab(double tau) const {
  const double phi = twist_angle(tau);
  return {std::cos(phi), -std::sin(phi), rotating_offset(tau)};
}

std::vector<double> uniform_grid(double tau0, int points) {
  if (points < 2) throw ConfigError("grid needs at least 2 points");
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double lo = -tau0 / 2.0;
  const double h = tau0 / (points - 1);
  for (int k = 0; k < points; ++k) grid[k] = lo + k * h;
  grid.back() = tau0 / 2.0;
  return grid;
}

void propagate(const SweepDynamics& dyn, SpinorState& psi,
               std::span<const double> grid, const IntegratorSettings& s,
               const std::function<void(std::size_t, const SpinorState&)>&
                   observer) {
  drive(LabGenerator{dyn}, psi, grid, s, observer);
}

void propagate_rotating(const SweepDynamics& dyn, SpinorState& psi,
                        std::span<const double> grid,
                        const IntegratorSettings& s) {
  drive(RotatingGenerator{dyn}, psi, grid, s, {});
}

Trajectory evolve(const SweepProfile& p, const IntegratorSettings& s) {
  validate_window(p);
  s.validate();
  const SweepDynamics dyn = SweepDynamics::of(p);
  const Projector proj{dyn, s.projection};

  Trajectory traj;
  traj.tau0 = p.window();
  const std::vector<double> grid = uniform_grid(traj.tau0, s.grid_points);
  traj.points.resize(grid.size());

  AdiabaticFrame prev = proj.frame(grid.front());
  SpinorState psi = prev.minus;
  propagate(dyn, psi, grid, s, [&](std::size_t k, const SpinorState& state) {
    AdiabaticFrame fr = proj.frame(grid[k]);
    // Keep the gauge continuous along the sweep.
    if (k > 0) {
      if (inner(prev.minus, fr.minus).real() < 0.0)
        fr.minus = {-fr.minus.up, -fr.minus.down};
      if (inner(prev.plus, fr.plus).real() < 0.0)
        fr.plus = {-fr.plus.up, -fr.plus.down};
    }
    TrajectoryPoint& pt = traj.points[k];
    pt.tau = grid[k];
    pt.S = inner(fr.minus, state);
    pt.I = inner(fr.plus, state);
    pt.P = std::norm(pt.I);
    pt.state = state;
    prev = fr;
  });
  return traj;
}

double rotating_frame_final_probability(const SweepProfile& p,
                                        const IntegratorSettings& s) {
  validate_window(p);
  s.validate();
  const SweepDynamics dyn = SweepDynamics::of(p);
  const std::vector<double> grid = uniform_grid(p.window(), s.grid_points);

  // Start in the lower eigenstate of the rotating-frame Hamiltonian.
  SpinorState psi = eigenframe({1.0, 0.0, dyn.rotating_offset(grid.front())}).minus;
  propagate_rotating(dyn, psi, grid, s);

  // Back to the lab basis: psi_lab = diag(e^{i phi/2}, e^{-i phi/2}) psi_rot.
  const double half = 0.5 * dyn.twist_angle(grid.back());
  const SpinorState lab{std::polar(1.0, half) * psi.up,
                        std::polar(1.0, -half) * psi.down};
  const AdiabaticFrame fr = Projector{dyn, s.projection}.frame(grid.back());
  return std::norm(inner(fr.plus, lab));
}

double final_probability(double lambda, int n, double eta,
                         const IntegratorSettings& s,
                         std::optional<double> tau0) {
  return evolve(SweepProfile::from_dimensionless(n, lambda, eta, tau0), s)
      .final_probability();
}

double landau_zener(double lambda) {
  if (!(lambda > 0.0)) throw ConfigError("lambda must be > 0");
  return std::exp(-std::numbers::pi / lambda);
}

double pi_pulse_duration(double omega1) {
  if (!(omega1 > 0.0)) throw ConfigError("omega1 must be > 0");
  return std::numbers::pi / omega1;
}

NotGateError not_gate_error(const SweepProfile& p,
                            const IntegratorSettings& s) {
  const double prob = evolve(p, s).final_probability();
  return {prob, prob < kFaultToleranceThreshold};
}

}  // namespace trp
