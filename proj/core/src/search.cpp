#include "trp/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <thread>

#include "trp/error.hpp"

namespace trp {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

class Fnv1a {
 public:
  void add(const char* s) {
    for (; *s; ++s) {
      h_ ^= static_cast<unsigned char>(*s);
      h_ *= 1099511628211ull;
    }
  }
  void add(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g;", x);
    add(buf);
  }
  std::uint64_t value() const { return h_; }

 private:
  std::uint64_t h_ = 14695981039346656037ull;
};

SweepRow evaluate_row(const SweepSpec& spec, double eta) {
  SweepRow row;
  row.eta = eta;
  const auto start = Clock::now();
  try {
    const SweepProfile p =
        SweepProfile::from_dimensionless(spec.n, spec.lambda, eta, spec.tau0);
    row.tau0 = p.window();
    const Trajectory traj = evolve(p, spec.settings);
    row.probability = traj.final_probability();
    row.norm_drift = traj.norm_drift();
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  row.wall_ms = elapsed_ms(start);
  return row;
}

}  // namespace

void SweepSpec::validate() const {
  settings.validate();
  if (n < 1) throw ConfigError("sweep n must be >= 1");
  if (!(std::isfinite(lambda) && lambda > 0.0))
    throw ConfigError("sweep lambda must be > 0");
  if (!std::isfinite(eta_lo) || !std::isfinite(eta_hi))
    throw ConfigError("sweep eta range must be finite");
  if (steps < 1) throw ConfigError("sweep steps must be >= 1");
  if (steps == 1 && eta_lo != eta_hi)
    throw ConfigError("a single-step sweep needs eta_lo == eta_hi");
  if (steps >= 2 && !(eta_lo < eta_hi))
    throw ConfigError("sweep needs eta_lo < eta_hi");
}

std::vector<double> SweepSpec::grid() const {
  validate();
  std::vector<double> g(static_cast<std::size_t>(steps));
  if (steps == 1) {
    g[0] = eta_lo;
    return g;
  }
  for (int k = 0; k < steps; ++k)
    g[k] = eta_lo + (eta_hi - eta_lo) * k / (steps - 1);
  g.back() = eta_hi;
  return g;
}

std::uint64_t SweepSpec::settings_hash() const {
  Fnv1a h;
  h.add("n=");
  h.add(static_cast<double>(n));
  h.add(lambda);
  h.add(eta_lo);
  h.add(eta_hi);
  h.add(static_cast<double>(steps));
  h.add(tau0 ? *tau0 : -1.0);
  h.add(settings.rel_tol);
  h.add(settings.abs_tol);
  h.add(settings.max_step);
  h.add(static_cast<double>(settings.grid_points));
  h.add(static_cast<double>(settings.max_steps));
  h.add(std::string(to_string(settings.projection)).c_str());
  return h.value();
}

SweepResult sweep_eta(const SweepSpec& spec, unsigned workers) {
  const std::vector<double> etas = spec.grid();
  const auto start = Clock::now();

  SweepResult result;
  result.settings_hash = spec.settings_hash();
  result.rows.resize(etas.size());

  const unsigned nthreads =
      std::clamp<unsigned>(workers, 1u, static_cast<unsigned>(etas.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < etas.size(); i = next++)
      result.rows[i] = evaluate_row(spec, etas[i]);
  };
  if (nthreads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(work);
  }
  result.total_wall_ms = elapsed_ms(start);
  return result;
}

Minimum find_minimum(const std::function<double(double)>& objective,
                     double lo, double hi, double tol, int coarse_points) {
  if (!(lo < hi)) throw ConfigError("bracket needs lo < hi");
  if (!(tol > 0.0)) throw ConfigError("tolerance must be > 0");
  if (coarse_points < 3) throw ConfigError("coarse scan needs >= 3 points");

  Minimum m;
  std::vector<double> xs(coarse_points), fs(coarse_points);
  for (int k = 0; k < coarse_points; ++k) {
    xs[k] = lo + (hi - lo) * k / (coarse_points - 1);
    fs[k] = objective(xs[k]);
    ++m.evaluations;
  }
  const auto best = static_cast<int>(
      std::min_element(fs.begin(), fs.end()) - fs.begin());
  if (best == 0 || best == coarse_points - 1 ||
      !(fs[best - 1] > fs[best] && fs[best + 1] > fs[best]))
    throw NoInteriorMinimum("no interior minimum of the objective in [" +
                            std::to_string(lo) + ", " + std::to_string(hi) + "]");

  // Golden-section search on [x_{k-1}, x_{k+1}].
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = xs[best - 1];
  double b = xs[best + 1];
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = objective(c);
  double fd = objective(d);
  m.evaluations += 2;
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = objective(d);
    }
    ++m.evaluations;
  }
  m.eta = 0.5 * (a + b);
  m.probability = objective(m.eta);
  ++m.evaluations;
  return m;
}

Minimum find_minimum(int n, double lambda, double lo, double hi, double tol,
                     const IntegratorSettings& s, int coarse_points) {
  return find_minimum(
      [&](double eta) { return final_probability(lambda, n, eta, s); }, lo, hi,
      tol, coarse_points);
}

ConvergenceReport convergence_report(int n, double lambda, double eta,
                                     const std::vector<double>& ladder,
                                     const IntegratorSettings& s) {
  if (ladder.empty()) throw ConfigError("tau0 ladder is empty");
  for (std::size_t i = 1; i < ladder.size(); ++i)
    if (!(ladder[i] > ladder[i - 1]))
      throw ConfigError("tau0 ladder must be strictly increasing");

  const double extent =
      n >= 2 ? resonance_times(n, eta).max_abs() : std::abs(eta);
  ConvergenceReport report;
  for (double tau0 : ladder) {
    ConvergenceRow row;
    row.tau0 = tau0;
    row.probability = final_probability(lambda, n, eta, s, tau0);
    row.covers_resonances = tau0 / 2.0 > extent;
    report.rows.push_back(row);
  }
  if (report.rows.size() >= 2) {
    bool ok = std::all_of(report.rows.begin(), report.rows.end(),
                          [](const ConvergenceRow& r) { return r.covers_resonances; });
    for (std::size_t i = 1; i < report.rows.size(); ++i)
      ok = ok && std::abs(report.rows[i].probability -
                          report.rows[i - 1].probability) <= kConvergenceTolerance;
    report.converged = ok;
  }
  return report;
}

}  // namespace trp
