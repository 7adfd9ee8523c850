#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "trp/error.hpp"

namespace trp::cli {
namespace {

namespace fs = std::filesystem;

std::string out_path(const RunConfig& cfg, const char* name) {
  return (fs::path(cfg.output.dir) / name).string();
}

std::string fixed2(double x) {
  if (x == 0.0) return "0";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%+.2f", x);
  return buf;
}

std::string sci(double x, int digits = 4) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

int translation_order(const RunConfig& cfg) {
  if (cfg.translate && cfg.translate->n) return *cfg.translate->n;
  return cfg.profile->n;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string describe_resonances(const ResonanceSet& set) {
  if (set.degenerate())
    return "degenerate: rotating-frame z-field vanishes identically";
  std::string s = std::to_string(set.size()) +
                  (set.size() == 1 ? " resonance: " : " resonances: ");
  for (std::size_t i = 0; i < set.times.size(); ++i) {
    if (i) s += ", ";
    s += fixed2(set.times[i]);
  }
  return s;
}

void cmd_resonances(const RunConfig& cfg, std::ostream& out) {
  const SweepProfile p = cfg.profile->build();
  const ResonanceSet set = resonance_times(p);
  out << describe_resonances(set) << '\n'
      << "regime: " << to_string(set.regime) << '\n';

  Json j{{"n", p.order()},
         {"eta", p.eta()},
         {"regime", std::string(to_string(set.regime))},
         {"times", set.times}};
  write_atomic(out_path(cfg, "resonances.json"), j.dump(2) + "\n");
}

void cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  const SweepProfile p = cfg.profile->build();
  const Trajectory traj = evolve(p, cfg.integrator);
  const Json summary = trajectory_summary(p, traj);
  write_atomic(out_path(cfg, "trajectory.csv"), trajectory_csv(traj));
  write_atomic(out_path(cfg, "summary.json"), summary.dump(2) + "\n");
  out << "final_P = " << format_double(traj.final_probability()) << '\n'
      << "norm_drift = " << sci(traj.norm_drift(), 3) << '\n'
      << "fault_tolerant = "
      << (summary["fault_tolerant"].get<bool>() ? "true" : "false") << '\n';
}

void cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  const SweepSpec spec = cfg.sweep_spec();
  const SweepResult result = sweep_eta(spec, cfg.workers);
  write_atomic(out_path(cfg, "sweep.csv"), sweep_csv(result, cfg.output.timing));
  write_atomic(out_path(cfg, "sweep.meta.json"),
               sweep_metadata(spec, result, cfg.output.timing).dump(2) + "\n");
  out << "eta            P\n";
  for (const auto& row : result.rows) {
    char line[96];
    if (row.ok())
      std::snprintf(line, sizeof line, "%-14.6g %.4g\n", row.eta, row.probability);
    else
      std::snprintf(line, sizeof line, "%-14.6g failed\n", row.eta);
    out << line;
  }
}

void cmd_cnot(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const TwoQubitSystem& sys = *cfg.system;
  sys.validate();
  const SweepProfile p = cfg.profile->build();
  const CnotSimulation sim = simulate_cnot(sys, p, cfg.integrator);
  const Json report = cnot_report(sys, p, sim);
  write_atomic(out_path(cfg, "gate.json"), report.dump(2) + "\n");

  if (!sim.selective)
    err << "warning: pi J / b = " << sci(std::abs(sim.detuned_offset))
        << " does not exceed the sweep half-bandwidth " << sci(sim.half_bandwidth)
        << "; the control=0 block is swept through resonance\n";
  out << "fidelity = " << format_double(report["fidelity"].get<double>()) << '\n'
      << "unitarity_error = " << sci(sim.gate.unitarity_error(), 3) << '\n'
      << "transition_probabilities =";
  for (const auto& v : report["transition_probabilities"])
    out << ' ' << sci(v.get<double>(), 6);
  out << '\n';
}

void cmd_translate(const RunConfig& cfg, std::ostream& out) {
  const int n = translation_order(cfg);
  ExperimentalParams exp = *cfg.experimental;
  const FrequencyUnit units =
      cfg.translate ? cfg.translate->units : FrequencyUnit::kHz;

  double eta = 0.0;
  if (cfg.translate && cfg.translate->target_eta) {
    eta = *cfg.translate->target_eta;
    exp.B_exp = twist_from_experiment_eta(n, exp, eta, units);
  } else {
    eta = eta_from_experiment(n, exp, units);
  }

  Json j{{"n", n},
         {"units", std::string(to_string(units))},
         {"experimental",
          {{"A_hz", exp.A_hz},
           {"delta_hz", exp.delta_hz},
           {"omega1_hz", exp.omega1_hz},
           {"B_exp", exp.B_exp},
           {"omega0_hz", exp.omega0_hz}}},
         {"eta", eta}};
  out << "n = " << n << "  (units: " << to_string(units) << ")\n"
      << "experimental: A = " << format_double(exp.A_hz)
      << "  delta = " << format_double(exp.delta_hz)
      << "  omega1 = " << format_double(exp.omega1_hz)
      << "  B_exp = " << format_double(exp.B_exp) << '\n'
      << "eta_" << n << " = " << format_double(eta) << '\n';

  std::optional<double> lambda =
      cfg.translate && cfg.translate->lambda ? cfg.translate->lambda : std::nullopt;
  if (cfg.profile) {
    // Theory side at the same eta, keeping the profile's field and rate.
    const SweepProfile given = cfg.profile->build();
    const SweepProfile p = SweepProfile::from_dimensional(
        n, given.field(), given.rate(),
        twist_from_eta(n, given.rate(), given.field(), eta));
    if (!lambda) lambda = p.lambda();
    j["theory"] = {{"a", p.rate()}, {"b", p.field()}, {"B", p.twist()},
                   {"lambda", p.lambda()}, {"eta", p.eta()}};
    out << "theory: a = " << format_double(p.rate())
        << "  b = " << format_double(p.field())
        << "  B = " << format_double(p.twist())
        << "  lambda = " << format_double(p.lambda()) << '\n';
  }
  if (n == 4 && lambda) {
    const double t4 = inversion_time_quartic(exp.A_hz, exp.omega1_hz, *lambda, units);
    j["lambda"] = *lambda;
    j["T4_s"] = t4;
    out << "T4 = " << format_double(t4) << " s (" << sci(t4 * 1e3, 6) << " ms)\n";
  }
  write_atomic(out_path(cfg, "translate.json"), j.dump(2) + "\n");
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Twisted rapid passage simulator"};
  std::string command;
  std::string config_path;
  std::string out_dir;
  unsigned workers = 0;
  std::vector<std::string> sets;
  bool timing = false;

  app.add_option("command", command, "resonances | simulate | sweep | cnot | translate");
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--out", out_dir, "Output directory (overrides output.dir)");
  app.add_option("--workers", workers, "Parallel sweep workers")->check(CLI::PositiveNumber);
  app.add_option("--set", sets, "Dotted-path override KEY=VALUE (repeatable)");
  app.add_flag("--timing", timing, "Record per-row wall time in sweep.csv");

  std::vector<const char*> argv{"trp"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    Json j = config_path.empty() ? Json::object()
                                 : [&] {
                                     try {
                                       return Json::parse(read_file(config_path));
                                     } catch (const nlohmann::json::parse_error& e) {
                                       throw ConfigError(std::string("malformed config: ") + e.what());
                                     }
                                   }();
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& s : sets) apply_override(j, s);
    RunConfig cfg = parse_config(j);
    if (!command.empty()) cfg.command = command;
    if (!out_dir.empty()) cfg.output.dir = out_dir;
    if (workers > 0) cfg.workers = workers;
    if (timing) cfg.output.timing = true;
    cfg.validate();

    if (cfg.command == "resonances") cmd_resonances(cfg, out);
    else if (cfg.command == "simulate") cmd_simulate(cfg, out);
    else if (cfg.command == "sweep") cmd_sweep(cfg, out);
    else if (cfg.command == "cnot") cmd_cnot(cfg, out, err);
    else cmd_translate(cfg, out);
    return kOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace trp::cli
