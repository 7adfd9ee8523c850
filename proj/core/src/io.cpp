#include "trp/io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "trp/error.hpp"

namespace trp {
namespace {

namespace fs = std::filesystem;

void check_keys(const Json& obj, std::string_view block,
                std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object())
    throw ConfigError("block '" + std::string(block) + "' must be an object");
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ConfigError("unknown key '" + key + "' in block '" +
                        std::string(block) + "'");
  }
}

std::optional<double> opt_num(const Json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_number())
    throw ConfigError(std::string("key '") + key + "' must be a number");
  return it->get<double>();
}

double num(const Json& obj, const char* key, std::string_view block) {
  const auto v = opt_num(obj, key);
  if (!v)
    throw ConfigError(std::string("missing key '") + key + "' in block '" +
                      std::string(block) + "'");
  return *v;
}

std::optional<long long> opt_int(const Json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (it->is_number_integer()) return it->get<long long>();
  if (it->is_number_float()) {
    const double d = it->get<double>();
    if (d == std::floor(d) && std::abs(d) < 9e15) return static_cast<long long>(d);
  }
  throw ConfigError(std::string("key '") + key + "' must be an integer");
}

int int_in(const Json& obj, const char* key, std::string_view block) {
  const auto v = opt_int(obj, key);
  if (!v)
    throw ConfigError(std::string("missing key '") + key + "' in block '" +
                      std::string(block) + "'");
  return static_cast<int>(*v);
}

std::optional<std::string> opt_str(const Json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string())
    throw ConfigError(std::string("key '") + key + "' must be a string");
  return it->get<std::string>();
}

void put(Json& obj, const char* key, const std::optional<double>& v) {
  if (v) obj[key] = *v;
}

ProfileConfig parse_profile(const Json& j) {
  check_keys(j, "profile", {"n", "b", "a", "B", "lambda", "eta", "tau0"});
  ProfileConfig p;
  p.n = int_in(j, "n", "profile");
  p.b = opt_num(j, "b");
  p.a = opt_num(j, "a");
  p.B = opt_num(j, "B");
  p.lambda = opt_num(j, "lambda");
  p.eta = opt_num(j, "eta");
  p.tau0 = opt_num(j, "tau0");
  return p;
}

ExperimentalParams parse_experimental(const Json& j) {
  check_keys(j, "experimental",
             {"A_hz", "delta_hz", "omega1_hz", "B_exp", "omega0_hz"});
  ExperimentalParams e;
  e.A_hz = num(j, "A_hz", "experimental");
  e.delta_hz = num(j, "delta_hz", "experimental");
  e.omega1_hz = num(j, "omega1_hz", "experimental");
  e.B_exp = opt_num(j, "B_exp").value_or(0.0);
  e.omega0_hz = opt_num(j, "omega0_hz").value_or(0.0);
  return e;
}

TwoQubitSystem parse_system(const Json& j) {
  check_keys(j, "system", {"omega_c", "omega_t", "J"});
  return {num(j, "omega_c", "system"), num(j, "omega_t", "system"),
          num(j, "J", "system")};
}

SweepConfig parse_sweep(const Json& j) {
  check_keys(j, "sweep", {"n", "lambda", "eta_lo", "eta_hi", "steps", "tau0"});
  SweepConfig s;
  s.n = int_in(j, "n", "sweep");
  s.lambda = num(j, "lambda", "sweep");
  s.eta_lo = num(j, "eta_lo", "sweep");
  s.eta_hi = num(j, "eta_hi", "sweep");
  s.steps = int_in(j, "steps", "sweep");
  s.tau0 = opt_num(j, "tau0");
  return s;
}

TranslateConfig parse_translate(const Json& j) {
  check_keys(j, "translate", {"n", "target_eta", "lambda", "units"});
  TranslateConfig t;
  if (const auto n = opt_int(j, "n")) t.n = static_cast<int>(*n);
  t.target_eta = opt_num(j, "target_eta");
  t.lambda = opt_num(j, "lambda");
  if (const auto u = opt_str(j, "units")) t.units = frequency_unit_from_string(*u);
  return t;
}

IntegratorSettings parse_integrator(const Json& j) {
  check_keys(j, "integrator", {"rel_tol", "abs_tol", "max_step", "grid_points",
                               "projection", "max_steps"});
  IntegratorSettings s;
  s.rel_tol = opt_num(j, "rel_tol").value_or(s.rel_tol);
  s.abs_tol = opt_num(j, "abs_tol").value_or(s.abs_tol);
  s.max_step = opt_num(j, "max_step").value_or(s.max_step);
  if (const auto g = opt_int(j, "grid_points")) s.grid_points = static_cast<int>(*g);
  if (const auto p = opt_str(j, "projection"))
    s.projection = projection_basis_from_string(*p);
  if (const auto m = opt_int(j, "max_steps")) {
    if (*m <= 0) throw ConfigError("max_steps must be > 0");
    s.max_steps = static_cast<std::size_t>(*m);
  }
  return s;
}

OutputConfig parse_output(const Json& j) {
  check_keys(j, "output", {"dir", "timing"});
  OutputConfig o;
  if (const auto d = opt_str(j, "dir")) o.dir = *d;
  if (const auto it = j.find("timing"); it != j.end()) {
    if (!it->is_boolean()) throw ConfigError("output.timing must be a boolean");
    o.timing = it->get<bool>();
  }
  return o;
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

Json complex_pair(const Complex& z) { return Json::array({z.real(), z.imag()}); }

}  // namespace

SweepProfile ProfileConfig::build() const {
  const bool dimensional = b || a || B;
  const bool reduced = lambda || eta;
  if (dimensional && reduced)
    throw ConfigError("profile must use either {b, a, B} or {lambda, eta}, not both");
  if (dimensional) {
    if (!(b && a && B)) throw ConfigError("profile needs all of b, a, B");
    return SweepProfile::from_dimensional(n, *b, *a, *B, tau0);
  }
  if (!(lambda && eta)) throw ConfigError("profile needs lambda and eta (or b, a, B)");
  return SweepProfile::from_dimensionless(n, *lambda, *eta, tau0);
}

void RunConfig::validate() const {
  if (std::find(std::begin(kCommands), std::end(kCommands), command) ==
      std::end(kCommands))
    throw ConfigError("unknown command '" + command + "'");
  integrator.validate();
  if (workers == 0) throw ConfigError("workers must be >= 1");

  auto need = [&](bool present, const char* block) {
    if (!present)
      throw ConfigError("command '" + command + "' needs a '" + block + "' block");
  };
  if (profile) profile->build();
  if (experimental) experimental->validate();

  if (command == "resonances" || command == "simulate") {
    need(profile.has_value(), "profile");
  } else if (command == "sweep") {
    need(sweep.has_value(), "sweep");
    sweep_spec().validate();
  } else if (command == "cnot") {
    need(system.has_value(), "system");
    need(profile.has_value(), "profile");
    system->validate();
  } else if (command == "translate") {
    need(experimental.has_value(), "experimental");
    const std::optional<int> n =
        translate && translate->n ? translate->n
                                  : (profile ? std::optional<int>(profile->n)
                                             : std::nullopt);
    if (!n) throw ConfigError("translate needs n (translate.n or profile.n)");
    if (*n != 3 && *n != 4)
      throw ConfigError("experimental translation is only defined for n = 3 or 4");
  }
}

SweepSpec RunConfig::sweep_spec() const {
  if (!sweep) throw ConfigError("no sweep block");
  SweepSpec spec;
  spec.n = sweep->n;
  spec.lambda = sweep->lambda;
  spec.eta_lo = sweep->eta_lo;
  spec.eta_hi = sweep->eta_hi;
  spec.steps = sweep->steps;
  spec.tau0 = sweep->tau0;
  spec.settings = integrator;
  return spec;
}

RunConfig parse_config(const Json& j) {
  check_keys(j, "config", {"command", "profile", "experimental", "system", "sweep",
                           "translate", "integrator", "output", "workers"});
  RunConfig cfg;
  cfg.command = opt_str(j, "command").value_or("");
  if (j.contains("profile")) cfg.profile = parse_profile(j["profile"]);
  if (j.contains("experimental")) cfg.experimental = parse_experimental(j["experimental"]);
  if (j.contains("system")) cfg.system = parse_system(j["system"]);
  if (j.contains("sweep")) cfg.sweep = parse_sweep(j["sweep"]);
  if (j.contains("translate")) cfg.translate = parse_translate(j["translate"]);
  if (j.contains("integrator")) cfg.integrator = parse_integrator(j["integrator"]);
  if (j.contains("output")) cfg.output = parse_output(j["output"]);
  if (const auto w = opt_int(j, "workers")) {
    if (*w < 1) throw ConfigError("workers must be >= 1");
    cfg.workers = static_cast<unsigned>(*w);
  }
  return cfg;
}

RunConfig parse_config_text(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  return parse_config(j);
}

Json to_json(const RunConfig& cfg) {
  Json j = Json::object();
  if (!cfg.command.empty()) j["command"] = cfg.command;
  if (const auto& p = cfg.profile) {
    Json o{{"n", p->n}};
    put(o, "b", p->b);
    put(o, "a", p->a);
    put(o, "B", p->B);
    put(o, "lambda", p->lambda);
    put(o, "eta", p->eta);
    put(o, "tau0", p->tau0);
    j["profile"] = o;
  }
  if (const auto& e = cfg.experimental) {
    j["experimental"] = {{"A_hz", e->A_hz},       {"delta_hz", e->delta_hz},
                         {"omega1_hz", e->omega1_hz}, {"B_exp", e->B_exp},
                         {"omega0_hz", e->omega0_hz}};
  }
  if (const auto& s = cfg.system)
    j["system"] = {{"omega_c", s->omega_c}, {"omega_t", s->omega_t}, {"J", s->J}};
  if (const auto& s = cfg.sweep) {
    Json o{{"n", s->n},           {"lambda", s->lambda}, {"eta_lo", s->eta_lo},
           {"eta_hi", s->eta_hi}, {"steps", s->steps}};
    put(o, "tau0", s->tau0);
    j["sweep"] = o;
  }
  if (const auto& t = cfg.translate) {
    Json o = Json::object();
    if (t->n) o["n"] = *t->n;
    put(o, "target_eta", t->target_eta);
    put(o, "lambda", t->lambda);
    o["units"] = std::string(to_string(t->units));
    j["translate"] = o;
  }
  const IntegratorSettings& s = cfg.integrator;
  j["integrator"] = {{"rel_tol", s.rel_tol},
                     {"abs_tol", s.abs_tol},
                     {"max_step", s.max_step},
                     {"grid_points", s.grid_points},
                     {"projection", std::string(to_string(s.projection))},
                     {"max_steps", s.max_steps}};
  j["output"] = {{"dir", cfg.output.dir}, {"timing", cfg.output.timing}};
  j["workers"] = cfg.workers;
  return j;
}

void apply_override(Json& j, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0)
    throw ConfigError("override must look like KEY=VALUE: '" +
                      std::string(assignment) + "'");
  const std::string path(assignment.substr(0, eq));
  const std::string raw(assignment.substr(eq + 1));

  Json* node = &j;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    const std::string key = path.substr(start, dot - start);
    if (key.empty()) throw ConfigError("empty path segment in '" + path + "'");
    if (!node->is_object()) {
      if (!node->is_null())
        throw ConfigError("override path '" + path + "' crosses a non-object");
      *node = Json::object();
    }
    node = &(*node)[key];
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  Json value = Json::parse(raw, nullptr, /*allow_exceptions=*/false);
  *node = value.is_discarded() ? Json(raw) : value;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string out = "tau,Re_S,Im_S,Re_I,Im_I,P\n";
  out.reserve(traj.points.size() * 140);
  for (const auto& pt : traj.points) {
    for (double v : {pt.tau, pt.S.real(), pt.S.imag(), pt.I.real(), pt.I.imag()}) {
      out += format_double(v);
      out += ',';
    }
    out += format_double(pt.P);
    out += '\n';
  }
  return out;
}

Json trajectory_summary(const SweepProfile& p, const Trajectory& traj) {
  const double final_p = traj.final_probability();
  Json j{{"n", p.order()},
         {"lambda", p.lambda()},
         {"eta", p.eta()},
         {"tau0", traj.tau0},
         {"final_P", final_p},
         {"norm_drift", traj.norm_drift()},
         {"fault_tolerant", final_p < kFaultToleranceThreshold}};
  if (p.order() >= 2) {
    const ResonanceSet set = resonance_times(p);
    j["resonance_times"] = set.times;
    j["regime"] = std::string(to_string(set.regime));
  }
  return j;
}

std::string sweep_csv(const SweepResult& result, bool timing) {
  std::string out = "eta,P,norm_drift,tau0,wall_ms\n";
  for (const auto& row : result.rows) {
    const double nan = std::nan("");
    out += format_double(row.eta) + ',' +
           format_double(row.ok() ? row.probability : nan) + ',' +
           format_double(row.ok() ? row.norm_drift : nan) + ',' +
           format_double(row.tau0) + ',' +
           format_double(timing ? row.wall_ms : 0.0) + '\n';
  }
  return out;
}

Json sweep_metadata(const SweepSpec& spec, const SweepResult& result,
                    bool timing) {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));

  Json rows = Json::array();
  for (const auto& row : result.rows) {
    Json r{{"eta", row.eta}, {"tau0", row.tau0}};
    if (timing) r["wall_ms"] = row.wall_ms;
    if (!row.ok()) r["error"] = row.error;
    rows.push_back(r);
  }
  RunConfig cfg;
  cfg.integrator = spec.settings;
  Json j{{"settings_hash", hex64(result.settings_hash)},
          {"sweep",
           {{"n", spec.n},
            {"lambda", spec.lambda},
            {"eta_lo", spec.eta_lo},
            {"eta_hi", spec.eta_hi},
            {"steps", spec.steps},
            {"tau0_policy", spec.tau0 ? "fixed" : "default"}}},
          {"integrator", to_json(cfg)["integrator"]},
          {"rows", rows}};
  if (timing) j["total_wall_ms"] = result.total_wall_ms;
  j["generated_at"] = stamp;
  return j;
}

Json gate_json(const GateMatrix& g) {
  Json m = Json::array();
  for (int r = 0; r < 4; ++r) {
    Json row = Json::array();
    for (int c = 0; c < 4; ++c) row.push_back(complex_pair(g(r, c)));
    m.push_back(row);
  }
  return {{"basis", {"00", "01", "10", "11"}}, {"layout", "row-major"}, {"matrix", m}};
}

GateMatrix gate_from_json(const Json& j) {
  GateMatrix g;
  try {
    const Json& m = j.at("matrix");
    if (m.size() != 4) throw ConfigError("gate matrix must have 4 rows");
    for (int r = 0; r < 4; ++r) {
      if (m[r].size() != 4) throw ConfigError("gate matrix rows must have 4 entries");
      for (int c = 0; c < 4; ++c)
        g(r, c) = {m[r][c].at(0).get<double>(), m[r][c].at(1).get<double>()};
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed gate JSON: ") + e.what());
  }
  return g;
}

Json cnot_report(const TwoQubitSystem& sys, const SweepProfile& p,
                 const CnotSimulation& sim) {
  const LevelStructure ls = level_structure(sys);
  const GateMatrix ref = ideal_cnot();
  const auto overlaps = column_overlaps(sim.gate, ref);
  Json probs = Json::array();
  Json phases = Json::array();
  for (const Complex& o : overlaps) {
    probs.push_back(std::norm(o));
    phases.push_back(std::arg(o));
  }
  return {{"system", {{"omega_c", sys.omega_c}, {"omega_t", sys.omega_t}, {"J", sys.J}}},
          {"levels",
           {{"energies", ls.energies},
            {"omega_plus", ls.omega_plus},
            {"omega_minus", ls.omega_minus}}},
          {"profile",
           {{"n", p.order()}, {"lambda", p.lambda()}, {"eta", p.eta()},
            {"tau0", p.window()}}},
          {"gate", gate_json(sim.gate)},
          {"transition_probabilities", probs},
          {"column_phases", phases},
          {"fidelity", gate_fidelity(sim.gate, ref)},
          {"unitarity_error", sim.gate.unitarity_error()},
          {"selective", sim.selective},
          {"half_bandwidth", sim.half_bandwidth},
          {"detuned_offset", sim.detuned_offset}};
}

void write_atomic(const std::string& path, std::string_view content) {
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace trp
