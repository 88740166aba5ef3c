#include "kinetra/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace kinetra {

std::string to_string(ScenarioKind s) {
  switch (s) {
    case ScenarioKind::fundamental_diagram:
      return "fundamental_diagram";
    case ScenarioKind::diffusion_profile:
      return "diffusion_profile";
    case ScenarioKind::bump:
      return "bump";
    case ScenarioKind::riemann:
      return "riemann";
    case ScenarioKind::stopgo:
      return "stopgo";
    case ScenarioKind::micro_compare:
      return "micro_compare";
    case ScenarioKind::wspace_bump:
      return "wspace_bump";
  }
  return "?";
}

std::string to_string(ModelChoice m) {
  switch (m) {
    case ModelChoice::boltzmann:
      return "boltzmann";
    case ModelChoice::bgk:
      return "bgk";
    case ModelChoice::modified_bgk:
      return "modified_bgk";
  }
  return "?";
}

namespace {

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

struct Reader {
  std::map<std::string, Entry> entries;
  std::vector<ConfigIssue>* issues;
  std::vector<std::string>* defaults;

  bool has(const std::string& key) const { return entries.count(key) > 0; }

  void error(int line, const std::string& msg) { issues->push_back({line, true, msg}); }
  void warn(int line, const std::string& msg) { issues->push_back({line, false, msg}); }
  int line_of(const std::string& key) const {
    auto it = entries.find(key);
    return it == entries.end() ? 0 : it->second.line;
  }

  std::optional<std::string> raw(const std::string& key) {
    auto it = entries.find(key);
    if (it == entries.end()) return std::nullopt;
    it->second.used = true;
    return it->second.value;
  }

  std::string get_string(const std::string& key, const std::string& dflt) {
    if (auto v = raw(key)) return *v;
    defaults->push_back(key + " = " + dflt);
    return dflt;
  }

  double get_double(const std::string& key, double dflt) {
    auto v = raw(key);
    if (!v) {
      std::ostringstream ss;
      ss << key << " = " << dflt;
      defaults->push_back(ss.str());
      return dflt;
    }
    try {
      std::size_t pos = 0;
      const double d = std::stod(*v, &pos);
      if (pos != v->size()) throw std::invalid_argument("");
      return d;
    } catch (...) {
      error(line_of(key), key + ": expected a number, got '" + *v + "'");
      return dflt;
    }
  }

  long get_long(const std::string& key, long dflt) {
    auto v = raw(key);
    if (!v) {
      defaults->push_back(key + " = " + std::to_string(dflt));
      return dflt;
    }
    try {
      std::size_t pos = 0;
      const long n = std::stol(*v, &pos);
      if (pos != v->size()) throw std::invalid_argument("");
      return n;
    } catch (...) {
      error(line_of(key), key + ": expected an integer, got '" + *v + "'");
      return dflt;
    }
  }

  int get_int(const std::string& key, int dflt) { return static_cast<int>(get_long(key, dflt)); }

  bool get_bool(const std::string& key, bool dflt) {
    auto v = raw(key);
    if (!v) {
      defaults->push_back(key + std::string(" = ") + (dflt ? "true" : "false"));
      return dflt;
    }
    if (*v == "true" || *v == "1" || *v == "yes") return true;
    if (*v == "false" || *v == "0" || *v == "no") return false;
    error(line_of(key), key + ": expected a boolean, got '" + *v + "'");
    return dflt;
  }

  std::vector<double> get_double_list(const std::string& key, const std::string& dflt_desc) {
    auto v = raw(key);
    std::vector<double> out;
    if (!v) {
      if (!dflt_desc.empty()) defaults->push_back(key + " = " + dflt_desc);
      return out;
    }
    std::stringstream ss(*v);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        out.push_back(std::stod(item));
      } catch (...) {
        error(line_of(key), key + ": expected a comma-separated list of numbers, got '" + *v + "'");
        return {};
      }
    }
    return out;
  }
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && is_space(s[a])) ++a;
  while (b > a && is_space(s[b - 1])) --b;
  return s.substr(a, b - a);
}

}  // namespace

std::vector<std::string> ScenarioConfig::effective_entries() const {
  std::vector<std::string> e;
  auto add = [&](const std::string& k, const std::string& v) { e.push_back(k + " = " + v); };
  auto num = [](double x) {
    std::ostringstream ss;
    ss.precision(17);
    ss << x;
    return ss.str();
  };
  add("scenario", to_string(scenario));
  add("model", to_string(model));
  add("n_speeds", std::to_string(n_speeds));
  add("delta_a", num(delta_a));
  if (r_values.empty()) {
    add("delta_b", num(delta_b));
  } else {
    std::string rs;
    for (std::size_t i = 0; i < r_values.size(); ++i)
      rs += (i ? "," : "") + std::to_string(r_values[i]);
    add("r_values", rs);
  }
  add("jump_rounding", rounding == JumpRounding::strict ? "strict" : "nearest");
  switch (prob.kind) {
    case AccelProbability::Kind::linear:
      add("prob_law", "linear");
      break;
    case AccelProbability::Kind::power:
      add("prob_law", "power");
      add("prob_gamma", num(prob.gamma));
      break;
    case AccelProbability::Kind::one_minus_pow:
      add("prob_law", "one_minus_pow");
      add("prob_gamma", num(prob.gamma));
      break;
    case AccelProbability::Kind::constant:
      add("prob_law", "constant");
      add("prob_value", num(prob.value));
      break;
  }
  add("n_cells", std::to_string(n_cells));
  add("x_min", num(x_min));
  add("x_max", num(x_max));
  add("boundary", to_string(boundary));
  add("eps_kind", eps.kind == EpsilonModel::Kind::constant ? "constant" : "variable");
  add("eps_value", num(eps.value));
  add("eps0", num(eps.eps0));
  add("a", num(bump_a));
  add("b", num(bump_b));
  add("rho_l", num(rho_l));
  add("rho_r", num(rho_r));
  if (has_pressure) {
    add("pressure_c", num(pressure_c));
    add("pressure_m", num(pressure_m));
  }
  add("n_rho", std::to_string(n_rho));
  add("table_tol", num(table_tol));
  add("relax_max_steps", std::to_string(relax_max_steps));
  add("warm_start", warm_start ? "true" : "false");
  add("t_final", num(t_final));
  {
    std::string ts;
    for (std::size_t i = 0; i < output_times.size(); ++i) ts += (i ? "," : "") + num(output_times[i]);
    add("output_times", ts);
  }
  add("cfl", num(cfl));
  add("llf_alpha", alpha == AlphaMode::local ? "local" : "global");
  add("store_nodes", store_nodes ? "true" : "false");
  if (scenario == ScenarioKind::wspace_bump) {
    add("w_refine", std::to_string(w_refine));
    add("w_margin", std::to_string(w_margin));
  }
  if (scenario == ScenarioKind::micro_compare) {
    add("n_vehicles", std::to_string(n_vehicles));
    add("vehicle_length", num(vehicle_length));
    add("rho_bar", num(rho_bar));
    add("micro_eps", num(micro_eps));
    add("perturb", num(perturb));
    add("ueq", ueq_from_table ? "table" : "linear");
    add("seed", std::to_string(seed));
  }
  return e;
}

ParseResult parse_config(const std::string& text) {
  ParseResult result;
  auto& issues = result.issues;

  Reader rd;
  rd.issues = &issues;
  ScenarioConfig cfg;
  rd.defaults = &cfg.defaults_applied;

  // tokenize: key = value per line, '#' comments
  {
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
      ++lineno;
      if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        issues.push_back({lineno, true, "expected 'key = value', got '" + line + "'"});
        continue;
      }
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty() || value.empty()) {
        issues.push_back({lineno, true, "empty key or value"});
        continue;
      }
      if (rd.entries.count(key)) {
        issues.push_back({lineno, true, "duplicate key '" + key + "' (first at line " +
                                            std::to_string(rd.entries[key].line) + ")"});
        continue;
      }
      rd.entries[key] = {value, lineno, false};
    }
  }

  // scenario and model
  const std::string sc = rd.get_string("scenario", "");
  if (sc.empty()) {
    rd.error(0, "missing required key 'scenario'");
  } else if (sc == "fundamental_diagram") {
    cfg.scenario = ScenarioKind::fundamental_diagram;
  } else if (sc == "diffusion_profile") {
    cfg.scenario = ScenarioKind::diffusion_profile;
  } else if (sc == "bump") {
    cfg.scenario = ScenarioKind::bump;
  } else if (sc == "riemann") {
    cfg.scenario = ScenarioKind::riemann;
  } else if (sc == "stopgo") {
    cfg.scenario = ScenarioKind::stopgo;
  } else if (sc == "micro_compare") {
    cfg.scenario = ScenarioKind::micro_compare;
  } else if (sc == "wspace_bump") {
    cfg.scenario = ScenarioKind::wspace_bump;
  } else {
    rd.error(rd.line_of("scenario"), "unknown scenario '" + sc + "'");
  }

  const std::string default_model =
      cfg.scenario == ScenarioKind::wspace_bump ? "modified_bgk" : "boltzmann";
  const std::string mo = rd.get_string("model", default_model);
  if (mo == "boltzmann")
    cfg.model = ModelChoice::boltzmann;
  else if (mo == "bgk")
    cfg.model = ModelChoice::bgk;
  else if (mo == "modified_bgk")
    cfg.model = ModelChoice::modified_bgk;
  else
    rd.error(rd.line_of("model"), "unknown model '" + mo + "'");
  if (cfg.scenario == ScenarioKind::wspace_bump && cfg.model != ModelChoice::modified_bgk)
    rd.error(rd.line_of("model"), "scenario wspace_bump requires model = modified_bgk");
  if (cfg.scenario == ScenarioKind::diffusion_profile && cfg.model == ModelChoice::boltzmann)
    rd.error(rd.line_of("model"),
             "diffusion_profile requires model = bgk or modified_bgk (the coefficient is defined "
             "for the relaxation approximations)");
  const bool kinetic_run = cfg.scenario == ScenarioKind::bump ||
                           cfg.scenario == ScenarioKind::riemann ||
                           cfg.scenario == ScenarioKind::stopgo;
  if (kinetic_run && cfg.model == ModelChoice::modified_bgk)
    rd.error(rd.line_of("model"),
             "model modified_bgk runs in the desired-speed variable; use scenario = wspace_bump");

  // velocity grid
  const bool fd_like = cfg.scenario == ScenarioKind::fundamental_diagram ||
                       cfg.scenario == ScenarioKind::diffusion_profile;
  cfg.n_speeds = rd.get_int("n_speeds", fd_like ? 49 : 5);
  cfg.delta_a = rd.get_double("delta_a", 0.25);
  const std::string rounding = rd.get_string("jump_rounding", "strict");
  if (rounding == "strict")
    cfg.rounding = JumpRounding::strict;
  else if (rounding == "nearest")
    cfg.rounding = JumpRounding::nearest;
  else
    rd.error(rd.line_of("jump_rounding"), "jump_rounding must be 'strict' or 'nearest'");

  if (rd.has("delta_b") && (rd.has("r") || rd.has("r_values"))) {
    rd.error(rd.line_of("delta_b"), "give either delta_b or r/r_values, not both");
  }
  if (rd.has("r_values")) {
    if (!fd_like)
      rd.warn(rd.line_of("r_values"), "r_values sweeps are used by table scenarios only");
    for (double r : rd.get_double_list("r_values", "")) {
      if (r < 1.0 || r != std::floor(r)) {
        rd.error(rd.line_of("r_values"), "r_values must be positive integers");
        break;
      }
      cfg.r_values.push_back(static_cast<int>(r));
    }
  } else if (rd.has("r")) {
    const double r = rd.get_double("r", 1.0);
    if (r < 1.0)
      rd.error(rd.line_of("r"), "r must be >= 1");
    else
      cfg.delta_b = cfg.delta_a / r;
  } else {
    cfg.delta_b = rd.get_double("delta_b", cfg.delta_a);
  }

  // validate grid divisibility for every grid this config will build
  {
    std::vector<double> dbs;
    if (cfg.r_values.empty())
      dbs.push_back(cfg.delta_b);
    else
      for (int r : cfg.r_values) dbs.push_back(cfg.delta_a / r);
    for (double db : dbs) {
      try {
        build_grid(cfg.n_speeds, cfg.delta_a, db, cfg.rounding);
      } catch (const ConfigError& e) {
        const int ln = rd.line_of("n_speeds") ? rd.line_of("n_speeds") : rd.line_of("delta_a");
        rd.error(ln, std::string(e.what()) + " (n_speeds/delta_a/delta_b interact)");
        break;
      }
    }
  }

  // acceleration probability
  const std::string pl = rd.get_string("prob_law", "one_minus_pow");
  try {
    if (pl == "linear") {
      cfg.prob = AccelProbability::linear();
    } else if (pl == "power") {
      cfg.prob = AccelProbability::power(rd.get_double("prob_gamma", 1.0));
    } else if (pl == "one_minus_pow") {
      cfg.prob = AccelProbability::one_minus_pow(rd.get_double("prob_gamma", 3.0));
    } else if (pl == "constant") {
      cfg.prob = AccelProbability::constant(rd.get_double("prob_value", 0.5));
    } else {
      rd.error(rd.line_of("prob_law"), "unknown prob_law '" + pl + "'");
    }
  } catch (const ConfigError& e) {
    rd.error(rd.line_of("prob_law"), e.what());
  }

  // mesh
  cfg.n_cells = rd.get_int("n_cells", 200);
  cfg.x_min = rd.get_double("x_min", -1.0);
  cfg.x_max = rd.get_double("x_max", 1.0);
  const std::string bc =
      rd.get_string("boundary", cfg.scenario == ScenarioKind::riemann ? "free_outflow" : "periodic");
  if (bc == "periodic")
    cfg.boundary = Boundary::periodic;
  else if (bc == "free_outflow")
    cfg.boundary = Boundary::free_outflow;
  else
    rd.error(rd.line_of("boundary"), "boundary must be 'periodic' or 'free_outflow'");
  if (cfg.n_cells < 4) rd.error(rd.line_of("n_cells"), "n_cells must be >= 4");
  if (!(cfg.x_max > cfg.x_min)) rd.error(rd.line_of("x_max"), "x_max must exceed x_min");

  // epsilon model
  const std::string ek =
      rd.get_string("eps_kind", cfg.scenario == ScenarioKind::stopgo ? "variable" : "constant");
  const double ev = rd.get_double("eps_value", 0.01);
  const double e0 = rd.get_double("eps0", 0.99);
  try {
    if (ek == "constant")
      cfg.eps = EpsilonModel::constant(ev);
    else if (ek == "variable")
      cfg.eps = EpsilonModel::variable(e0);
    else
      rd.error(rd.line_of("eps_kind"), "eps_kind must be 'constant' or 'variable'");
  } catch (const ConfigError& e) {
    rd.error(rd.line_of(ek == "constant" ? "eps_value" : "eps0"), e.what());
  }
  if (cfg.scenario == ScenarioKind::stopgo && cfg.eps.kind == EpsilonModel::Kind::constant)
    rd.warn(rd.line_of("eps_kind"),
            "stopgo with constant epsilon is permitted but damps the waves this scenario targets");

  // initial data
  const bool congested_default =
      cfg.scenario == ScenarioKind::stopgo || cfg.scenario == ScenarioKind::wspace_bump;
  cfg.bump_a = rd.get_double("a", congested_default ? 0.7 : 0.2);
  cfg.bump_b = rd.get_double("b", 0.2);
  cfg.rho_l = rd.get_double("rho_l", 0.2);
  cfg.rho_r = rd.get_double("rho_r", 0.9);
  if (cfg.bump_a + cfg.bump_b > kRhoMax + 1e-12)
    rd.error(rd.line_of("a"), "bump peak a + b exceeds the maximum density 1");
  for (auto [key, v] : {std::pair<const char*, double>{"rho_l", cfg.rho_l}, {"rho_r", cfg.rho_r}})
    if (v < 0.0 || v > kRhoMax) rd.error(rd.line_of(key), std::string(key) + " must lie in [0, 1]");

  // pressure
  const bool pressure_needed = cfg.model == ModelChoice::modified_bgk ||
                               cfg.scenario == ScenarioKind::micro_compare ||
                               cfg.scenario == ScenarioKind::wspace_bump;
  const bool pressure_given = rd.has("pressure_c") || rd.has("pressure_m");
  if (pressure_needed) {
    if (!rd.has("pressure_c") || !rd.has("pressure_m")) {
      rd.error(0, "pressure_c and pressure_m are required for model = modified_bgk and for the "
                  "micro_compare / wspace_bump scenarios");
    }
    cfg.pressure_c = rd.get_double("pressure_c", 1.5);
    cfg.pressure_m = rd.get_double("pressure_m", 2.0);
    cfg.has_pressure = true;
    if (!(cfg.pressure_c > 0.0))
      rd.error(rd.line_of("pressure_c"), "pressure_c must be > 0 (p' > 0 is required)");
    if (!(cfg.pressure_m >= 1.0)) rd.error(rd.line_of("pressure_m"), "pressure_m must be >= 1");
  } else if (pressure_given) {
    rd.warn(rd.line_of(rd.has("pressure_c") ? "pressure_c" : "pressure_m"),
            "pressure law is ignored: it applies to modified_bgk, micro_compare and wspace_bump only");
    rd.raw("pressure_c");
    rd.raw("pressure_m");
  }

  // table
  cfg.n_rho = rd.get_int("n_rho", 101);
  cfg.table_tol = rd.get_double("table_tol", 1e-10);
  cfg.relax_max_steps = rd.get_long("relax_max_steps", 1'000'000);
  cfg.warm_start = rd.get_bool("warm_start", false);
  if (cfg.n_rho < 3) rd.error(rd.line_of("n_rho"), "n_rho must be >= 3");
  if (!(cfg.table_tol > 0.0)) rd.error(rd.line_of("table_tol"), "table_tol must be > 0");

  // run control
  cfg.t_final = rd.get_double("t_final", cfg.scenario == ScenarioKind::stopgo ? 10.0 : 1.0);
  cfg.cfl = rd.get_double("cfl", 0.9);
  if (!(cfg.cfl > 0.0) || cfg.cfl > 1.0) rd.error(rd.line_of("cfl"), "cfl must lie in (0, 1]");
  if (!(cfg.t_final >= 0.0)) rd.error(rd.line_of("t_final"), "t_final must be >= 0");

  cfg.output_times = rd.get_double_list("output_times", "t_final/5 spacing");
  if (cfg.output_times.empty()) {
    for (int i = 0; i <= 5; ++i)
      cfg.output_times.push_back(cfg.t_final * static_cast<double>(i) / 5.0);
  }
  for (double t : cfg.output_times)
    if (t < 0.0 || t > cfg.t_final + 1e-12)
      rd.error(rd.line_of("output_times"), "output times must lie in [0, t_final]");

  const std::string am = rd.get_string("llf_alpha", "local");
  if (am == "local")
    cfg.alpha = AlphaMode::local;
  else if (am == "global")
    cfg.alpha = AlphaMode::global;
  else
    rd.error(rd.line_of("llf_alpha"), "llf_alpha must be 'local' or 'global'");
  cfg.store_nodes = rd.get_bool("store_nodes", false);

  // w-space
  if (cfg.scenario == ScenarioKind::wspace_bump) {
    cfg.w_refine = rd.get_int("w_refine", 1);
    cfg.w_margin = rd.get_int("w_margin", 1);
    if (cfg.w_refine < 1) rd.error(rd.line_of("w_refine"), "w_refine must be >= 1");
    if (cfg.w_margin < 0) rd.error(rd.line_of("w_margin"), "w_margin must be >= 0");
  }

  // micro
  if (cfg.scenario == ScenarioKind::micro_compare) {
    cfg.n_vehicles = rd.get_int("n_vehicles", 20);
    cfg.vehicle_length = rd.get_double("vehicle_length", 1.0);
    cfg.rho_bar = rd.get_double("rho_bar", 0.5);
    cfg.micro_eps = rd.get_double("micro_eps", 0.05);
    cfg.perturb = rd.get_double("perturb", 0.05);
    const std::string ueq = rd.get_string("ueq", "table");
    if (ueq == "table")
      cfg.ueq_from_table = true;
    else if (ueq == "linear")
      cfg.ueq_from_table = false;
    else
      rd.error(rd.line_of("ueq"), "ueq must be 'table' or 'linear'");
    cfg.seed = static_cast<unsigned long>(rd.get_long("seed", 0));
    if (cfg.n_vehicles < 2) rd.error(rd.line_of("n_vehicles"), "n_vehicles must be >= 2");
    if (!(cfg.rho_bar > 0.0) || cfg.rho_bar > 1.0)
      rd.error(rd.line_of("rho_bar"), "rho_bar must lie in (0, 1]");
    if (!(cfg.micro_eps > 0.0)) rd.error(rd.line_of("micro_eps"), "micro_eps must be > 0");
  }

  // unknown keys
  for (const auto& [key, entry] : rd.entries)
    if (!entry.used) issues.push_back({entry.line, true, "unknown key '" + key + "'"});

  bool any_error = false;
  for (const auto& i : issues) any_error = any_error || i.is_error;
  if (!any_error) result.config = std::move(cfg);
  return result;
}

ParseResult parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    ParseResult r;
    r.issues.push_back({0, true, "cannot open config file '" + path + "'"});
    return r;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace kinetra
