#include "solitonlab/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "solitonlab/errors.hpp"

namespace solitonlab {

using nlohmann::json;

namespace {

// Features people ask for that the library deliberately does not model.
const std::map<std::string, std::string>& out_of_scope() {
  static const std::map<std::string, std::string> m{
      {"spin", "spin is out of scope: solitons are scalar fields"},
      {"self_field", "the soliton's self-electromagnetic field is not modelled"},
      {"self_electromagnetic_field", "the soliton's self-electromagnetic field is not modelled"},
      {"born_series", "reflected-kernel Born series for varying potentials are not implemented"},
      {"reflected_kernel", "reflected-kernel Born series for varying potentials are not implemented"},
      {"statistics", "measurement statistics are out of scope; dynamics are deterministic"},
      {"bell", "Bell-inequality statistics are out of scope"},
      {"measurement", "measurement models are out of scope"},
      {"gravity", "gravitational coupling is out of scope"},
      {"plot", "plotting is out of scope; outputs are data files"},
      {"render", "plotting is out of scope; outputs are data files"},
      {"seed", "runs are deterministic and take no random seed"},
  };
  return m;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
  return s;
}

// Reads one JSON object, rejecting keys outside the allowed set.
class Section {
 public:
  Section(const json& j, std::string path, std::vector<std::string> allowed) : j_(j), path_(std::move(path)) {
    if (!j.is_object()) throw ConfigError("'" + path_ + "' must be an object");
    for (const auto& [key, _] : j.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) != allowed.end()) continue;
      const auto oos = out_of_scope().find(key);
      if (oos != out_of_scope().end())
        throw ConfigError("unknown key '" + name(key) + "': " + oos->second);
      throw ConfigError("unknown key '" + name(key) + "'; allowed keys: " + join(allowed));
    }
  }

  bool has(const std::string& key) const { return j_.contains(key); }
  const json& raw(const std::string& key) const { return j_.at(key); }
  std::string name(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  double number(const std::string& key, double def) const {
    if (!has(key)) return def;
    return as_number(j_.at(key), name(key));
  }
  double required_number(const std::string& key) const {
    if (!has(key)) throw ConfigError("missing required key '" + name(key) + "'");
    return as_number(j_.at(key), name(key));
  }
  std::size_t count(const std::string& key, std::size_t def) const {
    if (!has(key)) return def;
    const auto& v = j_.at(key);
    if (!v.is_number_integer() || v.get<long long>() <= 0)
      throw ConfigError("'" + name(key) + "' must be a positive integer");
    return v.get<std::size_t>();
  }
  bool boolean(const std::string& key, bool def) const {
    if (!has(key)) return def;
    if (!j_.at(key).is_boolean()) throw ConfigError("'" + name(key) + "' must be true or false");
    return j_.at(key).get<bool>();
  }
  std::string string(const std::string& key, const std::string& def) const {
    if (!has(key)) return def;
    if (!j_.at(key).is_string()) throw ConfigError("'" + name(key) + "' must be a string");
    return j_.at(key).get<std::string>();
  }
  std::vector<double> numbers(const std::string& key, std::vector<double> def, std::size_t size = 0) const {
    if (!has(key)) return def;
    const auto& v = j_.at(key);
    if (!v.is_array() || (size && v.size() != size) || v.empty())
      throw ConfigError("'" + name(key) + "' must be an array of " + (size ? std::to_string(size) + " " : "") +
                        "numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_number(v[i], name(key) + "[" + std::to_string(i) + "]"));
    return out;
  }

  static double as_number(const json& v, const std::string& name) {
    if (!v.is_number()) throw ConfigError("'" + name + "' must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError("'" + name + "' must be finite");
    return x;
  }

 private:
  const json& j_;
  std::string path_;
};

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

void check_speed(double v, const std::string& key) {
  if (!(std::fabs(v) < 1.0))
    throw ConfigError("'" + key + "' = " + std::to_string(v) + ": superluminal velocity (need |v| < 1 in units c = 1)");
}

FourVector four(const std::vector<double>& v) { return {v[0], v[1], v[2], v[3]}; }

SolitonParams read_params(const Section& top, SolitonParams p) {
  if (!top.has("params")) return p;
  Section s(top.raw("params"), "params", {"g", "r0", "omega0", "e"});
  p.g = s.number("g", p.g);
  p.r0 = s.number("r0", p.r0);
  p.omega0 = s.number("omega0", p.omega0);
  p.e = s.number("e", p.e);
  require(p.r0 > 0.0, "'params.r0' must be positive (core radius), got " + std::to_string(p.r0));
  require(p.omega0 >= 0.0, "'params.omega0' must be non-negative");
  require(p.g != 0.0, "'params.g' must be non-zero");
  return p;
}

SliceSpec read_grid(const Section& top) {
  Section s(top.raw("grid"), "grid", {"plane", "extent1", "extent2", "n", "base"});
  SliceSpec g;
  try {
    const auto axes = parse_plane(s.string("plane", "x-y"));
    g.axis1 = axes[0];
    g.axis2 = axes[1];
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("'grid.plane': ") + e.what());
  }
  const auto e1 = s.numbers("extent1", {-10.0, 10.0}, 2), e2 = s.numbers("extent2", {-10.0, 10.0}, 2);
  g.min1 = e1[0];
  g.max1 = e1[1];
  g.min2 = e2[0];
  g.max2 = e2[1];
  const auto n = s.numbers("n", {64.0, 64.0}, 2);
  for (double x : n) require(x >= 2.0 && x == std::floor(x) && x <= 8192.0, "'grid.n' entries must be integers in [2, 8192]");
  g.n1 = static_cast<std::size_t>(n[0]);
  g.n2 = static_cast<std::size_t>(n[1]);
  g.base = four(s.numbers("base", {0.0, 0.0, 0.0, 0.0}, 4));
  try {
    g.validate();
  } catch (const Error& e) {
    throw ConfigError(std::string("'grid': ") + e.what());
  }
  return g;
}

Complex read_weight(const json& v, const std::string& name) {
  if (v.is_number()) return {Section::as_number(v, name), 0.0};
  if (v.is_array() && v.size() == 2)
    return {Section::as_number(v[0], name + "[0]"), Section::as_number(v[1], name + "[1]")};
  throw ConfigError("'" + name + "' must be a number or a [re, im] pair");
}

TwoBodySpec read_two_body(const Section& top) {
  Section s(top.raw("two_body"), "two_body", {"model", "terms", "initial", "lambda_end", "foliation", "samples"});
  TwoBodySpec tb;
  const auto model = s.string("model", "product");
  if (model == "product") tb.model = TwoBodySpec::Model::product;
  else if (model == "superposition") tb.model = TwoBodySpec::Model::superposition;
  else if (model == "symmetrized") tb.model = TwoBodySpec::Model::symmetrized;
  else throw ConfigError("'two_body.model' must be product, superposition or symmetrized, got '" + model + "'");

  if (!s.has("terms") || !s.raw("terms").is_array() || s.raw("terms").empty())
    throw ConfigError("'two_body.terms' must be a non-empty array");
  const auto& terms = s.raw("terms");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string path = "two_body.terms[" + std::to_string(i) + "]";
    Section t(terms[i], path, {"weight", "v"});
    TwoBodySpec::Term term;
    if (t.has("weight")) term.weight = read_weight(t.raw("weight"), path + ".weight");
    const auto v = t.numbers("v", {}, 2);
    require(v.size() == 2, "missing required key '" + path + ".v'");
    for (int k = 0; k < 2; ++k) check_speed(v[k], path + ".v[" + std::to_string(k) + "]");
    term.v = {v[0], v[1]};
    tb.terms.push_back(term);
  }
  if (tb.model != TwoBodySpec::Model::superposition)
    require(tb.terms.size() == 1, "'two_body.terms' must have exactly one entry for the " + model + " model");

  tb.initial = {{0.0, -1.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0}};
  if (s.has("initial")) {
    const auto& init = s.raw("initial");
    require(init.is_array() && init.size() == 2, "'two_body.initial' must hold two events [t, x, y, z]");
    tb.initial.clear();
    for (std::size_t i = 0; i < 2; ++i) {
      const std::string path = "two_body.initial[" + std::to_string(i) + "]";
      require(init[i].is_array() && init[i].size() == 4, "'" + path + "' must be [t, x, y, z]");
      FourVector z;
      for (int mu = 0; mu < 4; ++mu) z[mu] = Section::as_number(init[i][mu], path);
      tb.initial.push_back(z);
    }
  }
  tb.lambda_end = s.number("lambda_end", tb.lambda_end);
  tb.samples = s.count("samples", tb.samples);
  require(tb.samples >= 2, "'two_body.samples' must be at least 2");
  if (s.has("foliation")) {
    Section f(s.raw("foliation"), "two_body.foliation", {"kind", "v"});
    const auto kind = f.string("kind", "lab");
    if (kind == "lab") {
      require(!f.has("v"), "'two_body.foliation.v' only applies to the boosted foliation");
    } else if (kind == "boosted") {
      const double v = f.required_number("v");
      check_speed(v, "two_body.foliation.v");
      tb.foliation = Foliation::boosted(v);
    } else {
      throw ConfigError("'two_body.foliation.kind' must be lab or boosted, got '" + kind + "'");
    }
  }
  return tb;
}

// Which optional sections each scenario accepts.
std::vector<std::string> sections_for(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::uniform:
    case ScenarioKind::hyperbolic: return {"motion", "grid", "crosscut", "kinds", "potential"};
    case ScenarioKind::two_body: return {"two_body", "grid", "kinds"};
    case ScenarioKind::cavity: return {"cavity"};
    case ScenarioKind::diamond: return {"diamond"};
    case ScenarioKind::radial: return {"radial"};
    case ScenarioKind::derrick: return {"derrick"};
    case ScenarioKind::energy: return {"energy"};
  }
  return {};
}

std::string locate(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

std::string to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::uniform: return "uniform";
    case ScenarioKind::hyperbolic: return "hyperbolic";
    case ScenarioKind::cavity: return "cavity";
    case ScenarioKind::two_body: return "two_body";
    case ScenarioKind::diamond: return "diamond";
    case ScenarioKind::radial: return "radial";
    case ScenarioKind::derrick: return "derrick";
    case ScenarioKind::energy: return "energy";
  }
  return "?";
}

ScenarioKind parse_scenario_kind(const std::string& s) {
  for (auto k : {ScenarioKind::uniform, ScenarioKind::hyperbolic, ScenarioKind::cavity, ScenarioKind::two_body,
                 ScenarioKind::diamond, ScenarioKind::radial, ScenarioKind::derrick, ScenarioKind::energy})
    if (to_string(k) == s) return k;
  throw ConfigError("unknown scenario '" + s +
                    "'; expected uniform, hyperbolic, cavity, two_body, diamond, radial, derrick or energy");
}

std::string to_string(GridFormat f) { return f == GridFormat::csv ? "csv" : "bin"; }

GridFormat parse_grid_format(const std::string& s) {
  if (s == "csv") return GridFormat::csv;
  if (s == "bin") return GridFormat::bin;
  throw ConfigError("unknown output format '" + s + "'; expected csv or bin");
}

std::string ScenarioConfig::prefix() const { return output.prefix.empty() ? to_string(scenario) : output.prefix; }

ScenarioConfig validate_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::string what = e.what();
    if (const auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
    throw ConfigError("config parse error at " + locate(text, e.byte) + ": " + what);
  }

  ScenarioConfig cfg;
  std::vector<std::string> allowed{"schema_version", "scenario", "params", "tolerance", "threads", "output"};
  // Peek at the scenario first so the key check can name the right sections.
  if (!root.is_object()) throw ConfigError("config must be a JSON object");
  if (!root.contains("schema_version")) throw ConfigError("missing required key 'schema_version'");
  if (!root["schema_version"].is_number_integer() || root["schema_version"].get<int>() != kSchemaVersion)
    throw ConfigError("'schema_version' must be " + std::to_string(kSchemaVersion));
  if (!root.contains("scenario") || !root["scenario"].is_string())
    throw ConfigError("missing required key 'scenario' (a string)");
  cfg.scenario = parse_scenario_kind(root["scenario"].get<std::string>());
  for (auto& s : sections_for(cfg.scenario)) allowed.push_back(s);

  try {
    Section top(root, "", allowed);
    cfg.params = read_params(top, cfg.params);
    cfg.tolerance = top.number("tolerance", cfg.tolerance);
    require(cfg.tolerance > 0.0, "'tolerance' must be positive");
    cfg.threads = static_cast<unsigned>(top.count("threads", cfg.threads));

    if (top.has("output")) {
      Section o(top.raw("output"), "output", {"dir", "format", "prefix"});
      cfg.output.dir = o.string("dir", cfg.output.dir.string());
      try {
        cfg.output.format = parse_grid_format(o.string("format", "csv"));
      } catch (const ConfigError& e) {
        throw ConfigError(std::string("'output.format': ") + e.what());
      }
      cfg.output.prefix = o.string("prefix", "");
      require(cfg.output.prefix.find('/') == std::string::npos, "'output.prefix' must not contain '/'");
    }

    if (top.has("motion")) {
      std::vector<std::string> keys{"sampled", "sample_step"};
      if (cfg.scenario == ScenarioKind::uniform) keys.push_back("v_x");
      else keys.insert(keys.end(), {"x0", "v0"});
      Section m(top.raw("motion"), "motion", keys);
      cfg.motion.v_x = m.number("v_x", cfg.motion.v_x);
      cfg.motion.x0 = m.number("x0", cfg.motion.x0);
      cfg.motion.v0 = m.number("v0", cfg.motion.v0);
      cfg.motion.sampled = m.boolean("sampled", false);
      cfg.motion.sample_step = m.number("sample_step", cfg.motion.sample_step);
      require(cfg.motion.sample_step > 0.0, "'motion.sample_step' must be positive");
    }
    check_speed(cfg.motion.v_x, "motion.v_x");
    check_speed(cfg.motion.v0, "motion.v0");
    require(cfg.motion.x0 > 0.0, "'motion.x0' must be positive (distance of the hyperbola's apex)");

    if (top.has("potential")) cfg.potential = ExternalPotential::constant(four(top.numbers("potential", {}, 4)));
    if (top.has("grid")) cfg.grid = read_grid(top);
    if (top.has("crosscut")) {
      require(cfg.grid.has_value(), "'crosscut' needs a 'grid' to define its plane");
      Section c(top.raw("crosscut"), "crosscut", {"axis2_value", "n"});
      cfg.crosscut = CrosscutSpec{c.number("axis2_value", 0.0), c.count("n", 401)};
      require(cfg.crosscut->n >= 2, "'crosscut.n' must be at least 2");
    }
    if (top.has("kinds")) {
      const auto& k = top.raw("kinds");
      if (!k.is_array() || k.empty()) throw ConfigError("'kinds' must be a non-empty array of ret, adv, sym");
      cfg.kinds.clear();
      for (const auto& x : k) {
        if (!x.is_string()) throw ConfigError("'kinds' entries must be strings");
        try {
          cfg.kinds.push_back(parse_field_kind(x.get<std::string>()));
        } catch (const Error&) {
          throw ConfigError("'kinds': unknown field kind '" + x.get<std::string>() + "'; expected ret, adv or sym");
        }
      }
    }

    if (top.has("radial")) {
      Section r(top.raw("radial"), "radial", {"A", "kappa", "F0", "r_max", "tol", "epsilon", "output_step", "fit_window"});
      auto& p = cfg.radial.problem;
      p.A = r.number("A", p.A);
      p.kappa = r.number("kappa", p.kappa);
      p.F0 = r.number("F0", p.F0);
      p.r_max = r.number("r_max", p.r_max);
      p.tol = r.number("tol", p.tol);
      p.epsilon = r.number("epsilon", p.epsilon);
      p.output_step = r.number("output_step", p.output_step);
      const auto w = r.numbers("fit_window", {cfg.radial.fit_window.first, cfg.radial.fit_window.second}, 2);
      cfg.radial.fit_window = {w[0], w[1]};
      try {
        p.validate();
      } catch (const Error& e) {
        throw ConfigError(std::string("'radial': ") + e.what());
      }
    }
    if (top.has("energy")) {
      Section e(top.raw("energy"), "energy", {"radii"});
      cfg.energy.radii = e.numbers("radii", cfg.energy.radii);
      for (double R : cfg.energy.radii) require(R > 0.0, "'energy.radii' must be positive");
    }
    if (top.has("derrick")) {
      Section d(top.raw("derrick"), "derrick", {"p", "alphas"});
      cfg.derrick.p = d.number("p", cfg.derrick.p);
      cfg.derrick.alphas = d.numbers("alphas", cfg.derrick.alphas);
      require(cfg.derrick.p > 0.0, "'derrick.p' must be positive");
      for (double a : cfg.derrick.alphas) require(a > 0.0, "'derrick.alphas' must be positive");
    }
    if (top.has("cavity")) {
      Section c(top.raw("cavity"), "cavity", {"omega", "R_cav", "samples"});
      cfg.cavity.omega = c.number("omega", cfg.cavity.omega);
      cfg.cavity.R_cav = c.number("R_cav", cfg.cavity.R_cav);
      cfg.cavity.samples = c.count("samples", cfg.cavity.samples);
      require(cfg.cavity.omega > 0.0, "'cavity.omega' must be positive");
      require(cfg.cavity.R_cav > 0.0, "'cavity.R_cav' must be positive");
      require(cfg.cavity.samples >= 2, "'cavity.samples' must be at least 2");
    }
    if (top.has("diamond")) {
      Section d(top.raw("diamond"), "diamond", {"T_life", "times"});
      cfg.diamond.T_life = d.number("T_life", cfg.diamond.T_life);
      cfg.diamond.times = d.numbers("times", {});
      require(cfg.diamond.T_life > 0.0, "'diamond.T_life' must be positive");
      for (double t : cfg.diamond.times)
        require(t >= 0.0 && t <= cfg.diamond.T_life, "'diamond.times' must lie in [0, T_life]");
    }
    if (cfg.scenario == ScenarioKind::two_body) {
      if (!top.has("two_body")) throw ConfigError("scenario two_body needs a 'two_body' section");
      cfg.two_body = read_two_body(top);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config schema error: ") + e.what());
  }
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return validate_config(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace solitonlab
