#include "levinoise/cli/config.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

namespace levinoise::cli {

using json = nlohmann::json;

ConfigError::ConfigError(std::string field, int line, const std::string& msg)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
                         (field.empty() ? std::string() : "field '" + field + "': ") + msg),
      field_(std::move(field)),
      line_(line) {}

std::string_view to_string(Kind k) {
  switch (k) {
    case Kind::equilibrium_map: return "equilibrium-map";
    case Kind::thermal_force: return "thermal-force";
    case Kind::cavity_spectrum: return "cavity-spectrum";
    case Kind::cavity_sweep: return "cavity-sweep";
    case Kind::tweezer_spectrum: return "tweezer-spectrum";
    case Kind::tweezer_sweep: return "tweezer-sweep";
    case Kind::electrical_spectrum: return "electrical-spectrum";
    case Kind::electrical_tuned: return "electrical-tuned";
    case Kind::electrical_sweep: return "electrical-sweep";
    case Kind::compare: return "compare";
  }
  return "";
}

AmplifierSpec build_amplifier(const AmplifierParams& a, double omega0) {
  AmplifierSpec s = a.kind == AmplifierKind::squid || a.kind == AmplifierKind::custom
                        ? squid_amplifier(a.noise_number, a.input_inductance, omega0)
                        : amplifier_preset(a.kind, omega0);
  s.kind = a.kind;
  s.input_inductance = a.input_inductance;
  if (a.current_noise >= 0.0) s.s_ii = a.current_noise * a.current_noise;
  if (a.voltage_noise >= 0.0) s.s_vv = a.voltage_noise * a.voltage_noise;
  return s;
}

FrequencyGrid SpectrumGrid::build() const {
  return spacing == Spacing::log ? make_log_grid(f_min, f_max, points)
                                 : make_linear_grid(f_min, f_max, points);
}

namespace {

struct FieldDef {
  const char* path;
  Dimension dim;
  double& (*ref)(Model&);
};

double& re(std::complex<double>& z) { return reinterpret_cast<double(&)[2]>(z)[0]; }
double& im(std::complex<double>& z) { return reinterpret_cast<double(&)[2]>(z)[1]; }

using D = Dimension;
#define LN_FIELD(path, dim, expr) \
  FieldDef { path, dim, +[](Model& m) -> double& { return expr; } }

const std::vector<FieldDef>& registry() {
  static const std::vector<FieldDef> defs{
      LN_FIELD("particle.radius", D::length, m.particle.radius),
      LN_FIELD("particle.density", D::density, m.particle.density),
      LN_FIELD("particle.charge", D::charge, m.particle.charge),
      LN_FIELD("particle.eps_opt_real", D::dimensionless, re(m.particle.eps_opt)),
      LN_FIELD("particle.eps_opt_imag", D::dimensionless, im(m.particle.eps_opt)),
      LN_FIELD("particle.eps_abs", D::dimensionless, m.particle.eps_abs),
      LN_FIELD("environment.pressure", D::pressure, m.environment.pressure),
      LN_FIELD("environment.temperature", D::temperature, m.environment.gas_temperature),
      LN_FIELD("environment.molecular_mass", D::mass, m.environment.gas_molecular_mass),
      LN_FIELD("environment.thermal_accommodation", D::dimensionless,
               m.environment.thermal_accommodation),
      LN_FIELD("environment.momentum_accommodation", D::dimensionless,
               m.environment.momentum_accommodation),
      LN_FIELD("environment.heat_capacity_ratio", D::dimensionless,
               m.environment.heat_capacity_ratio),
      LN_FIELD("trap.frequency", D::frequency, m.trap.secular_frequency),
      LN_FIELD("trap.electrode_distance", D::length, m.trap.electrode_distance),
      LN_FIELD("trap.bias_noise", D::voltage_noise, m.trap.bias_voltage_noise),
      LN_FIELD("trap.damping", D::rate, m.trap.damping),
      LN_FIELD("cavity.length", D::length, m.cavity.length),
      LN_FIELD("cavity.finesse", D::dimensionless, m.cavity.finesse),
      LN_FIELD("cavity.waist", D::length, m.cavity.waist),
      LN_FIELD("cavity.wavelength", D::length, m.cavity.wavelength),
      LN_FIELD("cavity.input_coupling", D::dimensionless, m.cavity.input_coupling),
      LN_FIELD("cavity.detuning", D::angular_rate, m.cavity.detuning),
      LN_FIELD("cavity.input_power", D::power, m.cavity.input_power),
      LN_FIELD("cavity.phase", D::dimensionless, m.cavity.phase),
      LN_FIELD("cavity.efficiency", D::dimensionless, m.cavity.efficiency),
      LN_FIELD("cavity.frequency_noise", D::dimensionless, m.cavity.frequency_noise),
      LN_FIELD("tweezer.wavelength", D::length, m.tweezer.wavelength),
      LN_FIELD("tweezer.numerical_aperture", D::dimensionless, m.tweezer.numerical_aperture),
      LN_FIELD("tweezer.power", D::power, m.tweezer.power),
      LN_FIELD("tweezer.efficiency", D::dimensionless, m.tweezer.efficiency),
      LN_FIELD("tweezer.nep", D::power_noise, m.tweezer.nep),
      LN_FIELD("tweezer.lo_power", D::power, m.tweezer.lo_power),
      LN_FIELD("tweezer.lens_waist", D::length, m.tweezer.lens_waist),
      LN_FIELD("tweezer.harmonic_region", D::length, m.tweezer.harmonic_region),
      LN_FIELD("transformer.primary_inductance", D::inductance,
               m.transformer.primary_inductance),
      LN_FIELD("transformer.secondary_inductance", D::inductance,
               m.transformer.secondary_inductance),
      LN_FIELD("transformer.coupling", D::dimensionless, m.transformer.coupling),
      LN_FIELD("transformer.quality_factor", D::dimensionless, m.transformer.quality_factor),
      LN_FIELD("transformer.tuning_capacitance", D::capacitance,
               m.transformer.tuning_capacitance),
      LN_FIELD("transformer.electrode_capacitance", D::capacitance,
               m.transformer.electrode_capacitance),
      LN_FIELD("amplifier.noise_number", D::dimensionless, m.amplifier.noise_number),
      LN_FIELD("amplifier.input_inductance", D::inductance, m.amplifier.input_inductance),
      LN_FIELD("amplifier.current_noise", D::current_noise, m.amplifier.current_noise),
      LN_FIELD("amplifier.voltage_noise", D::voltage_noise, m.amplifier.voltage_noise),
      LN_FIELD("thermal.absorbed_power", D::power, m.absorbed_power),
      LN_FIELD("csl.r_c", D::length, m.r_c),
  };
  return defs;
}
#undef LN_FIELD

const FieldDef* find_field(const std::string& path) {
  for (const auto& f : registry())
    if (path == f.path) return &f;
  return nullptr;
}

// Line of the last key of a dotted path, found by scanning for each quoted key
// after the previous one. Good enough for diagnostics.
int line_of(const std::string& text, const std::string& path) {
  std::size_t pos = 0;
  std::size_t start = 0;
  bool found = false;
  while (start <= path.size()) {
    const std::size_t dot = path.find('.', start);
    const std::string key =
        path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    const std::size_t hit = text.find("\"" + key + "\"", pos);
    if (hit == std::string::npos) break;
    pos = hit + 1;
    found = true;
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  if (!found) return 0;
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(pos) - 1, '\n'));
}

class Parser {
public:
  Parser(const std::string& text) : text_(text) {}

  [[noreturn]] void fail(const std::string& path, const std::string& msg) const {
    throw ConfigError(path, line_of(text_, path), msg);
  }

  double quantity(const json& v, const std::string& path, Dimension d) const {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
      std::string err;
      auto q = parse_quantity(v.get<std::string>(), d, &err);
      if (!q) fail(path, err);
      return *q;
    }
    fail(path, "expected a " + std::string(to_string(d)) + " such as \"" +
                   std::string(example(d)) + "\"");
  }

  std::string string(const json& v, const std::string& path) const {
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
  }

  template <class Fn>
  auto enumerated(const json& v, const std::string& path, Fn&& conv) const {
    const auto s = string(v, path);
    try {
      return conv(s);
    } catch (const DomainError& e) {
      fail(path, "unknown value '" + s + "'");
    }
  }

  std::size_t count(const json& v, const std::string& path) const {
    if (!v.is_number_integer() || v.get<long long>() < 0) fail(path, "expected a non-negative integer");
    return static_cast<std::size_t>(v.get<long long>());
  }

  std::vector<double> grid(const json& v, const std::string& path, Dimension d) const {
    if (!v.is_object()) fail(path, "expected an object with 'values' or 'start'/'stop'/'points'");
    std::vector<double> out;
    if (v.contains("values")) {
      for (const auto& k : v.items())
        if (k.key() != "values" && k.key() != "parameter") fail(path + "." + k.key(), "unexpected key next to 'values'");
      const auto& arr = v["values"];
      if (!arr.is_array()) fail(path + ".values", "expected an array");
      for (std::size_t i = 0; i < arr.size(); ++i)
        out.push_back(quantity(arr[i], path + ".values", d));
    } else {
      std::set<std::string> allowed{"start", "stop", "points", "spacing", "parameter"};
      for (const auto& k : v.items())
        if (!allowed.count(k.key())) fail(path + "." + k.key(), "unknown key");
      for (const char* req : {"start", "stop", "points"})
        if (!v.contains(req)) fail(path + "." + req, "missing");
      const double a = quantity(v["start"], path + ".start", d);
      const double b = quantity(v["stop"], path + ".stop", d);
      const std::size_t n = count(v["points"], path + ".points");
      const std::string spacing = v.contains("spacing") ? string(v["spacing"], path + ".spacing") : "log";
      if (spacing != "log" && spacing != "linear") fail(path + ".spacing", "expected 'log' or 'linear'");
      if (n == 1) {
        out.push_back(a);
      } else if (n > 1) {
        if (!(b > a)) fail(path + ".stop", "stop must exceed start");
        if (spacing == "log" && !(a > 0.0)) fail(path + ".start", "log spacing needs start > 0");
        const auto g = spacing == "log" ? make_log_grid(a, b, n) : make_linear_grid(a, b, n);
        out.assign(g.values().begin(), g.values().end());
      }
    }
    if (out.empty()) fail(path, "empty sweep grid");
    return out;
  }

  Sweep sweep(const json& v, const std::string& path) const {
    if (!v.is_object() || !v.contains("parameter")) fail(path + ".parameter", "missing");
    Sweep s;
    s.parameter = string(v["parameter"], path + ".parameter");
    const auto* f = find_field(s.parameter);
    if (!f) fail(path + ".parameter", "unknown parameter path '" + s.parameter + "'");
    s.dimension = f->dim;
    s.values = grid(v, path, f->dim);
    return s;
  }

  void section(Model& m, const json& root, const std::string& name,
               const std::set<std::string>& extra) const {
    if (!root.contains(name)) return;
    const auto& sec = root[name];
    if (!sec.is_object()) fail(name, "expected an object");
    for (const auto& item : sec.items()) {
      const std::string path = name + "." + item.key();
      if (extra.count(item.key())) continue;
      const auto* f = find_field(path);
      if (!f) fail(path, "unknown key");
      f->ref(m) = quantity(item.value(), path, f->dim);
    }
  }

private:
  const std::string& text_;
};

const std::set<std::string> kTopLevel{"kind",       "name",      "description", "particle",
                                      "environment", "trap",      "cavity",      "tweezer",
                                      "transformer", "amplifier", "thermal",     "csl",
                                      "sweep",      "series",    "spectrum",    "referred",
                                      "compare",    "output"};

Kind kind_from_string(const std::string& s, const Parser& p) {
  for (int i = 0; i <= static_cast<int>(Kind::compare); ++i) {
    const auto k = static_cast<Kind>(i);
    if (to_string(k) == s) return k;
  }
  p.fail("kind", "unknown kind '" + s + "'");
}

bool is_spectrum(Kind k) {
  return k == Kind::cavity_spectrum || k == Kind::tweezer_spectrum ||
         k == Kind::electrical_spectrum || k == Kind::electrical_tuned;
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& source,
                       const std::string& default_name) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t pos = std::min<std::size_t>(e.byte, text.size());
    const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n'));
    std::string msg = e.what();
    if (const auto at = msg.find("syntax error"); at != std::string::npos) msg = msg.substr(at);
    throw ConfigError("", line, msg);
  }
  Parser p(text);
  if (!root.is_object()) p.fail("", "top level must be an object");
  for (const auto& item : root.items())
    if (!kTopLevel.count(item.key())) p.fail(item.key(), "unknown section");
  if (!root.contains("kind")) throw ConfigError("kind", 0, "missing");

  RunConfig cfg;
  cfg.source = source;
  cfg.text = text;
  cfg.kind = kind_from_string(p.string(root["kind"], "kind"), p);
  cfg.name = root.contains("name") ? p.string(root["name"], "name") : default_name;
  if (cfg.name.empty() || cfg.name.find_first_of("/\\") != std::string::npos)
    p.fail("name", "must be a plain file stem");

  Model& m = cfg.model;
  // Presets first so explicit keys override them whatever their order.
  if (root.contains("particle") && root["particle"].contains("material")) {
    const auto mat = p.enumerated(root["particle"]["material"], "particle.material",
                                  [](const std::string& s) { return material_from_string(s); });
    m.particle = ParticleSpec::preset(mat, m.particle.radius, m.particle.charge);
  }
  if (root.contains("environment") && root["environment"].contains("gas")) {
    m.gas = p.enumerated(root["environment"]["gas"], "environment.gas",
                         [](const std::string& s) { return gas_from_string(s); });
    const auto pres = EnvironmentSpec::preset(m.gas, 0.0, 0.0);
    m.environment.gas_molecular_mass = pres.gas_molecular_mass;
    m.environment.heat_capacity_ratio = pres.heat_capacity_ratio;
  }
  if (root.contains("amplifier") && root["amplifier"].contains("kind")) {
    m.amplifier.kind = p.enumerated(root["amplifier"]["kind"], "amplifier.kind",
                                    [](const std::string& s) { return amplifier_kind_from_string(s); });
  }
  if (root.contains("tweezer") && root["tweezer"].contains("geometry")) {
    m.tweezer.geometry = p.enumerated(root["tweezer"]["geometry"], "tweezer.geometry",
                                      [](const std::string& s) { return tweezer_geometry_from_string(s); });
  }
  p.section(m, root, "particle", {"material"});
  p.section(m, root, "environment", {"gas"});
  p.section(m, root, "trap", {});
  p.section(m, root, "cavity", {"floors"});
  p.section(m, root, "tweezer", {"geometry", "floors"});
  p.section(m, root, "transformer", {});
  p.section(m, root, "amplifier", {"kind"});
  p.section(m, root, "thermal", {});
  p.section(m, root, "csl", {});

  if (root.contains("cavity") && root["cavity"].contains("floors")) {
    const auto& arr = root["cavity"]["floors"];
    if (!arr.is_array() || arr.empty()) p.fail("cavity.floors", "expected a non-empty array");
    m.cavity_floors.clear();
    for (const auto& v : arr) {
      const auto s = p.string(v, "cavity.floors");
      if (s == "shot") m.cavity_floors.push_back(CavityFloor::shot);
      else if (s == "frequency-noise") m.cavity_floors.push_back(CavityFloor::frequency_noise);
      else p.fail("cavity.floors", "expected 'shot' or 'frequency-noise'");
    }
  }
  if (root.contains("tweezer") && root["tweezer"].contains("floors")) {
    const auto& arr = root["tweezer"]["floors"];
    if (!arr.is_array() || arr.empty()) p.fail("tweezer.floors", "expected a non-empty array");
    m.tweezer_floors.clear();
    for (const auto& v : arr) {
      const auto s = p.string(v, "tweezer.floors");
      if (s == "shot") m.tweezer_floors.push_back(TweezerFloor::shot);
      else if (s == "nep") m.tweezer_floors.push_back(TweezerFloor::nep);
      else p.fail("tweezer.floors", "expected 'shot' or 'nep'");
    }
  }

  if (root.contains("series")) cfg.series = p.sweep(root["series"], "series");
  if (root.contains("sweep")) cfg.sweep = p.sweep(root["sweep"], "sweep");

  if (root.contains("spectrum")) {
    const auto& s = root["spectrum"];
    if (!s.is_object()) p.fail("spectrum", "expected an object");
    std::set<std::string> allowed{"f_min", "f_max", "points", "spacing"};
    for (const auto& k : s.items())
      if (!allowed.count(k.key())) p.fail("spectrum." + k.key(), "unknown key");
    for (const char* req : {"f_min", "f_max", "points"})
      if (!s.contains(req)) p.fail(std::string("spectrum.") + req, "missing");
    SpectrumGrid g;
    g.f_min = p.quantity(s["f_min"], "spectrum.f_min", Dimension::frequency);
    g.f_max = p.quantity(s["f_max"], "spectrum.f_max", Dimension::frequency);
    g.points = p.count(s["points"], "spectrum.points");
    const std::string sp = s.contains("spacing") ? p.string(s["spacing"], "spectrum.spacing") : "linear";
    if (sp != "log" && sp != "linear") p.fail("spectrum.spacing", "expected 'log' or 'linear'");
    g.spacing = sp == "log" ? Spacing::log : Spacing::linear;
    if (g.points < 2) p.fail("spectrum.points", "need at least 2 points");
    if (!(g.f_min > 0.0 && g.f_max > g.f_min)) p.fail("spectrum.f_max", "need 0 < f_min < f_max");
    cfg.spectrum = g;
  }
  if (is_spectrum(cfg.kind) && !cfg.spectrum) p.fail("spectrum", "required for kind '" + std::string(to_string(cfg.kind)) + "'");

  if (root.contains("referred")) {
    const auto r = p.string(root["referred"], "referred");
    if (r != "force" && r != "current") p.fail("referred", "expected 'force' or 'current'");
    cfg.force_referred = r == "force";
  }

  if (root.contains("compare")) {
    const auto& c = root["compare"];
    if (!c.is_object()) p.fail("compare", "expected an object");
    for (const auto& k : c.items()) {
      const std::string path = "compare." + k.key();
      if (k.key() == "cavity_powers") cfg.compare.cavity_powers = p.grid(k.value(), path, Dimension::power);
      else if (k.key() == "tweezer_powers") cfg.compare.tweezer_powers = p.grid(k.value(), path, Dimension::power);
      else if (k.key() == "pressures") cfg.compare.pressures = p.grid(k.value(), path, Dimension::pressure);
      else p.fail(path, "unknown key");
    }
  }
  if (cfg.kind == Kind::compare && cfg.compare.cavity_powers.empty() &&
      cfg.compare.tweezer_powers.empty() && cfg.compare.pressures.empty())
    p.fail("compare", "needs at least one of cavity_powers, tweezer_powers, pressures");

  if (root.contains("output")) {
    const auto& o = root["output"];
    if (!o.is_object()) p.fail("output", "expected an object");
    for (const auto& k : o.items()) {
      if (k.key() == "directory") cfg.output_directory = p.string(k.value(), "output.directory");
      else p.fail("output." + k.key(), "unknown key");
    }
  }
  return cfg;
}

void set_field(Model& m, const std::string& path, double value) {
  const auto* f = find_field(path);
  if (!f) throw ConfigError(path, 0, "unknown parameter path");
  f->ref(m) = value;
}

double get_field(const Model& m, const std::string& path) {
  const auto* f = find_field(path);
  if (!f) throw ConfigError(path, 0, "unknown parameter path");
  return f->ref(const_cast<Model&>(m));
}

Dimension field_dimension(const std::string& path) {
  const auto* f = find_field(path);
  if (!f) throw ConfigError(path, 0, "unknown parameter path");
  return f->dim;
}

std::vector<std::string> field_paths() {
  std::vector<std::string> out;
  for (const auto& f : registry()) out.emplace_back(f.path);
  return out;
}

nlohmann::ordered_json to_json(const Model& m) {
  nlohmann::ordered_json j;
  j["particle"]["material"] = std::string(to_string(m.particle.material));
  j["environment"]["gas"] = std::string(to_string(m.gas));
  j["tweezer"]["geometry"] = std::string(to_string(m.tweezer.geometry));
  j["amplifier"]["kind"] = std::string(to_string(m.amplifier.kind));
  for (const auto& f : registry()) {
    const std::string path = f.path;
    const auto dot = path.find('.');
    j[path.substr(0, dot)][path.substr(dot + 1)] = f.ref(const_cast<Model&>(m));
  }
  auto& cf = j["cavity"]["floors"] = nlohmann::ordered_json::array();
  for (auto fl : m.cavity_floors) cf.push_back(fl == CavityFloor::shot ? "shot" : "frequency-noise");
  auto& tf = j["tweezer"]["floors"] = nlohmann::ordered_json::array();
  for (auto fl : m.tweezer_floors) tf.push_back(fl == TweezerFloor::shot ? "shot" : "nep");
  return j;
}

}  // namespace levinoise::cli
