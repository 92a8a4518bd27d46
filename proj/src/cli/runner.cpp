#include "levinoise/cli/runner.hpp"

#include <Eigen/Core>
#include <boost/version.hpp>
#include <openssl/evp.h>
#include <openssl/opensslv.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "levinoise/cli/recipes.hpp"
#include "levinoise/csl.hpp"
#include "levinoise/parallel.hpp"
#include "levinoise/sensitivity.hpp"
#include "levinoise/thermal.hpp"

#ifndef LEVINOISE_VERSION
#define LEVINOISE_VERSION "dev"
#endif

namespace levinoise::cli {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

struct ColumnUnit {
  const char* suffix;
  double scale;  // column value = SI value * scale
};

ColumnUnit column_unit(Dimension d) {
  switch (d) {
    case Dimension::dimensionless: return {"", 1.0};
    case Dimension::length: return {"m", 1.0};
    case Dimension::mass: return {"kg", 1.0};
    case Dimension::density: return {"kg_m3", 1.0};
    case Dimension::pressure: return {"mbar", 1.0 / constants::mbar};
    case Dimension::power: return {"W", 1.0};
    case Dimension::temperature: return {"K", 1.0};
    case Dimension::frequency: return {"Hz", 1.0};
    case Dimension::angular_rate: return {"rad_s", 1.0};
    case Dimension::rate: return {"1_s", 1.0};
    case Dimension::charge: return {"C", 1.0};
    case Dimension::voltage_noise: return {"V_rtHz", 1.0};
    case Dimension::current_noise: return {"A_rtHz", 1.0};
    case Dimension::power_noise: return {"W_rtHz", 1.0};
    case Dimension::inductance: return {"H", 1.0};
    case Dimension::capacitance: return {"F", 1.0};
  }
  return {"", 1.0};
}

std::string column_name(const Sweep& s) {
  const auto dot = s.parameter.find('.');
  std::string leaf = s.parameter.substr(dot + 1);
  const auto u = column_unit(s.dimension);
  return *u.suffix ? leaf + "_" + u.suffix : leaf;
}

std::string join_flags(const std::vector<std::string>& flags) {
  std::string out;
  for (const auto& f : flags) {
    if (!out.empty()) out += ';';
    out += f;
  }
  return out;
}

struct Part {
  std::vector<std::vector<Cell>> rows;
  std::vector<std::vector<Cell>> extra;  // second table (mode report)
};

struct Handler {
  std::vector<std::string> columns;
  std::vector<std::string> extra_columns;
};

Handler handler_columns(const RunConfig& cfg) {
  switch (cfg.kind) {
    case Kind::equilibrium_map:
      return {{"T_K", "gas_heat_flow_W", "blackbody_heat_flow_W"}, {}};
    case Kind::thermal_force:
      return {{"sff_total", "sff_gas", "sff_bb", "T_K"}, {}};
    case Kind::cavity_spectrum:
      return {{"freq_hz", "total", "quantum", "thermal", "trap_bias", "frequency_noise", "shot"}, {}};
    case Kind::tweezer_spectrum:
      return {{"freq_hz", "total", "quantum", "thermal", "trap_bias", "nep", "shot"}, {}};
    case Kind::cavity_sweep:
      return {{"floor", "lambda_min", "bandwidth_hz", "s_xx", "s_ff", "T_K", "omega_t_over_omega0",
               "dx_rms_m", "detuning_limit_rad_s", "dominant", "flags"},
              {}};
    case Kind::tweezer_sweep:
      return {{"floor", "lambda_min", "bandwidth_hz", "s_xx", "s_ff", "T_K", "max_power_W",
               "dominant", "flags"},
              {}};
    case Kind::electrical_spectrum:
      return {{"freq_hz", "total", "gas", "electrical", "backaction", "imprecision",
               "blackbody_recoil", "trap_bias"},
              {}};
    case Kind::electrical_tuned:
      return {{"freq_hz", "total", "gas", "electrical", "backaction", "imprecision",
               "blackbody_recoil", "trap_bias"},
              {"tuning_capacitance_F", "lower_peak_hz", "upper_peak_hz", "splitting_hz",
               "antiresonance_hz", "antiresonance_bandwidth_hz"}};
    case Kind::electrical_sweep:
      return {{"amplifier", "lambda_min", "bandwidth_hz", "s_xx", "s_ff", "T_K", "dominant", "flags"},
              {}};
    case Kind::compare:
      return {{"scheme", "floor", "parameter", "value", "lambda_min", "bandwidth_hz", "s_xx",
               "s_ff", "T_K", "dominant", "flags"},
              {}};
  }
  return {};
}

std::vector<Cell> spectrum_row(double f, const NoiseSpectrum& s, std::size_t i,
                               std::initializer_list<const char*> channels) {
  std::vector<Cell> row{f, s.total()[i]};
  for (const char* c : channels) row.emplace_back(s.channel(c)[i]);
  return row;
}

struct ElectricalSetup {
  OscillatorSpec osc;
  double beta;
  MechanicalForces forces;
  AmplifierSpec amp;
};

ElectricalSetup electrical_setup(const Model& m) {
  const auto th = thermal_force(m.particle, m.environment, 0.0);
  ElectricalSetup s;
  s.osc = {particle_mass(m.particle), m.trap.omega0(),
           m.trap.damping > 0.0 ? m.trap.damping : th.coupling.total_damping()};
  s.beta = transduction_factor(m.trap, m.particle.charge);
  if (!(s.beta > 0.0)) throw DomainError("electrical readout", "particle charge must be > 0");
  s.forces = {th.gas, th.blackbody, bias_noise_force_psd(m.trap, m.particle.charge)};
  s.amp = build_amplifier(m.amplifier, m.trap.omega0());
  return s;
}

void electrical_rows(Part& part, const CircuitSolution& sol, bool force) {
  const NoiseSpectrum& s = force ? sol.force_referred : sol.output;
  for (std::size_t i = 0; i < s.grid().size(); ++i)
    part.rows.push_back(spectrum_row(s.grid()[i], s, i,
                                     {"gas", "electrical", "backaction", "imprecision",
                                      "blackbody-recoil", "trap-bias"}));
}

void append_reports(Part& part, const std::vector<SensitivityReport>& reps, Kind kind) {
  for (const auto& r : reps) {
    if (kind == Kind::compare) {
      part.rows.push_back({r.scheme, r.floor, r.parameter, r.value, r.lambda_min, r.bandwidth,
                           r.s_xx, r.s_ff, r.temperature, r.dominant, join_flags(r.flags)});
    } else {
      part.rows.push_back({r.floor, r.lambda_min, r.bandwidth, r.s_xx, r.s_ff, r.temperature,
                           r.dominant, join_flags(r.flags)});
    }
  }
}

Part compute_point(const RunConfig& cfg, const Model& m, unsigned threads) {
  Part part;
  switch (cfg.kind) {
    case Kind::equilibrium_map: {
      const auto st = thermal_state(m.particle, m.environment, m.absorbed_power);
      part.rows.push_back({st.temperature, st.gas_heat_flow, st.blackbody_heat_flow});
      break;
    }
    case Kind::thermal_force: {
      const auto f = thermal_force(m.particle, m.environment, m.absorbed_power);
      part.rows.push_back({f.total(), f.gas, f.blackbody, f.state.temperature});
      break;
    }
    case Kind::cavity_spectrum: {
      const auto s = homodyne_psd(m.cavity, m.particle, m.environment, m.trap, cfg.spectrum->build());
      for (std::size_t i = 0; i < s.grid().size(); ++i)
        part.rows.push_back(spectrum_row(s.grid()[i], s, i,
                                         {"quantum", "thermal", "trap-bias", "frequency-noise", "shot"}));
      break;
    }
    case Kind::tweezer_spectrum: {
      const auto s = homodyne_psd(m.tweezer, m.particle, m.environment, m.trap, cfg.spectrum->build());
      for (std::size_t i = 0; i < s.grid().size(); ++i)
        part.rows.push_back(
            spectrum_row(s.grid()[i], s, i, {"quantum", "thermal", "trap-bias", "nep", "shot"}));
      break;
    }
    case Kind::cavity_sweep: {
      const auto op = cavity_operating_point(m.cavity, m.particle, m.environment, m.trap);
      const auto lin = linearity_check(op.oscillator, op.thermal.state.temperature, m.cavity.wavelength);
      const double dmax = detuning_limit(m.cavity, m.particle, m.trap, op.oscillator.damping);
      for (auto fl : m.cavity_floors) {
        const auto r = sensitivity_sweep(m.cavity, m.particle, m.environment, m.trap,
                                         {m.cavity.input_power}, m.r_c, fl)
                           .front();
        part.rows.push_back({r.floor, r.lambda_min, r.bandwidth, r.s_xx, r.s_ff, r.temperature,
                             op.derived.omega_t / m.trap.omega0(), lin.dx_rms, dmax, r.dominant,
                             join_flags(r.flags)});
      }
      break;
    }
    case Kind::tweezer_sweep: {
      const double pmax = max_power(m.tweezer, m.trap, m.particle);
      for (auto fl : m.tweezer_floors) {
        const auto r = sensitivity_sweep(m.tweezer, m.particle, m.environment, m.trap,
                                         {m.tweezer.power}, m.r_c, fl)
                           .front();
        part.rows.push_back({r.floor, r.lambda_min, r.bandwidth, r.s_xx, r.s_ff, r.temperature,
                             pmax, r.dominant, join_flags(r.flags)});
      }
      break;
    }
    case Kind::electrical_spectrum: {
      const auto s = electrical_setup(m);
      const auto sol = solve_circuit(s.osc, s.beta, m.transformer, s.amp,
                                     m.environment.gas_temperature, s.forces,
                                     cfg.spectrum->build(), threads);
      electrical_rows(part, sol, true);
      break;
    }
    case Kind::electrical_tuned: {
      const auto s = electrical_setup(m);
      const auto t = tuned_lc_solution(s.osc, s.beta, m.transformer, s.amp,
                                       m.environment.gas_temperature, s.forces,
                                       cfg.spectrum->build(), 8001, threads);
      electrical_rows(part, t.solution, cfg.force_referred);
      part.extra.push_back({t.transformer.tuning_capacitance, t.modes.lower_peak,
                            t.modes.upper_peak, t.modes.splitting, t.modes.antiresonance,
                            t.modes.antiresonance_bandwidth});
      break;
    }
    case Kind::electrical_sweep: {
      const auto amp = build_amplifier(m.amplifier, m.trap.omega0());
      append_reports(part,
                     sensitivity_sweep(m.particle, m.environment, m.trap, m.transformer, amp,
                                       {m.environment.pressure}, m.r_c),
                     cfg.kind);
      break;
    }
    case Kind::compare: {
      std::vector<ReadoutConfig> cfgs;
      for (auto fl : m.cavity_floors)
        if (!cfg.compare.cavity_powers.empty())
          cfgs.push_back(CavityReadout{m.cavity, cfg.compare.cavity_powers, fl});
      for (auto fl : m.tweezer_floors)
        if (!cfg.compare.tweezer_powers.empty())
          cfgs.push_back(TweezerReadout{m.tweezer, cfg.compare.tweezer_powers, fl});
      if (!cfg.compare.pressures.empty())
        cfgs.push_back(ElectricalReadout{m.transformer, build_amplifier(m.amplifier, m.trap.omega0()),
                                         cfg.compare.pressures});
      append_reports(part, compare_schemes(cfgs, m.particle, m.environment, m.trap, m.r_c, threads),
                     cfg.kind);
      break;
    }
  }
  return part;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.8e", v);
  return buf;
}

std::string format_cell(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return format_number(*d);
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

ojson sweep_json(const std::optional<Sweep>& s) {
  if (!s) return nullptr;
  ojson j;
  j["parameter"] = s->parameter;
  j["values"] = s->values;
  return j;
}

}  // namespace

std::vector<Table> compute(const RunConfig& cfg, unsigned threads) {
  if (cfg.kind == Kind::compare && (cfg.series || cfg.sweep))
    throw ConfigError("sweep", 0, "kind 'compare' takes its grids from the 'compare' section");

  const std::vector<double> none{std::nan("")};
  const auto& outer = cfg.series ? cfg.series->values : none;
  const auto& inner = cfg.sweep ? cfg.sweep->values : none;
  const std::size_t n = outer.size() * inner.size();
  const unsigned inner_threads = n == 1 ? threads : 1;

  auto parts = parallel_map<Part>(n, threads, [&](std::size_t idx) {
    Model m = cfg.model;
    if (cfg.series) set_field(m, cfg.series->parameter, outer[idx / inner.size()]);
    if (cfg.sweep) set_field(m, cfg.sweep->parameter, inner[idx % inner.size()]);
    return compute_point(cfg, m, inner_threads);
  });

  const auto h = handler_columns(cfg);
  Table main{cfg.name + ".csv", {}, {}};
  Table extra{cfg.name + ".modes.csv", {}, {}};
  std::vector<Cell> prefix_proto;
  for (auto* t : {&main, &extra}) {
    if (cfg.series) t->columns.push_back(column_name(*cfg.series));
    if (cfg.sweep) t->columns.push_back(column_name(*cfg.sweep));
  }
  main.columns.insert(main.columns.end(), h.columns.begin(), h.columns.end());
  extra.columns.insert(extra.columns.end(), h.extra_columns.begin(), h.extra_columns.end());

  for (std::size_t idx = 0; idx < n; ++idx) {
    std::vector<Cell> prefix;
    if (cfg.series)
      prefix.emplace_back(outer[idx / inner.size()] * column_unit(cfg.series->dimension).scale);
    if (cfg.sweep)
      prefix.emplace_back(inner[idx % inner.size()] * column_unit(cfg.sweep->dimension).scale);
    auto emit = [&](Table& t, const std::vector<std::vector<Cell>>& rows) {
      for (const auto& r : rows) {
        std::vector<Cell> row = prefix;
        row.insert(row.end(), r.begin(), r.end());
        t.rows.push_back(std::move(row));
      }
    };
    emit(main, parts[idx].rows);
    emit(extra, parts[idx].extra);
  }
  std::vector<Table> out{std::move(main)};
  if (!h.extra_columns.empty()) out.push_back(std::move(extra));
  return out;
}

std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) out += ',';
    out += t.columns[i];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_cell(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256: digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xf];
  }
  return out;
}

std::string manifest(const RunConfig& cfg,
                     const std::vector<std::pair<const Table*, std::string>>& outputs) {
  ojson j;
  j["tool"] = "levinoise";
  j["version"] = LEVINOISE_VERSION;
  j["name"] = cfg.name;
  j["kind"] = std::string(to_string(cfg.kind));
  j["source"] = cfg.source;
  j["config_sha256"] = sha256_hex(cfg.text);
  j["resolved"] = to_json(cfg.model);
  j["series"] = sweep_json(cfg.series);
  j["sweep"] = sweep_json(cfg.sweep);
  if (cfg.spectrum) {
    j["spectrum"] = {{"f_min", cfg.spectrum->f_min},
                     {"f_max", cfg.spectrum->f_max},
                     {"points", cfg.spectrum->points},
                     {"spacing", cfg.spectrum->spacing == Spacing::log ? "log" : "linear"}};
  } else {
    j["spectrum"] = nullptr;
  }
  if (cfg.kind == Kind::compare) {
    j["compare"] = {{"cavity_powers", cfg.compare.cavity_powers},
                    {"tweezer_powers", cfg.compare.tweezer_powers},
                    {"pressures", cfg.compare.pressures}};
  }
  j["units"] = {{"psd", "one-sided"},
                {"pressure_columns", "mbar"},
                {"other_columns", "SI"}};
  j["constants"] = {{"hbar", constants::hbar}, {"k_B", constants::k_B},
                    {"c", constants::c},       {"e", constants::e},
                    {"epsilon0", constants::epsilon0}, {"amu", constants::amu},
                    {"zeta5", constants::zeta5}};
  char eigen[32];
  std::snprintf(eigen, sizeof eigen, "%d.%d.%d", EIGEN_WORLD_VERSION, EIGEN_MAJOR_VERSION,
                EIGEN_MINOR_VERSION);
  char njson[32];
  std::snprintf(njson, sizeof njson, "%d.%d.%d", NLOHMANN_JSON_VERSION_MAJOR,
                NLOHMANN_JSON_VERSION_MINOR, NLOHMANN_JSON_VERSION_PATCH);
  j["libraries"] = {{"boost", BOOST_LIB_VERSION},
                    {"eigen", eigen},
                    {"nlohmann_json", njson},
                    {"openssl", OPENSSL_VERSION_TEXT}};
  auto& outs = j["outputs"] = ojson::array();
  for (const auto& [t, text] : outputs) {
    outs.push_back({{"file", t->file},
                    {"sha256", sha256_hex(text)},
                    {"rows", t->rows.size()},
                    {"columns", t->columns}});
  }
  return j.dump(2) + "\n";
}

RunSummary run(const RunConfig& cfg, const std::string& directory, unsigned threads) {
  const auto tables = compute(cfg, threads);
  std::vector<std::pair<const Table*, std::string>> outputs;
  for (const auto& t : tables) outputs.emplace_back(&t, to_csv(t));
  const std::string man = manifest(cfg, outputs);

  fs::create_directories(directory);
  RunSummary summary{directory, {}};
  auto write = [&](const std::string& name, const std::string& text) {
    const fs::path path = fs::path(directory) / name;
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    os.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!os) throw std::runtime_error("cannot write " + path.string());
    summary.files.push_back(path.string());
  };
  for (const auto& [t, text] : outputs) write(t->file, text);
  write(cfg.name + ".manifest.json", man);
  return summary;
}

RunConfig load_config(const std::string& path_or_recipe) {
  std::error_code ec;
  const fs::path p(path_or_recipe);
  if (fs::is_regular_file(p, ec)) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    if (!is && !is.eof()) throw ConfigError("", 0, "cannot read " + path_or_recipe);
    return parse_config(ss.str(), p.filename().string(), p.stem().string());
  }
  std::string name = path_or_recipe;
  if (name.rfind("recipe:", 0) == 0) name = name.substr(7);
  if (const auto r = find_recipe(name))
    return parse_config(std::string(r->text), "recipe:" + std::string(r->name), std::string(r->name));
  throw ConfigError("", 0, "no such file or recipe: '" + path_or_recipe + "'");
}

}  // namespace levinoise::cli
