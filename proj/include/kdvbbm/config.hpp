#pragma once

#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "kdvbbm/artifacts.hpp"
#include "kdvbbm/errors.hpp"
#include "kdvbbm/estimates.hpp"
#include "kdvbbm/field.hpp"
#include "kdvbbm/grid.hpp"
#include "kdvbbm/norms.hpp"
#include "kdvbbm/params.hpp"

namespace kdvbbm {

enum class Command { simulate, picard, global_split, norms, verify_estimates, soliton };

inline const char* command_name(Command c) {
  switch (c) {
    case Command::simulate: return "simulate";
    case Command::picard: return "picard";
    case Command::global_split: return "global-split";
    case Command::norms: return "norms";
    case Command::verify_estimates: return "verify-estimates";
    case Command::soliton: return "soliton";
  }
  return "?";
}

inline constexpr const char* command_list =
    "one of simulate, picard, global-split, norms, verify-estimates, soliton";

inline Command parse_command(const std::string& name) {
  if (name == "simulate") return Command::simulate;
  if (name == "picard") return Command::picard;
  if (name == "global-split") return Command::global_split;
  if (name == "norms") return Command::norms;
  if (name == "verify-estimates") return Command::verify_estimates;
  if (name == "soliton") return Command::soliton;
  throw validation_error("command", command_list);
}

// One spectral line of a tone-sum datum: coefficient re + i*im in slot k,
// mirrored into slot -k so the synthesized samples are real.
struct ToneSpec {
  long k = 1;
  double re = 0.0;
  double im = 0.0;
};

struct InitialSpec {
  std::string type = "gaussian";  // gaussian | tones | sech2 | file
  double amplitude = 0.5;
  double width = 4.0;   // gaussian: exp(-((x-center)/width)^2)
  double scale = 1.0;   // sech2: sech^2(scale*(x-center))
  double center = 0.0;
  std::vector<ToneSpec> tones;
  std::string path;     // file: one sample per line, exactly N of them
};

struct SimulateBlock {
  double dt = 1e-4;
  double t_end = 1.0;
  bool dealias = true;
  std::size_t record_every = 0;
  double blowup_linf = 1e8;
  std::vector<NormSpec> norms;
};

struct PicardBlock {
  double T = 0.0;  // 0 derives the horizon from existence_time at the datum size
  double strength_cs = 1.0;
  std::size_t nodes = 201;
  double tol = 1e-10;
  std::size_t max_iter = 50;
  NormSpec norm = modulation_spec(1.5, 2.0);
  double rescale_to = 0.0;  // > 0 rescales the datum to this working norm
};

struct SplitBlock {
  double s = 1.5;
  double p = 2.0;
  double n_cut = 8.0;
  double t0 = 0.0;
  double t0_constant = 1.0;
  std::size_t legs = 4;
  double dt = 1e-4;
  bool dealias = true;
  std::size_t record_every = 0;
};

struct GrowthBlock {
  double s = 1.0;
  double r = 1.0;  // inner band exponent; 2 makes the propagator an exact isometry
  double p = 2.0;
  std::size_t N = 256;
  std::vector<double> times = {1.0, 2.0, 4.0, 8.0, 16.0, 32.0};
  std::size_t count = 20;
};

struct QuotientBlock {
  std::vector<double> exponents = {1.0, 1.5, 3.0};
  std::size_t N = 256;
  std::size_t count = 50;
};

struct EstimatesBlock {
  std::vector<std::size_t> resolutions = {256, 512, 1024};
  std::size_t count = 40;
  double decay = 3.5;
  double amplitude = 1.0;
  double band_limit = 0.0;
  std::vector<std::pair<double, double>> grid = default_estimate_grid();
  GrowthBlock growth;
  QuotientBlock quotients;
};

struct SolitonBlock {
  double delta1 = 1.0;
  double x0 = 0.0;
};

struct RunConfig {
  Command command = Command::simulate;
  std::uint64_t seed = 0;
  std::string out = "out";
  unsigned jobs = 1;  // CLI-only worker bound; trials execute sequentially
  double L = 64.0 * pi;
  std::size_t N = 1024;
  ModelParams params = hamiltonian_params();
  InitialSpec initial;
  SimulateBlock simulate;
  PicardBlock picard;
  SplitBlock split;
  EstimatesBlock estimates;
  std::vector<NormSpec> norm_specs = {modulation_spec(1.5, 2.0)};
  SolitonBlock soliton;
  std::uint64_t inputs_hash = 0;   // FNV-1a of the config file bytes
  nlohmann::json resolved;         // config as understood, defaults filled
};

namespace detail {

inline std::string join_path(const std::string& path, const char* key) {
  return path.empty() ? std::string(key) : path + "." + key;
}

inline void require_object(const nlohmann::json& v, const std::string& path) {
  if (!v.is_object()) throw validation_error(path, "a JSON object");
}

inline double as_number(const nlohmann::json& v, const std::string& path) {
  if (!v.is_number()) throw validation_error(path, "a numeric value");
  return v.get<double>();
}

inline double number_or(const nlohmann::json& obj, const char* key, const std::string& path,
                        double fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  return as_number(*it, join_path(path, key));
}

inline std::size_t count_or(const nlohmann::json& obj, const char* key, const std::string& path,
                            std::size_t fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  const std::string where = join_path(path, key);
  if (!it->is_number_integer() || it->get<long long>() < 0)
    throw validation_error(where, "a nonnegative integer");
  return it->get<std::size_t>();
}

inline bool bool_or(const nlohmann::json& obj, const char* key, const std::string& path,
                    bool fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_boolean()) throw validation_error(join_path(path, key), "a boolean");
  return it->get<bool>();
}

inline std::string string_or(const nlohmann::json& obj, const char* key, const std::string& path,
                             const std::string& fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_string()) throw validation_error(join_path(path, key), "a string");
  return it->get<std::string>();
}

inline std::vector<double> number_list_or(const nlohmann::json& obj, const char* key,
                                          const std::string& path,
                                          std::vector<double> fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  const std::string where = join_path(path, key);
  if (!it->is_array() || it->empty()) throw validation_error(where, "a nonempty array");
  std::vector<double> out;
  for (std::size_t i = 0; i < it->size(); ++i)
    out.push_back(as_number((*it)[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline WindowKind parse_window(const std::string& name, const std::string& path) {
  if (name == "raised_cosine") return WindowKind::raised_cosine;
  if (name == "smoothstep") return WindowKind::smoothstep;
  throw validation_error(path, "one of raised_cosine, smoothstep");
}

inline NormSpec parse_norm_spec(const nlohmann::json& v, const std::string& path) {
  require_object(v, path);
  NormSpec spec;
  const std::string space = string_or(v, "space", path, "modulation");
  if (space == "modulation")
    spec.space = SpaceKind::Modulation;
  else if (space == "sobolev")
    spec.space = SpaceKind::SobolevLp;
  else if (space == "fourier")
    spec.space = SpaceKind::FourierLebesgue;
  else
    throw validation_error(path + ".space", "one of modulation, sobolev, fourier");
  auto it = v.find("s");
  if (it == v.end()) throw validation_error(path + ".s", "a regularity exponent");
  spec.s = as_number(*it, path + ".s");
  spec.p = number_or(v, "p", path, 2.0);
  spec.r = number_or(v, "r", path, 2.0);
  if (!(spec.p >= 1.0)) throw validation_error(path + ".p", "p >= 1");
  if (spec.space == SpaceKind::Modulation && !(spec.r >= 1.0))
    throw validation_error(path + ".r", "r >= 1");
  if (auto w = v.find("window"); w != v.end())
    spec.window = parse_window(string_or(v, "window", path, ""), path + ".window");
  return spec;
}

inline std::vector<NormSpec> parse_norm_list(const nlohmann::json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) throw validation_error(path, "a nonempty array of norm specs");
  std::vector<NormSpec> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(parse_norm_spec(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline ModelParams parse_params(const nlohmann::json& v) {
  require_object(v, "params");
  const std::string kind = string_or(v, "kind", "params", "hamiltonian");
  if (kind == "hamiltonian") {
    return hamiltonian_params(number_or(v, "delta1", "params", 1.0));
  }
  if (kind == "family") {
    auto g1 = v.find("gamma1");
    if (g1 == v.end()) throw validation_error("params.gamma1", "a coefficient value");
    return derive_params(as_number(*g1, "params.gamma1"),
                         number_or(v, "delta1", "params", 1.0));
  }
  if (kind == "free") {
    const char* needed[] = {"gamma1", "gamma2", "delta1", "delta2", "gamma"};
    double got[5];
    for (int i = 0; i < 5; ++i) {
      auto it = v.find(needed[i]);
      if (it == v.end())
        throw validation_error(std::string("params.") + needed[i], "a coefficient value");
      got[i] = as_number(*it, std::string("params.") + needed[i]);
    }
    return free_params(got[0], got[1], got[2], got[3], got[4]);
  }
  throw validation_error("params.kind", "one of hamiltonian, family, free");
}

inline void check_known_keys(const nlohmann::json& root) {
  static const char* known[] = {"command", "seed",   "out",       "grid",  "params",
                                "initial", "simulate", "picard",  "split", "estimates",
                                "norms",   "soliton"};
  for (auto it = root.begin(); it != root.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok)
      throw validation_error(it.key(),
                             "a recognized top-level key (command, seed, out, grid, params, "
                             "initial, simulate, picard, split, estimates, norms, soliton)");
  }
}

inline InitialSpec parse_initial(const nlohmann::json& v) {
  require_object(v, "initial");
  InitialSpec init;
  init.type = string_or(v, "type", "initial", "gaussian");
  if (init.type != "gaussian" && init.type != "tones" && init.type != "sech2" &&
      init.type != "file")
    throw validation_error("initial.type", "one of gaussian, tones, sech2, file");
  init.amplitude = number_or(v, "amplitude", "initial", init.amplitude);
  init.width = number_or(v, "width", "initial", init.width);
  init.scale = number_or(v, "scale", "initial", init.scale);
  init.center = number_or(v, "center", "initial", init.center);
  if (init.type == "gaussian" && !(init.width > 0.0))
    throw validation_error("initial.width", "width > 0");
  if (init.type == "sech2" && !(init.scale > 0.0))
    throw validation_error("initial.scale", "scale > 0");
  if (init.type == "tones") {
    auto it = v.find("tones");
    if (it == v.end() || !it->is_array() || it->empty())
      throw validation_error("initial.tones", "a nonempty array of {k, re, im}");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string where = "initial.tones[" + std::to_string(i) + "]";
      require_object((*it)[i], where);
      ToneSpec tone;
      auto kk = (*it)[i].find("k");
      if (kk == (*it)[i].end() || !kk->is_number_integer())
        throw validation_error(where + ".k", "an integer mode index");
      tone.k = kk->get<long>();
      if (tone.k < 0) throw validation_error(where + ".k", "k >= 0");
      tone.re = number_or((*it)[i], "re", where, 0.0);
      tone.im = number_or((*it)[i], "im", where, 0.0);
      if (tone.k == 0 && tone.im != 0.0)
        throw validation_error(where + ".im", "im = 0 for the mean mode");
      init.tones.push_back(tone);
    }
  }
  if (init.type == "file") {
    init.path = string_or(v, "path", "initial", "");
    if (init.path.empty()) throw validation_error("initial.path", "a sample file path");
  }
  return init;
}

inline std::vector<std::pair<double, double>> parse_sp_grid(const nlohmann::json& v,
                                                            const std::string& path) {
  if (!v.is_array() || v.empty())
    throw validation_error(path, "a nonempty array of {s, p} cells");
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string where = path + "[" + std::to_string(i) + "]";
    require_object(v[i], where);
    const double s = number_or(v[i], "s", where, 0.0);
    const double p = number_or(v[i], "p", where, 2.0);
    if (!(p >= 1.0)) throw validation_error(where + ".p", "p >= 1");
    out.emplace_back(s, p);
  }
  return out;
}

inline std::vector<std::size_t> parse_resolution_list(const nlohmann::json& v,
                                                      const std::string& path) {
  if (!v.is_array() || v.empty()) throw validation_error(path, "a nonempty array of grid sizes");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string where = path + "[" + std::to_string(i) + "]";
    if (!v[i].is_number_integer() || v[i].get<long long>() < 8)
      throw validation_error(where, "a power of two with N >= 8");
    const std::size_t n = v[i].get<std::size_t>();
    if (!is_power_of_two(n)) throw validation_error(where, "a power of two with N >= 8");
    out.push_back(n);
  }
  return out;
}

}  // namespace detail

inline nlohmann::json norm_spec_to_json(const NormSpec& spec) {
  nlohmann::json v;
  switch (spec.space) {
    case SpaceKind::Modulation: v["space"] = "modulation"; break;
    case SpaceKind::SobolevLp: v["space"] = "sobolev"; break;
    case SpaceKind::FourierLebesgue: v["space"] = "fourier"; break;
  }
  v["s"] = spec.s;
  v["p"] = spec.p;
  v["r"] = spec.r;
  v["window"] = spec.window == WindowKind::raised_cosine ? "raised_cosine" : "smoothstep";
  return v;
}

// Serialization of the config as understood: defaults are materialized, the
// model coefficients are normalized to the five-value form, and only the
// active command's block is kept. Feeding this object back through
// load_config reproduces the identical RunConfig, which is what makes a
// manifest re-run byte-for-byte reproducible.
inline nlohmann::json config_to_json(const RunConfig& cfg) {
  nlohmann::json root;
  root["command"] = command_name(cfg.command);
  root["seed"] = cfg.seed;
  root["out"] = cfg.out;
  root["grid"] = {{"L", cfg.L}, {"N", cfg.N}};
  root["params"] = {{"kind", "free"},       {"gamma1", cfg.params.gamma1},
                    {"gamma2", cfg.params.gamma2}, {"delta1", cfg.params.delta1},
                    {"delta2", cfg.params.delta2}, {"gamma", cfg.params.gamma}};

  nlohmann::json init;
  init["type"] = cfg.initial.type;
  if (cfg.initial.type == "gaussian") {
    init["amplitude"] = cfg.initial.amplitude;
    init["width"] = cfg.initial.width;
    init["center"] = cfg.initial.center;
  } else if (cfg.initial.type == "sech2") {
    init["amplitude"] = cfg.initial.amplitude;
    init["scale"] = cfg.initial.scale;
    init["center"] = cfg.initial.center;
  } else if (cfg.initial.type == "tones") {
    nlohmann::json tones = nlohmann::json::array();
    for (const ToneSpec& tone : cfg.initial.tones)
      tones.push_back({{"k", tone.k}, {"re", tone.re}, {"im", tone.im}});
    init["tones"] = tones;
  } else {
    init["path"] = cfg.initial.path;
  }
  root["initial"] = init;

  switch (cfg.command) {
    case Command::simulate: {
      nlohmann::json b;
      b["dt"] = cfg.simulate.dt;
      b["t_end"] = cfg.simulate.t_end;
      b["dealias"] = cfg.simulate.dealias;
      b["record_every"] = cfg.simulate.record_every;
      b["blowup_linf"] = cfg.simulate.blowup_linf;
      nlohmann::json norms = nlohmann::json::array();
      for (const NormSpec& spec : cfg.simulate.norms) norms.push_back(norm_spec_to_json(spec));
      b["norms"] = norms;
      root["simulate"] = b;
      break;
    }
    case Command::picard: {
      nlohmann::json b;
      b["T"] = cfg.picard.T;
      b["strength_cs"] = cfg.picard.strength_cs;
      b["nodes"] = cfg.picard.nodes;
      b["tol"] = cfg.picard.tol;
      b["max_iter"] = cfg.picard.max_iter;
      b["norm"] = norm_spec_to_json(cfg.picard.norm);
      b["rescale_to"] = cfg.picard.rescale_to;
      root["picard"] = b;
      break;
    }
    case Command::global_split: {
      nlohmann::json b;
      b["s"] = cfg.split.s;
      b["p"] = cfg.split.p;
      b["n_cut"] = cfg.split.n_cut;
      b["t0"] = cfg.split.t0;
      b["t0_constant"] = cfg.split.t0_constant;
      b["legs"] = cfg.split.legs;
      b["dt"] = cfg.split.dt;
      b["dealias"] = cfg.split.dealias;
      b["record_every"] = cfg.split.record_every;
      root["split"] = b;
      break;
    }
    case Command::norms: {
      nlohmann::json norms = nlohmann::json::array();
      for (const NormSpec& spec : cfg.norm_specs) norms.push_back(norm_spec_to_json(spec));
      root["norms"] = norms;
      break;
    }
    case Command::verify_estimates: {
      nlohmann::json b;
      b["resolutions"] = cfg.estimates.resolutions;
      b["count"] = cfg.estimates.count;
      b["decay"] = cfg.estimates.decay;
      b["amplitude"] = cfg.estimates.amplitude;
      b["band_limit"] = cfg.estimates.band_limit;
      nlohmann::json cells = nlohmann::json::array();
      for (const auto& [s, p] : cfg.estimates.grid) cells.push_back({{"s", s}, {"p", p}});
      b["grid"] = cells;
      b["growth"] = {{"s", cfg.estimates.growth.s},         {"r", cfg.estimates.growth.r},
                     {"p", cfg.estimates.growth.p},         {"N", cfg.estimates.growth.N},
                     {"times", cfg.estimates.growth.times}, {"count", cfg.estimates.growth.count}};
      b["quotients"] = {{"exponents", cfg.estimates.quotients.exponents},
                        {"N", cfg.estimates.quotients.N},
                        {"count", cfg.estimates.quotients.count}};
      root["estimates"] = b;
      break;
    }
    case Command::soliton: {
      root["soliton"] = {{"delta1", cfg.soliton.delta1}, {"x0", cfg.soliton.x0}};
      break;
    }
  }
  return root;
}

// Reads and validates a run configuration. The file may be a plain config
// or a manifest from an earlier run (recognized by its config/inputs_hash
// pair), in which case the embedded resolved config is loaded, so a rerun
// reproduces the original artifacts. cli_command is the subcommand named on
// the command line; it fills in a missing "command" key and must agree with
// one that is present.
inline RunConfig load_config(const std::string& path, const std::string& cli_command = "") {
  std::string raw = read_text_file(path);
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(raw);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error("load_config: " + path + ": " + e.what());
  }
  if (!root.is_object()) throw validation_error("config", "a JSON object");
  if (root.contains("config") && root.contains("inputs_hash")) {
    root = root.at("config");
    if (!root.is_object()) throw validation_error("config", "a JSON object");
  }
  detail::check_known_keys(root);

  RunConfig cfg;
  const std::string file_command = detail::string_or(root, "command", "", "");
  if (file_command.empty() && cli_command.empty())
    throw validation_error("command", command_list);
  if (!file_command.empty() && !cli_command.empty() && file_command != cli_command)
    throw validation_error("command", "the configured command to match the CLI subcommand '" +
                                          cli_command + "'");
  cfg.command = parse_command(file_command.empty() ? cli_command : file_command);

  if (auto it = root.find("seed"); it != root.end()) {
    if (!it->is_number_integer() || it->get<long long>() < 0)
      throw validation_error("seed", "a nonnegative integer");
    cfg.seed = it->get<std::uint64_t>();
  }
  cfg.out = detail::string_or(root, "out", "", cfg.out);

  if (auto it = root.find("grid"); it != root.end()) {
    detail::require_object(*it, "grid");
    cfg.L = detail::number_or(*it, "L", "grid", cfg.L);
    if (!(cfg.L > 0.0)) throw validation_error("grid.L", "L > 0");
    auto nn = it->find("N");
    if (nn != it->end()) {
      if (!nn->is_number_integer() || nn->get<long long>() < 8 ||
          !is_power_of_two(nn->get<std::size_t>()))
        throw validation_error("grid.N", "a power of two with N >= 8");
      cfg.N = nn->get<std::size_t>();
    }
  }

  if (auto it = root.find("params"); it != root.end()) cfg.params = detail::parse_params(*it);
  if (auto it = root.find("initial"); it != root.end()) cfg.initial = detail::parse_initial(*it);

  if (auto it = root.find("simulate"); it != root.end()) {
    detail::require_object(*it, "simulate");
    SimulateBlock& b = cfg.simulate;
    b.dt = detail::number_or(*it, "dt", "simulate", b.dt);
    b.t_end = detail::number_or(*it, "t_end", "simulate", b.t_end);
    b.dealias = detail::bool_or(*it, "dealias", "simulate", b.dealias);
    b.record_every = detail::count_or(*it, "record_every", "simulate", b.record_every);
    b.blowup_linf = detail::number_or(*it, "blowup_linf", "simulate", b.blowup_linf);
    if (!(b.dt > 0.0)) throw validation_error("simulate.dt", "dt > 0");
    if (!(b.t_end > 0.0)) throw validation_error("simulate.t_end", "t_end > 0");
    if (!(b.blowup_linf > 0.0)) throw validation_error("simulate.blowup_linf", "blowup_linf > 0");
    if (auto nv = it->find("norms"); nv != it->end())
      b.norms = detail::parse_norm_list(*nv, "simulate.norms");
  }

  if (auto it = root.find("picard"); it != root.end()) {
    detail::require_object(*it, "picard");
    PicardBlock& b = cfg.picard;
    b.T = detail::number_or(*it, "T", "picard", b.T);
    b.strength_cs = detail::number_or(*it, "strength_cs", "picard", b.strength_cs);
    b.nodes = detail::count_or(*it, "nodes", "picard", b.nodes);
    b.tol = detail::number_or(*it, "tol", "picard", b.tol);
    b.max_iter = detail::count_or(*it, "max_iter", "picard", b.max_iter);
    b.rescale_to = detail::number_or(*it, "rescale_to", "picard", b.rescale_to);
    if (b.T < 0.0) throw validation_error("picard.T", "T >= 0");
    if (!(b.strength_cs > 0.0)) throw validation_error("picard.strength_cs", "strength_cs > 0");
    if (b.nodes < 4) throw validation_error("picard.nodes", "nodes >= 4");
    if (!(b.tol > 0.0)) throw validation_error("picard.tol", "tol > 0");
    if (b.max_iter < 1) throw validation_error("picard.max_iter", "max_iter >= 1");
    if (b.rescale_to < 0.0) throw validation_error("picard.rescale_to", "rescale_to >= 0");
    if (auto nv = it->find("norm"); nv != it->end())
      b.norm = detail::parse_norm_spec(*nv, "picard.norm");
  }

  if (auto it = root.find("split"); it != root.end()) {
    detail::require_object(*it, "split");
    SplitBlock& b = cfg.split;
    b.s = detail::number_or(*it, "s", "split", b.s);
    b.p = detail::number_or(*it, "p", "split", b.p);
    b.n_cut = detail::number_or(*it, "n_cut", "split", b.n_cut);
    b.t0 = detail::number_or(*it, "t0", "split", b.t0);
    b.t0_constant = detail::number_or(*it, "t0_constant", "split", b.t0_constant);
    b.legs = detail::count_or(*it, "legs", "split", b.legs);
    b.dt = detail::number_or(*it, "dt", "split", b.dt);
    b.dealias = detail::bool_or(*it, "dealias", "split", b.dealias);
    b.record_every = detail::count_or(*it, "record_every", "split", b.record_every);
    if (!(b.s > 0.0)) throw validation_error("split.s", "s > 0");
    if (!(b.p >= 1.0)) throw validation_error("split.p", "p >= 1");
    if (b.n_cut < 0.0) throw validation_error("split.n_cut", "n_cut >= 0");
    if (b.legs < 1) throw validation_error("split.legs", "legs >= 1");
    if (!(b.dt > 0.0)) throw validation_error("split.dt", "dt > 0");
  }

  if (auto it = root.find("estimates"); it != root.end()) {
    detail::require_object(*it, "estimates");
    EstimatesBlock& b = cfg.estimates;
    if (auto rv = it->find("resolutions"); rv != it->end())
      b.resolutions = detail::parse_resolution_list(*rv, "estimates.resolutions");
    b.count = detail::count_or(*it, "count", "estimates", b.count);
    if (b.count < 1) throw validation_error("estimates.count", "count >= 1");
    b.decay = detail::number_or(*it, "decay", "estimates", b.decay);
    b.amplitude = detail::number_or(*it, "amplitude", "estimates", b.amplitude);
    b.band_limit = detail::number_or(*it, "band_limit", "estimates", b.band_limit);
    if (!(b.decay > 0.5)) throw validation_error("estimates.decay", "decay > 0.5");
    if (auto gv = it->find("grid"); gv != it->end())
      b.grid = detail::parse_sp_grid(*gv, "estimates.grid");
    if (auto growth = it->find("growth"); growth != it->end()) {
      detail::require_object(*growth, "estimates.growth");
      GrowthBlock& gb = b.growth;
      gb.s = detail::number_or(*growth, "s", "estimates.growth", gb.s);
      gb.r = detail::number_or(*growth, "r", "estimates.growth", gb.r);
      gb.p = detail::number_or(*growth, "p", "estimates.growth", gb.p);
      gb.N = detail::count_or(*growth, "N", "estimates.growth", gb.N);
      gb.count = detail::count_or(*growth, "count", "estimates.growth", gb.count);
      gb.times = detail::number_list_or(*growth, "times", "estimates.growth", gb.times);
      if (!(gb.r >= 1.0)) throw validation_error("estimates.growth.r", "r >= 1");
      if (!(gb.p >= 1.0)) throw validation_error("estimates.growth.p", "p >= 1");
      if (gb.times.size() < 2)
        throw validation_error("estimates.growth.times", "two or more probe times");
    }
    if (auto q = it->find("quotients"); q != it->end()) {
      detail::require_object(*q, "estimates.quotients");
      QuotientBlock& qb = b.quotients;
      qb.exponents = detail::number_list_or(*q, "exponents", "estimates.quotients", qb.exponents);
      qb.N = detail::count_or(*q, "N", "estimates.quotients", qb.N);
      qb.count = detail::count_or(*q, "count", "estimates.quotients", qb.count);
    }
  }

  if (auto it = root.find("norms"); it != root.end())
    cfg.norm_specs = detail::parse_norm_list(*it, "norms");

  if (auto it = root.find("soliton"); it != root.end()) {
    detail::require_object(*it, "soliton");
    cfg.soliton.delta1 = detail::number_or(*it, "delta1", "soliton", cfg.soliton.delta1);
    cfg.soliton.x0 = detail::number_or(*it, "x0", "soliton", cfg.soliton.x0);
    if (!(cfg.soliton.delta1 > 0.0)) throw validation_error("soliton.delta1", "delta1 > 0");
  }

  cfg.inputs_hash = fnv1a(raw);
  cfg.resolved = config_to_json(cfg);
  return cfg;
}

// KDVBBM_SEED env override; value must be a bare unsigned integer.
inline void apply_seed_override(RunConfig& cfg, const char* text) {
  if (text == nullptr || *text == '\0') return;
  errno = 0;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(text, &end, 10);
  if (errno != 0 || end == text || *end != '\0' || text[0] == '-')
    throw validation_error("KDVBBM_SEED", "an unsigned integer");
  cfg.seed = static_cast<std::uint64_t>(value);
  cfg.resolved["seed"] = cfg.seed;
}

// Builds the initial datum on the grid from its description.
inline Field make_initial(const Grid& g, const InitialSpec& init) {
  if (init.type == "gaussian") {
    return sample_function(g, [&](double x) {
      const double u = (x - init.center) / init.width;
      return init.amplitude * std::exp(-u * u);
    });
  }
  if (init.type == "sech2") {
    return sample_function(g, [&](double x) {
      const double c = std::cosh(init.scale * (x - init.center));
      return init.amplitude / (c * c);
    });
  }
  if (init.type == "tones") {
    std::vector<complex> spectrum(g.N, complex(0.0, 0.0));
    for (std::size_t i = 0; i < init.tones.size(); ++i) {
      const ToneSpec& tone = init.tones[i];
      if (tone.k >= static_cast<long>(g.N / 2))
        throw validation_error("initial.tones[" + std::to_string(i) + "].k",
                               "k < N/2 for the configured grid");
      const complex c(tone.re, tone.im);
      if (tone.k == 0) {
        spectrum[0] += c;
      } else {
        spectrum[static_cast<std::size_t>(tone.k)] += c;
        spectrum[g.N - static_cast<std::size_t>(tone.k)] += std::conj(c);
      }
    }
    return field_from_spectrum(g, std::move(spectrum));
  }
  // file: one whitespace-separated real sample per grid node, N in total.
  std::ifstream in(init.path);
  if (!in) throw validation_error("initial.path", "a readable file");
  std::vector<double> samples;
  double v = 0.0;
  while (in >> v) samples.push_back(v);
  if (samples.size() != g.N) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "exactly N = %zu samples (file has %zu)", g.N,
                  samples.size());
    throw validation_error("initial.path", buf);
  }
  std::vector<complex> cs(samples.begin(), samples.end());
  return field_from_samples(g, std::move(cs));
}

}  // namespace kdvbbm
