// Copyright 2026 The bimodal Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli/config.hpp"

#include <array>
#include <fstream>
#include <set>
#include <utility>

namespace bimodal::cli {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<Command, std::string_view>, 6> kCommands{{
    {Command::kEcs, "ecs"},
    {Command::kEvolve, "evolve"},
    {Command::kEntropy, "entropy"},
    {Command::kWigner, "wigner"},
    {Command::kFeasibility, "feasibility"},
    {Command::kValidate, "validate"},
}};

constexpr std::array<std::pair<Model, std::string_view>, 9> kModels{{
    {Model::kExact, "exact"},
    {Model::kExactN, "exact_n"},
    {Model::kDispersive, "dispersive"},
    {Model::kDispersiveN, "dispersive_n"},
    {Model::kNonlinear, "nonlinear"},
    {Model::kBeamSplitter, "bs"},
    {Model::kQbs, "qbs"},
    {Model::kAqbs, "aqbs"},
    {Model::kManyAtomEffective, "many_atom_effective"},
}};

constexpr std::array<std::pair<AtomState, std::string_view>, 4> kAtoms{{
    {AtomState::kGround, "ground"},
    {AtomState::kExcited, "excited"},
    {AtomState::kPlus, "plus"},
    {AtomState::kMinus, "minus"},
}};

template <typename E, std::size_t N>
std::string_view name_of(const std::array<std::pair<E, std::string_view>, N>& table, E value) {
  for (const auto& [e, name] : table) {
    if (e == value) return name;
  }
  return "unknown";
}

template <typename E, std::size_t N>
E value_of(const std::array<std::pair<E, std::string_view>, N>& table, std::string_view name,
           std::string_view what) {
  std::string known;
  for (const auto& [e, n] : table) {
    if (n == name) return e;
    known += (known.empty() ? "" : ", ") + std::string(n);
  }
  throw ConfigError("unknown " + std::string(what) + " '" + std::string(name) + "' (expected one of " +
                    known + ")");
}

void reject_unknown(const json& obj, std::initializer_list<std::string_view> keys, std::string_view where) {
  if (!obj.is_object()) throw ConfigError(std::string(where) + " must be a JSON object");
  const std::set<std::string_view> allowed(keys);
  for (const auto& [k, v] : obj.items()) {
    if (!allowed.contains(k)) throw ConfigError("unknown key '" + k + "' in " + std::string(where));
  }
}

double read_number(const json& v, std::string_view key) {
  if (!v.is_number()) throw ConfigError("'" + std::string(key) + "' must be a number");
  return v.get<double>();
}

int read_int(const json& v, std::string_view key) {
  if (!v.is_number_integer()) throw ConfigError("'" + std::string(key) + "' must be an integer");
  return v.get<int>();
}

double read_frequency(const json& v, std::string_view key, bool angular) {
  if (v.is_string()) return parse_frequency(v.get<std::string>(), angular);
  return read_number(v, key);
}

cplx read_complex(const json& v, std::string_view key) {
  if (v.is_string()) return parse_complex(v.get<std::string>());
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw ConfigError("'" + std::string(key) + "' must be [re, im], a number or a string");
}

std::optional<int> read_cutoff(const json& v, std::string_view key) {
  if (v.is_string()) return parse_n_max(v.get<std::string>());
  const int n = read_int(v, key);
  if (n < 0) throw ConfigError("'" + std::string(key) + "' must be >= 0");
  return n;
}

std::optional<double> read_optional_number(const json& v, std::string_view key) {
  if (v.is_null()) return std::nullopt;
  return read_number(v, key);
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

json optional_json(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

json cutoff_json(const std::optional<int>& n) { return n ? json(*n) : json("auto"); }

}  // namespace

std::string_view to_string(Command c) { return name_of(kCommands, c); }

Command parse_command(std::string_view name) { return value_of(kCommands, name, "command"); }

std::string_view to_string(Model m) { return name_of(kModels, m); }

Model parse_model(std::string_view name) { return value_of(kModels, name, "model"); }

std::string to_string(AtomState s) { return std::string(name_of(kAtoms, s)); }

AtomState parse_atom_state(std::string_view name) { return value_of(kAtoms, name, "atomic state"); }

PhysicalParams RunConfig::params() const {
  PhysicalParams p;
  p.lambda = lambda;
  p.delta = delta;
  p.omega_rabi = omega_rabi;
  p.n_atoms = n_atoms;
  p.epsilon = epsilon;
  return p;
}

void to_json(json& j, const RunConfig& c) {
  j = json{
      {"command", to_string(c.command)},
      {"params",
       {{"lambda", c.lambda},
        {"delta", c.delta},
        {"omega_rabi", c.omega_rabi},
        {"n_atoms", c.n_atoms},
        {"epsilon", optional_json(c.epsilon)}}},
      {"state", {{"alpha", complex_json(c.alpha)}, {"beta", complex_json(c.beta)}, {"atoms", to_string(c.atom_prep)}}},
      {"schedule", {{"r", c.r}, {"s", c.s}}},
      {"time", {{"t_final", optional_json(c.t_final)}, {"points", c.time_points}, {"dt", optional_json(c.dt)}}},
      {"truncation", {{"n_max_a", cutoff_json(c.n_max_a)}, {"n_max_b", cutoff_json(c.n_max_b)}}},
      {"grid",
       {{"q_min", c.grid.q_min},
        {"q_max", c.grid.q_max},
        {"p_min", c.grid.p_min},
        {"p_max", c.grid.p_max},
        {"q_points", c.grid.q_points},
        {"p_points", c.grid.p_points},
        {"threshold", c.packet_threshold}}},
      {"model", to_string(c.model)},
      {"snapshots", c.snapshots},
      {"sweep", c.sweep},
      {"angular", c.angular},
      {"threads", c.threads},
      {"seed", c.seed},
      {"out_dir", c.out_dir.generic_string()},
  };
}

RunConfig config_from_json(const json& j) {
  reject_unknown(j,
                 {"command", "params", "state", "schedule", "time", "truncation", "grid", "model", "snapshots",
                  "sweep", "angular", "threads", "seed", "out_dir"},
                 "config");
  RunConfig c;
  try {
    if (j.contains("angular")) {
      const json& a = j["angular"];
      c.angular = a.is_string() ? parse_bool(a.get<std::string>()) : a.get<bool>();
    }
    if (j.contains("command")) c.command = parse_command(j["command"].get<std::string>());
    if (j.contains("params")) {
      const json& p = j["params"];
      reject_unknown(p, {"lambda", "delta", "omega_rabi", "n_atoms", "epsilon"}, "params");
      if (p.contains("lambda")) c.lambda = read_frequency(p["lambda"], "lambda", c.angular);
      if (p.contains("delta")) c.delta = read_frequency(p["delta"], "delta", c.angular);
      if (p.contains("omega_rabi")) c.omega_rabi = read_frequency(p["omega_rabi"], "omega_rabi", c.angular);
      if (p.contains("n_atoms")) c.n_atoms = read_int(p["n_atoms"], "n_atoms");
      if (p.contains("epsilon")) {
        const json& e = p["epsilon"];
        c.epsilon = e.is_null() ? std::nullopt : std::optional(read_frequency(e, "epsilon", c.angular));
      }
    }
    if (j.contains("state")) {
      const json& s = j["state"];
      reject_unknown(s, {"alpha", "beta", "atoms"}, "state");
      if (s.contains("alpha")) c.alpha = read_complex(s["alpha"], "alpha");
      if (s.contains("beta")) c.beta = read_complex(s["beta"], "beta");
      if (s.contains("atoms")) c.atom_prep = parse_atom_state(s["atoms"].get<std::string>());
    }
    if (j.contains("schedule")) {
      const json& s = j["schedule"];
      reject_unknown(s, {"r", "s"}, "schedule");
      if (s.contains("r")) c.r = read_int(s["r"], "r");
      if (s.contains("s")) c.s = read_int(s["s"], "s");
    }
    if (j.contains("time")) {
      const json& t = j["time"];
      reject_unknown(t, {"t_final", "points", "dt"}, "time");
      if (t.contains("t_final")) c.t_final = read_optional_number(t["t_final"], "t_final");
      if (t.contains("points")) c.time_points = read_int(t["points"], "points");
      if (t.contains("dt")) c.dt = read_optional_number(t["dt"], "dt");
    }
    if (j.contains("truncation")) {
      const json& t = j["truncation"];
      reject_unknown(t, {"n_max_a", "n_max_b"}, "truncation");
      if (t.contains("n_max_a")) c.n_max_a = read_cutoff(t["n_max_a"], "n_max_a");
      if (t.contains("n_max_b")) c.n_max_b = read_cutoff(t["n_max_b"], "n_max_b");
    }
    if (j.contains("grid")) {
      const json& g = j["grid"];
      reject_unknown(g, {"q_min", "q_max", "p_min", "p_max", "q_points", "p_points", "threshold"}, "grid");
      if (g.contains("q_min")) c.grid.q_min = read_number(g["q_min"], "q_min");
      if (g.contains("q_max")) c.grid.q_max = read_number(g["q_max"], "q_max");
      if (g.contains("p_min")) c.grid.p_min = read_number(g["p_min"], "p_min");
      if (g.contains("p_max")) c.grid.p_max = read_number(g["p_max"], "p_max");
      if (g.contains("q_points")) c.grid.q_points = read_int(g["q_points"], "q_points");
      if (g.contains("p_points")) c.grid.p_points = read_int(g["p_points"], "p_points");
      if (g.contains("threshold")) c.packet_threshold = read_number(g["threshold"], "threshold");
    }
    if (j.contains("model")) c.model = parse_model(j["model"].get<std::string>());
    if (j.contains("snapshots")) c.snapshots = j["snapshots"].get<std::vector<int>>();
    if (j.contains("sweep")) c.sweep = j["sweep"].get<std::vector<double>>();
    if (j.contains("threads")) c.threads = read_int(j["threads"], "threads");
    if (j.contains("seed")) c.seed = read_int(j["seed"], "seed");
    if (j.contains("out_dir")) c.out_dir = j["out_dir"].get<std::string>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

void validate(const RunConfig& c) {
  if (c.n_atoms < 0) throw ConfigError("n_atoms must be >= 0");
  if (c.r < 1 || c.s < 1) throw ConfigError("r and s must be positive");
  if (c.t_final && !(*c.t_final > 0.0)) throw ConfigError("time grid is empty: t_final must be > 0");
  if (c.time_points < 2) throw ConfigError("time grid is empty: points must be >= 2");
  if (c.dt && !(*c.dt > 0.0)) throw ConfigError("dt must be > 0");
  if (c.grid.q_points < 1 || c.grid.p_points < 1) throw ConfigError("Wigner grid needs at least one point per axis");
  if (!(c.grid.q_max >= c.grid.q_min) || !(c.grid.p_max >= c.grid.p_min)) {
    throw ConfigError("Wigner grid bounds are reversed");
  }
  if (!(c.packet_threshold > 0.0 && c.packet_threshold < 1.0)) {
    throw ConfigError("packet threshold must lie in (0, 1)");
  }
  if (c.threads < 1) throw ConfigError("threads must be >= 1");
  for (int k : c.snapshots) {
    if (k < 1) throw ConfigError("snapshot divisors must be positive");
  }
  for (double x : c.sweep) {
    if (!(x > 0.0)) throw ConfigError("sweep ratios must be positive");
  }
}

int auto_cutoff(double mean) { return min_cutoff(mean, 1e-8) + 10; }

std::pair<int, int> resolve_cutoffs(const RunConfig& c, double mean_a, double mean_b) {
  return {c.n_max_a.value_or(auto_cutoff(mean_a)), c.n_max_b.value_or(auto_cutoff(mean_b))};
}

}  // namespace bimodal::cli
