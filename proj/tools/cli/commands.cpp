// Copyright 2026 The bimodal Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli/commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "bimodal/version.hpp"
#include "cli/experiments.hpp"

namespace bimodal::cli {

namespace {

constexpr const char* kTimeUnit = "time unit";
constexpr const char* kFreqUnit = "rad/time unit";

Assertion at_most(std::string name, double value, double limit) {
  return {std::move(name), value <= limit, value, limit, ""};
}

Assertion at_least(std::string name, double value, double limit) {
  return {std::move(name), value >= limit, value, limit, ""};
}

Assertion equal_count(std::string name, std::size_t value, int expected) {
  return {std::move(name), static_cast<int>(value) == expected, static_cast<double>(value),
          static_cast<double>(expected), ""};
}

nlohmann::json packets_json(const std::vector<Packet>& packets) {
  nlohmann::json out = nlohmann::json::array();
  for (const Packet& p : packets) out.push_back({{"q", p.q}, {"p", p.p}, {"W", p.value}});
  return out;
}

nlohmann::json regime_json(const RegimeReport& r) {
  nlohmann::json ineq = nlohmann::json::array();
  for (const Inequality& q : r.inequalities) {
    ineq.push_back({{"name", q.name}, {"lhs", q.lhs}, {"rhs", q.rhs}, {"margin", q.margin}, {"pass", q.pass}});
  }
  return {{"stage", std::string(to_string(r.stage))},
          {"n_bar_a", r.n_bar_a},
          {"n_bar_b", r.n_bar_b},
          {"all_pass", r.all_pass()},
          {"inequalities", ineq}};
}

class Writer {
 public:
  Writer(const RunConfig& c, CommandReport& report) : dir_(c.out_dir), report_(report) {}

  void csv(const std::string& name, const CsvTable& table) {
    const std::filesystem::path path = dir_ / name;
    write_atomic(path, table.render());
    report_.files.push_back(path);
  }

 private:
  std::filesystem::path dir_;
  CommandReport& report_;
};

int expected_packets(const RunConfig& c) {
  if (c.alpha == cplx{} && c.beta == cplx{}) return 1;
  return packet_count(c.r, c.s);
}

void cmd_ecs(const RunConfig& c, CommandReport& rep, Writer& w) {
  const EcsOutcome o = run_ecs(c, &rep.diagnostics);
  CsvTable t = wigner_table(o.grid);
  t.meta("r", std::to_string(o.schedule.r));
  t.meta("s", std::to_string(o.schedule.s));
  t.meta("t_g", format_double(o.schedule.t_g));
  w.csv("ecs_wigner.csv", t);

  rep.results = {{"schedule",
                  {{"r", o.schedule.r}, {"s", o.schedule.s}, {"j", o.schedule.j}, {"t_g", o.schedule.t_g},
                   {"mu", o.schedule.mu}}},
                 {"n_max_a", o.n_max_a},
                 {"n_max_b", o.n_max_b},
                 {"packet_count", o.packets.size()},
                 {"expected_packets", expected_packets(c)},
                 {"packets", packets_json(o.packets)},
                 {"normalization", o.normalization},
                 {"linear_entropy_a", o.linear_entropy},
                 {"numeric_fidelity", o.numeric_fidelity},
                 {"consistency",
                  {{"exact_fidelity", o.consistency.exact_fidelity},
                   {"published_fidelity", o.consistency.published_fidelity},
                   {"terms", o.consistency.packets}}}};
  rep.assertions.push_back(equal_count("packet_count", o.packets.size(), expected_packets(c)));
  rep.assertions.push_back(at_least("numeric_fidelity", o.numeric_fidelity, 1.0 - 1e-6));
  rep.assertions.push_back(at_least("decomposition_fidelity", o.consistency.exact_fidelity, 1.0 - 1e-8));
  rep.assertions.push_back(at_most("wigner_normalization_error", std::abs(o.normalization - 1.0), 1e-3));
}

void cmd_wigner(const RunConfig& c, CommandReport& rep, Writer& w) {
  const std::vector<Snapshot> snaps = run_wigner(c, &rep.diagnostics);
  nlohmann::json list = nlohmann::json::array();
  for (const Snapshot& s : snaps) {
    CsvTable t = wigner_table(s.grid);
    t.meta("k", std::to_string(s.k));
    t.meta("t", format_double(s.t));
    w.csv("wigner_k" + std::to_string(s.k) + ".csv", t);
    list.push_back({{"k", s.k},
                    {"t", s.t},
                    {"packet_count", s.packets.size()},
                    {"packets", packets_json(s.packets)},
                    {"normalization", s.normalization}});
    rep.assertions.push_back(at_most("wigner_normalization_error_k" + std::to_string(s.k),
                                     std::abs(s.normalization - 1.0), 1e-3));
  }
  rep.results = {{"tau_mu", std::numbers::pi / c.params().mu()}, {"snapshots", list}};
}

void cmd_entropy(const RunConfig& c, CommandReport& rep, Writer& w) {
  const std::vector<EntropySeries> series = run_entropy(c, &rep.diagnostics);
  CsvTable t;
  t.meta("epsilon", format_double(c.params().eps()));
  t.column("t", kTimeUnit, series.front().t);
  nlohmann::json list = nlohmann::json::array();
  const double t1 = series.front().dip_time();
  for (const EntropySeries& s : series) {
    const std::string tag = "N" + std::to_string(s.n_atoms);
    t.column("xi_" + tag, "1", s.xi);
    const double tn = s.dip_time();
    nlohmann::json item{{"n_atoms", s.n_atoms},
                        {"xi0", s.xi.front()},
                        {"norm_drift", s.norm_drift},
                        {"dip_found", s.dip.has_value()}};
    if (s.dip) {
      item["dip_time"] = tn;
      item["dip_xi"] = s.xi[*s.dip];
      item["dip_time_times_n"] = tn * s.n_atoms;
    }
    list.push_back(item);

    rep.assertions.push_back(at_most("xi0_" + tag, s.xi.front(), 1e-6));
    rep.assertions.push_back(at_most("norm_drift_" + tag, s.norm_drift, 1e-6));
    rep.assertions.push_back({"dip_found_" + tag, s.dip.has_value(), s.dip ? 1.0 : 0.0, 1.0, ""});
    if (s.n_atoms > 1) {
      const double dev = std::abs(tn * s.n_atoms - t1) / t1;
      Assertion a = at_most("scaling_" + tag, dev, 0.15);
      if (!std::isfinite(dev)) a.pass = false;
      rep.assertions.push_back(a);
    }
  }
  w.csv("entropy.csv", t);
  rep.results = {{"mu", c.params().mu()}, {"pi_over_mu", std::numbers::pi / c.params().mu()}, {"series", list}};
}

void cmd_validate(const RunConfig& c, CommandReport& rep, Writer& w) {
  const ValidateOutcome o = run_validate(c, &rep.diagnostics);
  CsvTable curves;
  curves.column("t", kTimeUnit, o.curves.front().t);
  nlohmann::json summary = nlohmann::json::object();
  double first_min = 1.0;
  for (const FidelityCurve& f : o.curves) {
    curves.column(f.name, "1", f.fidelity);
    first_min = std::min(first_min, f.fidelity.front());
    summary[f.name] = {{"min", *std::min_element(f.fidelity.begin(), f.fidelity.end())},
                       {"final", f.fidelity.back()}};
  }
  w.csv("validate_fidelity.csv", curves);

  CsvTable sweep;
  sweep.meta("t_final", format_double(o.sweep_time));
  std::vector<double> cols[6];
  nlohmann::json points = nlohmann::json::array();
  for (const SweepPoint& s : o.sweep) {
    cols[0].push_back(s.ratio);
    cols[1].push_back(s.lambda);
    cols[2].push_back(s.delta);
    cols[3].push_back(s.omega_rabi);
    cols[4].push_back(s.mu);
    cols[5].push_back(s.deficit);
    points.push_back({{"delta_over_lambda", s.ratio}, {"omega_rabi", s.omega_rabi}, {"mu", s.mu},
                      {"deficit", s.deficit}});
  }
  sweep.column("delta_over_lambda", "1", cols[0]);
  sweep.column("lambda", kFreqUnit, cols[1]);
  sweep.column("delta", kFreqUnit, cols[2]);
  sweep.column("omega_rabi", kFreqUnit, cols[3]);
  sweep.column("mu", kFreqUnit, cols[4]);
  sweep.column("deficit", "1", cols[5]);
  w.csv("validate_sweep.csv", sweep);

  nlohmann::json regimes = nlohmann::json::array();
  for (const RegimeReport& r : o.regimes) regimes.push_back(regime_json(r));
  rep.results = {{"curves", summary},
                 {"sweep", points},
                 {"sweep_time", o.sweep_time},
                 {"qbs_aqbs_difference", o.qbs_aqbs_difference},
                 {"regimes", regimes}};
  rep.assertions.push_back(at_most("initial_fidelity_error", 1.0 - first_min, 1e-12));
  rep.assertions.push_back(at_most("qbs_aqbs_difference", o.qbs_aqbs_difference, 1e-12));
  rep.assertions.push_back({"sweep_deficit_decreasing", o.sweep_decreasing, o.sweep_decreasing ? 1.0 : 0.0, 1.0,
                            "terminal deficit must fall strictly as delta/lambda grows"});
}

void cmd_evolve(const RunConfig& c, CommandReport& rep, Writer& w) {
  const EvolveOutcome o = run_evolve(c, &rep.diagnostics);
  CsvTable t;
  t.meta("model", std::string(to_string(c.model)));
  t.column("t", kTimeUnit, o.t);
  t.column("norm", "1", o.norm);
  t.column("xi_a", "1", o.xi_a);
  t.column("n_a", "1", o.n_a);
  t.column("n_b", "1", o.n_b);
  w.csv("evolve.csv", t);
  rep.results = {{"model", std::string(to_string(c.model))},
                 {"time_dependent", o.time_dependent},
                 {"norm_drift", o.norm_drift},
                 {"photon_drift", o.photon_drift},
                 {"conserves_photons", o.conserves_photons}};
  rep.assertions.push_back(at_most("norm_drift", o.norm_drift, 1e-6));
  if (o.conserves_photons) rep.assertions.push_back(at_most("photon_drift", o.photon_drift, 1e-10));
}

void cmd_feasibility(const RunConfig& c, CommandReport& rep, Writer& w) {
  const FeasibilityOutcome o = run_feasibility(c);
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<std::string> names;
  std::vector<double> lambda, delta, omega, chi, mu, chi_hz, mu_hz, tau_chi, tau_mu, decay, deco, disp, nl;
  for (const FeasibilityRow& r : o.rows) {
    names.push_back(r.name);
    lambda.push_back(r.lambda);
    delta.push_back(r.delta);
    omega.push_back(r.omega_rabi);
    chi.push_back(r.chi);
    mu.push_back(r.mu);
    chi_hz.push_back(r.chi / two_pi);
    mu_hz.push_back(r.mu / two_pi);
    tau_chi.push_back(r.tau_chi);
    tau_mu.push_back(r.tau_mu);
    decay.push_back(r.atomic_decay);
    deco.push_back(r.cavity_decoherence);
    disp.push_back(r.dispersive_ok ? 1.0 : 0.0);
    nl.push_back(r.nonlinear_ok ? 1.0 : 0.0);
  }
  CsvTable t;
  t.meta("n_bar_a", format_double(std::norm(c.alpha)));
  t.meta("n_bar_b", format_double(std::norm(c.beta)));
  t.labels("setup", names);
  t.column("lambda", "rad/s", lambda);
  t.column("delta", "rad/s", delta);
  t.column("omega_rabi", "rad/s", omega);
  t.column("chi", "rad/s", chi);
  t.column("mu", "rad/s", mu);
  t.column("chi_over_2pi", "Hz", chi_hz);
  t.column("mu_over_2pi", "Hz", mu_hz);
  t.column("tau_chi", "s", tau_chi);
  t.column("tau_mu", "s", tau_mu);
  const std::size_t n_gen = o.rows.empty() ? 0 : o.rows.front().t_g.size();
  for (std::size_t g = 0; g < n_gen; ++g) {
    std::vector<double> col;
    for (const FeasibilityRow& r : o.rows) col.push_back(r.t_g[g].t_g);
    const GenerationTime& head = o.rows.front().t_g[g];
    t.column("t_g_" + std::to_string(head.r) + "_" + std::to_string(head.s), "s", col);
  }
  t.column("atomic_decay", "s", decay);
  t.column("cavity_decoherence", "s", deco);
  t.column("dispersive_ok", "1", disp);
  t.column("nonlinear_ok", "1", nl);
  w.csv("feasibility.csv", t);

  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t k = 0; k < o.rows.size(); ++k) {
    const FeasibilityRow& r = o.rows[k];
    nlohmann::json tg = nlohmann::json::array();
    for (const GenerationTime& g : r.t_g) tg.push_back({{"r", g.r}, {"s", g.s}, {"t_g", g.t_g}});
    nlohmann::json reg = nlohmann::json::array();
    for (const RegimeReport& rr : o.regimes[k]) reg.push_back(regime_json(rr));
    rows.push_back({{"setup", r.name},
                    {"chi", r.chi},
                    {"mu", r.mu},
                    {"chi_over_2pi", r.chi / two_pi},
                    {"mu_over_2pi", r.mu / two_pi},
                    {"tau_chi", r.tau_chi},
                    {"tau_mu", r.tau_mu},
                    {"t_g", tg},
                    {"regimes", reg}});
    const bool finite = std::isfinite(r.chi) && std::isfinite(r.mu) && r.mu > 0.0;
    rep.assertions.push_back({"finite_rates_" + r.name, finite, finite ? 1.0 : 0.0, 1.0, ""});
  }
  rep.results = {{"rows", rows}};
}

}  // namespace

bool CommandReport::passed() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.pass; });
}

nlohmann::json CommandReport::to_json(const RunConfig& c) const {
  nlohmann::json checks = nlohmann::json::array();
  for (const Assertion& a : assertions) checks.push_back(cli::to_json(a));
  nlohmann::json config;
  cli::to_json(config, c);
  nlohmann::json written = nlohmann::json::array();
  for (const auto& f : files) written.push_back(f.filename().string());
  return {{"version", kVersion},
          {"command", std::string(cli::to_string(command))},
          {"pass", passed()},
          {"config", config},
          {"assertions", checks},
          {"warnings", warnings_json(diagnostics)},
          {"files", written},
          {"results", results}};
}

CommandReport execute(const RunConfig& c) {
  CommandReport rep;
  rep.command = c.command;
  Writer w(c, rep);
  switch (c.command) {
    case Command::kEcs:
      cmd_ecs(c, rep, w);
      break;
    case Command::kWigner:
      cmd_wigner(c, rep, w);
      break;
    case Command::kEntropy:
      cmd_entropy(c, rep, w);
      break;
    case Command::kValidate:
      cmd_validate(c, rep, w);
      break;
    case Command::kEvolve:
      cmd_evolve(c, rep, w);
      break;
    case Command::kFeasibility:
      cmd_feasibility(c, rep, w);
      break;
  }
  const std::filesystem::path report = c.out_dir / (std::string(to_string(c.command)) + ".json");
  rep.files.push_back(report);
  write_atomic(report, rep.to_json(c).dump(2) + "\n");
  return rep;
}

namespace {

struct Flags {
  std::string config;
  std::optional<std::string> out, n_max, alpha, beta, angular, atom_state, model;
  std::optional<std::string> lambda, delta, omega, epsilon;
  std::optional<int> r, s, atoms, threads, seed, points;
  std::optional<double> t_final, dt;
};

void add_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON config file")->check(CLI::ExistingFile);
  sub->add_option("--out", f.out, "output directory");
  sub->add_option("--n-max", f.n_max, "photon cutoff per mode, INT or auto");
  sub->add_option("--alpha", f.alpha, "mode-A amplitude, e.g. 3, 1+2i, (1,2)");
  sub->add_option("--beta", f.beta, "mode-B amplitude");
  sub->add_option("--r", f.r, "schedule numerator");
  sub->add_option("--s", f.s, "schedule denominator");
  sub->add_option("--atoms", f.atoms, "number of atoms");
  sub->add_option("--atom-state", f.atom_state, "ground, excited, plus or minus");
  sub->add_option("--threads", f.threads, "worker threads for Wigner grids");
  sub->add_option("--seed", f.seed, "reserved");
  sub->add_option("--angular", f.angular, "treat Hz literals as angular (true/false)");
  sub->add_option("--lambda", f.lambda, "coupling, number or literal such as 2pi*47kHz");
  sub->add_option("--delta", f.delta, "detuning");
  sub->add_option("--omega", f.omega, "drive Rabi frequency");
  sub->add_option("--epsilon", f.epsilon, "N-atom level shift");
  sub->add_option("--t-final", f.t_final, "final time");
  sub->add_option("--points", f.points, "samples on the time grid");
  sub->add_option("--dt", f.dt, "RK4 step");
  sub->add_option("--model", f.model, "evolve model");
}

RunConfig build_config(Command cmd, const Flags& f) {
  RunConfig c = f.config.empty() ? RunConfig{} : load_config(f.config);
  c.command = cmd;
  if (f.angular) c.angular = parse_bool(*f.angular);
  if (f.out) c.out_dir = *f.out;
  if (f.n_max) c.n_max_a = c.n_max_b = parse_n_max(*f.n_max);
  if (f.alpha) c.alpha = parse_complex(*f.alpha);
  if (f.beta) c.beta = parse_complex(*f.beta);
  if (f.r) c.r = *f.r;
  if (f.s) c.s = *f.s;
  if (f.atoms) c.n_atoms = *f.atoms;
  if (f.atom_state) c.atom_prep = parse_atom_state(*f.atom_state);
  if (f.threads) c.threads = *f.threads;
  if (f.seed) c.seed = *f.seed;
  if (f.lambda) c.lambda = parse_frequency(*f.lambda, c.angular);
  if (f.delta) c.delta = parse_frequency(*f.delta, c.angular);
  if (f.omega) c.omega_rabi = parse_frequency(*f.omega, c.angular);
  if (f.epsilon) c.epsilon = parse_frequency(*f.epsilon, c.angular);
  if (f.t_final) c.t_final = *f.t_final;
  if (f.points) c.time_points = *f.points;
  if (f.dt) c.dt = *f.dt;
  if (f.model) c.model = parse_model(*f.model);
  validate(c);
  return c;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Driven bimodal-cavity simulator", "bimodal"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  Flags flags;
  const std::pair<Command, const char*> subs[] = {
      {Command::kEcs, "entangled coherent state and its mode-A Wigner grid"},
      {Command::kEvolve, "trajectory of one model"},
      {Command::kEntropy, "mode-A linear entropy for N = 1..atoms"},
      {Command::kWigner, "Wigner snapshots at tau_mu / k"},
      {Command::kFeasibility, "rates and times for the experimental presets"},
      {Command::kValidate, "fidelity of each effective model against the exact dynamics"},
  };
  for (const auto& [cmd, help] : subs) add_flags(app.add_subcommand(std::string(to_string(cmd)), help), flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitConfig;
  }

  try {
    Command cmd = Command::kEcs;
    for (const auto& [c, help] : subs) {
      if (app.got_subcommand(std::string(to_string(c)))) cmd = c;
    }
    const RunConfig config = build_config(cmd, flags);
    const CommandReport rep = execute(config);
    for (const Assertion& a : rep.assertions) {
      out << (a.pass ? "PASS " : "FAIL ") << a.name << " value=" << format_double(a.value)
          << " limit=" << format_double(a.limit) << '\n';
    }
    for (const Warning& wn : rep.diagnostics.warnings()) out << "warning: " << wn.message << '\n';
    for (const auto& f : rep.files) out << "wrote " << f.string() << '\n';
    return rep.passed() ? kExitPass : kExitAssertion;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace bimodal::cli
