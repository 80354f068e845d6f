// Command-line front end: one subcommand per experiment, each writing CSVs
// and manifest.json into --out. Exit status: 0 all checks passed, 1 some
// check failed, 2 bad configuration or usage, 3 runtime failure.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fkdv/battery.hpp"
#include "fkdv/config.hpp"
#include "fkdv/errors.hpp"
#include "fkdv/experiments.hpp"
#include "fkdv/norms.hpp"
#include "fkdv/report.hpp"
#include "fkdv/solver.hpp"

namespace {

using fkdv::KeyValues;

// Flags shared by the experiment subcommands, each mapped to a config key.
struct CommonFlags {
  std::string config_path;
  std::string out;
  std::vector<std::string> sets;
  std::map<std::string, std::string> values;
};

void add_common(CLI::App* app, CommonFlags& f, const std::string& default_out) {
  f.out = default_out;
  app->add_option("--config", f.config_path, "Configuration file (key = value lines)")
      ->check(CLI::ExistingFile);
  app->add_option("--out", f.out, "Output directory")->capture_default_str();
  app->add_option("--set", f.sets,
                  "Override any configuration key, as key=value (repeatable)");
  struct Mapped {
    const char* flag;
    const char* key;
    const char* help;
  };
  static const Mapped mapped[] = {
      {"--a", "a", "Dispersion exponent, in (-5/2, -2)"},
      {"--datum", "datum", "gaussian | bump_spectrum | algebraic | custom"},
      {"--amplitude", "datum.amplitude", "Datum amplitude"},
      {"--mu", "solver.mu", "Viscosity, in [0, 1)"},
      {"--T", "solver.T", "Final time (default: largest of --times)"},
      {"--dt", "solver.dt", "Time step; 0 picks min(dx/2, T/256)"},
      {"--scheme", "solver.scheme", "ifrk4 | picard"},
      {"--nonlinear", "solver.nonlinear", "true | false"},
      {"--L0", "ladder.length0", "Box length of the first rung (accepts *pi)"},
      {"--n0", "ladder.n0", "Grid points of the first rung (even)"},
      {"--rungs", "ladder.rungs", "Number of L-doubling rungs"},
      {"--padding", "ladder.padding", "Computational box = padding x rung box"},
      {"--thetas", "thetas", "Comma-separated weight exponents"},
      {"--times", "times", "Comma-separated observation times"},
  };
  for (const Mapped& m : mapped) {
    const std::string key = m.key;
    app->add_option_function<std::string>(
        m.flag, [&f, key](const std::string& v) { f.values[key] = v; }, m.help);
  }
}

KeyValues overrides_of(const CommonFlags& f) {
  KeyValues kv = f.values;
  for (const std::string& s : f.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw fkdv::ParseError("--set expects key=value, got '" + s + "'", 0);
    kv[s.substr(0, eq)] = s.substr(eq + 1);
  }
  return kv;
}

fkdv::RunConfig load(const CommonFlags& f, const KeyValues& defaults) {
  const KeyValues over = overrides_of(f);
  if (f.config_path.empty()) return fkdv::parse_config_text("", ".", over, defaults);
  return fkdv::parse_config(f.config_path, over, defaults);
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

int finish(const fkdv::Report& report, const KeyValues& config,
           std::chrono::steady_clock::time_point start, const std::string& out) {
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const auto m = fkdv::write_report(report, config, secs, out);
  for (const std::string& flag : report.flags) std::cout << "FLAG\t" << flag << "\n";
  int failed = 0;
  for (const fkdv::Check& c : report.checks) {
    std::cout << (c.passed ? "PASS\t" : "FAIL\t") << c.name << "\t" << c.detail << "\n";
    failed += c.passed ? 0 : 1;
  }
  std::cout << "SUMMARY\t" << report.experiment << "\tchecks=" << report.checks.size()
            << "\tfailed=" << failed << "\tresult_hash=" << m.result_hash
            << "\tout=" << out << "\n";
  return failed == 0 ? 0 : 1;
}

void print_series(const fkdv::Report& r) {
  std::cout << "group\tlabel\tt\ttheta\tlast_value\tclassification\n";
  for (const auto& s : r.series)
    std::cout << s.group << "\t" << s.label << "\t" << num(s.t) << "\t" << num(s.theta)
              << "\t" << num(s.values.back()) << "\t" << to_string(s.classification)
              << "\n";
}

fkdv::Report run_evolve(const fkdv::RunConfig& cfg) {
  const fkdv::ExperimentSpec& s = cfg.spec;
  const fkdv::Grid& grid = s.ladder.front();
  fkdv::SolveConfig sc = s.solver;
  sc.output_times = s.times;
  fkdv::Trajectory tr = fkdv::solve(fkdv::make_datum(s.datum, grid), sc);

  fkdv::Report r;
  r.experiment = "evolve";
  r.spec = s;
  fkdv::Table traj{"trajectory", {"t", "mass", "energy", "sup"}, {}};
  fkdv::Table fields{"fields", {"t", "x", "u"}, {}};
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    traj.rows.push_back({tr.times[i], tr.mass[i], tr.energy[i], tr.fields[i].sup_norm()});
    for (std::size_t j = 0; j < grid.size(); ++j)
      fields.rows.push_back({tr.times[i], grid.x(j), tr.fields[i][j]});
  }
  r.tables.push_back(
      {"conservation", {"steps", "dt", "max_mass_drift", "max_energy_drift"},
       {{static_cast<double>(tr.steps), tr.dt, tr.max_mass_drift, tr.max_energy_drift}}});
  r.tables.push_back(std::move(traj));
  r.tables.push_back(std::move(fields));
  std::cout << "conservation\tsteps=" << tr.steps << "\tdt=" << num(tr.dt)
            << "\tmass_drift=" << num(tr.max_mass_drift)
            << "\tenergy_drift=" << num(tr.max_energy_drift) << "\n";
  if (sc.mu == 0.0) {
    r.checks.push_back({"mass drift <= 1e-9", tr.max_mass_drift <= 1e-9,
                        "max relative drift " + num(tr.max_mass_drift)});
    r.checks.push_back({"energy drift <= 1e-6", tr.max_energy_drift <= 1e-6,
                        "max relative drift " + num(tr.max_energy_drift)});
  } else {
    r.flags.push_back("mu > 0: mass and energy dissipate, no conservation checks");
  }
  return r;
}

fkdv::Report run_mu_study(const fkdv::RunConfig& cfg) {
  const fkdv::ExperimentSpec& s = cfg.spec;
  fkdv::SolveConfig sc = s.solver;
  sc.output_times = s.times;
  const auto table = fkdv::mu_continuation(fkdv::make_datum(s.datum, s.ladder.front()),
                                           cfg.mus, sc);
  fkdv::Report r;
  r.experiment = "mu-study";
  r.spec = s;
  fkdv::Table t{"continuation", {"mu", "mu_next", "sup_t_l2_distance"}, {}};
  for (std::size_t i = 0; i < table.distances.size(); ++i) {
    t.rows.push_back({table.mus[i], table.mus[i + 1], table.distances[i]});
    std::cout << "mu=" << num(table.mus[i]) << " vs " << num(table.mus[i + 1])
              << "\tdistance=" << num(table.distances[i]) << "\n";
  }
  r.tables.push_back(std::move(t));
  r.checks.push_back({"distances strictly decreasing", table.strictly_decreasing,
                      std::to_string(table.distances.size()) + " neighbour distances"});
  return r;
}

KeyValues battery_echo(double a, const fkdv::BatteryConfig& b) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", a);
  return {{"a", buf},
          {"battery.random_fields", std::to_string(b.random_fields)},
          {"battery.smoothing_pairs", std::to_string(b.smoothing_pairs)},
          {"battery.phase_points", std::to_string(b.phase_points)},
          {"battery.low_freq_points", std::to_string(b.low_freq_points)},
          {"battery.seed", std::to_string(b.seed)}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Numerical experiments for the fractional KdV equation\n"
      "  u_t - d_x D^{a+1} u + u u_x = mu u_xx,  a in (-5/2, -2).\n"
      "Each subcommand writes CSVs and manifest.json into --out and prints one\n"
      "PASS/FAIL line per check. Exit status: 0 all checks passed, 1 a check\n"
      "failed, 2 configuration or usage error, 3 runtime failure.\n"
      "Thread count: OMP_NUM_THREADS.",
      "fkdv"};
  app.require_subcommand(1);
  app.set_version_flag("--version", fkdv::tool_version());

  struct Sub {
    const char* name;
    const char* help;
    KeyValues defaults;
    CommonFlags flags;
    CLI::App* app = nullptr;
  };
  std::vector<Sub> subs = {
      {"evolve",
       "Solve from a datum on the first ladder grid; writes the trajectory, the "
       "fields at --times and a conservation summary (checked when mu = 0).",
       {{"datum", "gaussian"}, {"datum.amplitude", "0.2"}, {"ladder.length0", "32*pi"},
        {"ladder.n0", "1024"}},
       {}},
      {"sweep-decay",
       "Weighted-norm ladder of the linear and nonlinear flow for every theta and "
       "time, checked against the datum's decay class.",
       {{"datum", "bump_spectrum"}, {"datum.amplitude", "0.05"},
        {"ladder.length0", "256*pi"}, {"ladder.n0", "2048"}},
       {}},
      {"ucp-probe",
       "Two-time probe of the equivalent datum conditions (default) or, with "
       "--critical, the vanishing probe at the critical weight.",
       {{"datum", "gaussian"}, {"datum.amplitude", "0.1"}, {"datum.k", "4"},
        {"datum.highpass", "1"}, {"ladder.length0", "64"}, {"ladder.n0", "1024"},
        {"ladder.padding", "2"}, {"thetas", "1.1, 1.3"}},
       {}},
      {"extra-decay",
       "Weighted norms of the Duhamel term, the solution and the linear part, "
       "with the Duhamel cross-check.",
       {{"datum", "algebraic"}, {"datum.amplitude", "0.1"}, {"datum.gamma", "1.7"},
        {"datum.k", "3"}, {"datum.highpass", "0.5"}, {"ladder.length0", "128"},
        {"ladder.n0", "2048"}, {"ladder.padding", "2"}, {"thetas", "1.15, 1.2"},
        {"times", "0.5, 1"}},
       {}},
      {"mu-study",
       "Pairwise sup-in-time L2 distances between viscous solutions down the "
       "mu list (mu_study.mus).",
       {{"datum", "gaussian"}, {"datum.k", "4"}, {"ladder.length0", "32*pi"},
        {"ladder.n0", "1024"}, {"times", "0.25, 0.5, 0.75, 1"}},
       {}},
  };
  bool critical = false;
  std::optional<double> t1, t2;
  std::vector<double> mus;
  for (Sub& s : subs) {
    s.app = app.add_subcommand(s.name, s.help);
    add_common(s.app, s.flags, std::string("out/") + s.name);
  }
  subs[2].app->add_flag("--critical", critical, "Run the critical-weight vanishing probe");
  subs[2].app->add_option("--t1", t1, "First probe time (default 0.25 T)");
  subs[2].app->add_option("--t2", t2, "Second probe time (default 0.75 T)");
  subs[4].app->add_option("--mus", mus, "Viscosities, largest first")->delimiter(',');

  double vb_a = -2.25;
  std::string vb_out = "out/verify-bounds";
  fkdv::BatteryConfig battery;
  CLI::App* vb = app.add_subcommand(
      "verify-bounds",
      "Battery of propagator, Stein and norm checks at one exponent a.");
  vb->add_option("--a", vb_a, "Dispersion exponent, in (-5/2, -2)")->capture_default_str();
  vb->add_option("--out", vb_out, "Output directory")->capture_default_str();
  vb->add_option("--random-fields", battery.random_fields,
                 "Random band-limited fields for the propagator algebra")
      ->capture_default_str();
  vb->add_option("--smoothing-pairs", battery.smoothing_pairs,
                 "Random (lambda, mu t) pairs for the smoothing bound")
      ->capture_default_str();
  vb->add_option("--phase-points", battery.phase_points,
                 "Sample points of the phase bound")
      ->capture_default_str();
  vb->add_option("--low-freq-points", battery.low_freq_points,
                 "Sample points of the low-frequency decay check")
      ->capture_default_str();
  vb->add_option("--seed", battery.seed, "Seed of the random checks")->capture_default_str();

  CLI11_PARSE(app, argc, argv);
  const auto start = std::chrono::steady_clock::now();

  try {
    if (vb->parsed()) {
      if (!(vb_a > -2.5 && vb_a < -2.0))
        throw fkdv::OutOfRange("a must lie in the open interval (-5/2, -2)", 0);
      const fkdv::Report r = fkdv::bounds_battery(fkdv::DispersionParams(vb_a), battery);
      return finish(r, battery_echo(vb_a, battery), start, vb_out);
    }
    for (Sub& s : subs) {
      if (!s.app->parsed()) continue;
      KeyValues over_defaults = s.defaults;
      if (t1) s.flags.values["probe.t1"] = std::to_string(*t1);
      if (t2) s.flags.values["probe.t2"] = std::to_string(*t2);
      if (!mus.empty()) {
        std::string list;
        for (double m : mus) list += (list.empty() ? "" : ",") + std::to_string(m);
        s.flags.values["mu_study.mus"] = list;
      }
      fkdv::RunConfig cfg = load(s.flags, over_defaults);
      KeyValues echo = fkdv::echo(cfg);
      const std::string name = s.name;
      fkdv::Report r;
      if (name == "evolve") {
        r = run_evolve(cfg);
      } else if (name == "sweep-decay") {
        r = fkdv::decay_threshold_sweep(cfg.spec);
        print_series(r);
      } else if (name == "ucp-probe") {
        const double T = cfg.spec.solver.T;
        const double a1 = cfg.t1.value_or(0.25 * T), a2 = cfg.t2.value_or(0.75 * T);
        echo["probe.mode"] = critical ? "critical" : "two-time";
        r = critical ? fkdv::ucp_critical_vanishing_probe(cfg.spec, a1, a2)
                     : fkdv::ucp_two_time_probe(cfg.spec, a1, a2);
        print_series(r);
      } else if (name == "extra-decay") {
        r = fkdv::extra_decay_check(cfg.spec);
        print_series(r);
      } else {
        r = run_mu_study(cfg);
      }
      return finish(r, echo, start, s.flags.out);
    }
  } catch (const fkdv::ConfigError& e) {
    std::cout << "ERROR\tconfig\tline=" << e.line() << "\t" << e.what() << "\n";
    return 2;
  } catch (const fkdv::InvalidArgument& e) {
    std::cout << "ERROR\tinvalid_argument\t" << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cout << "ERROR\truntime\t" << e.what() << "\n";
    return 3;
  }
  return 2;
}
