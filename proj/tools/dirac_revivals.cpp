// dirac-revivals: datasets for cat states in relativistic Landau levels.

#include "dirac/io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <random>

using namespace dirac;

namespace {

enum Exit { ok = 0, validation_failed = 1, io_failed = 2, bad_config = 3 };

// Raw flag values, applied on top of the config file through the same parser.
struct Flags {
  std::map<std::string, std::string> kv;
  std::string config;
};

void add_run_flags(CLI::App* sub, Flags& f) {
  static const char* const names[][2] = {
      {"mass", "Mass M"},
      {"kz", "Longitudinal momentum kz"},
      {"eB", "Magnetic coupling eB"},
      {"a", "Cat-state displacement a"},
      {"symmetry", "S or A"},
      {"ab-ratio", "Solve kz from A/B at the fitted n0"},
      {"tail-eps", "Discarded probability of the truncated expansion"},
      {"tmin", "Start time, a number or a multiple of T1/T2/T3 such as 0.5T2"},
      {"tmax", "End time, same forms as --tmin"},
      {"samples", "Time samples"},
      {"smin", "Grid start in s"},
      {"smax", "Grid end in s"},
      {"ns", "Grid points in s"},
      {"out", "Output path, - for stdout"},
      {"format", "csv or json"},
  };
  for (const auto& n : names) {
    const std::string key = n[0];
    sub->add_option_function<std::string>("--" + key, [&f, key](const std::string& v) { f.kv[key] = v; }, n[1]);
  }
  sub->add_option("--config", f.config, "key = value file; flags take precedence");
}

RunConfig build_config(const Flags& f) {
  RunConfig cfg;
  std::map<std::string, std::string> kv;
  if (!f.config.empty()) {
    for (auto& [k, v] : read_config_file(f.config)) {
      std::string key = k;
      std::replace(key.begin(), key.end(), '_', '-');
      kv[key] = v;
    }
  }
  // A flag for one of kz / ab-ratio replaces the other when it came from the file.
  if (f.kv.count("kz") && f.kv.count("ab-ratio")) throw ConfigError("--kz and --ab-ratio are mutually exclusive");
  if (f.kv.count("kz")) kv.erase("ab-ratio");
  if (f.kv.count("ab-ratio")) kv.erase("kz");
  for (const auto& [k, v] : f.kv) kv[k] = v;
  apply_config(cfg, kv);
  cfg.validate();
  return cfg;
}

std::pair<double, double> time_range(const RunConfig& cfg, const ResolvedRun& run) {
  const double t0 = cfg.tmin.resolve(run.scales), t1 = cfg.tmax.resolve(run.scales);
  if (!std::isfinite(t0) || !std::isfinite(t1)) throw ConfigError("time range resolves to an infinite time scale");
  if (!(t1 > t0)) throw ConfigError("tmax must exceed tmin");
  return {t0, t1};
}

int cmd_spectral(const RunConfig& cfg) {
  const auto run = resolve(cfg);
  const auto sf = spectral_function(run.expansion);
  write_output(cfg.out, cfg.format == Format::json ? spectral_json(sf, run) : spectral_csv(sf, config_comment(cfg, run)));
  return ok;
}

int cmd_survival(const RunConfig& cfg, bool envelope) {
  const auto run = resolve(cfg);
  const auto [t0, t1] = time_range(cfg, run);
  if (envelope) {
    const auto env = survival_envelope_series(run.expansion, t0, t1, cfg.samples);
    std::string s;
    if (cfg.format == Format::json) {
      TimeSeries<std::complex<double>> c{env.t0, env.dt, {}};
      for (double v : env.values) c.values.emplace_back(v, 0.0);
      s = survival_json(c, run);
    } else {
      s = "# schema=" + std::to_string(schema_version) + "\n" + config_comment(cfg, run) + "t,value\n";
      for (std::size_t i = 0; i < env.size(); ++i) s += format_double(env.time(i)) + "," + format_double(env.values[i]) + "\n";
    }
    write_output(cfg.out, s);
    return ok;
  }
  const auto c = survival_amplitude_series(run.expansion, t0, t1, cfg.samples);
  write_output(cfg.out, cfg.format == Format::json ? survival_json(c, run) : survival_csv(c, config_comment(cfg, run)));
  return ok;
}

int cmd_timescales(const RunConfig& cfg) {
  const auto run = resolve(cfg);
  write_output(cfg.out, cfg.format == Format::json ? timescales_json(run) : timescales_csv(run));
  return ok;
}

int cmd_density(const RunConfig& cfg) {
  const auto run = resolve(cfg);
  const auto [t0, t1] = time_range(cfg, run);
  GridSpec g = default_grid(run.spec.a, t0, t1, cfg.ns, cfg.samples);
  if (cfg.smin) g.s_min = *cfg.smin;
  if (cfg.smax) g.s_max = *cfg.smax;
  if (!(g.s_max > g.s_min)) throw ConfigError("smax must exceed smin");
  const auto grid = density_grid(run.expansion, g);
  write_output(cfg.out, cfg.format == Format::json ? grid_json(grid, run) : grid_csv(grid, config_comment(cfg, run)));
  return ok;
}

int cmd_observables(const RunConfig& cfg) {
  const auto run = resolve(cfg);
  const auto [t0, t1] = time_range(cfg, run);
  const auto tab = observable_table(run.expansion, t0, t1, cfg.samples);
  write_output(cfg.out,
               cfg.format == Format::json ? observables_json(tab, run) : observables_csv(tab, config_comment(cfg, run)));
  return ok;
}

double validation_tolerance() {
  const char* env = std::getenv("DIRAC_REVIVALS_TOL");
  if (!env) return 1e-8;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !std::isfinite(v) || !(v > 0))
    throw ConfigError(std::string("DIRAC_REVIVALS_TOL: not a positive number: '") + env + "'");
  return v;
}

struct Check {
  std::string name;
  double error;
};

std::vector<Check> run_checks(const ResolvedRun& run) {
  const auto& spec = run.spec;
  const auto& p = spec.params;
  const auto& exp = run.expansion;
  std::vector<Check> out;

  {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<int> level(1, 10000);
    double err = 0;
    for (int i = 0; i < 1000; ++i) {
      const auto op = one_particle_params(level(rng), p);
      err = std::max(err, std::abs(op.eta * (op.A * op.A + op.B * op.B + 1) - 1));
    }
    out.push_back({"eta (A^2 + B^2 + 1) = 1", err});
  }
  {
    double sum = 0;
    for (const auto& t : exp.terms) sum += t.coefficient * t.coefficient;
    out.push_back({"expansion normalization", std::abs(sum - 1)});
  }
  {
    const auto fine = expand(spec, 1e-18);
    const auto oracle = expand_oracle(spec, default_oracle_levels(spec, 1e-18));
    double err = 0;
    for (const auto& t : oracle.terms) err = std::max(err, std::abs(t.coefficient - fine.coefficient(t.level)));
    for (const auto& t : fine.terms) err = std::max(err, std::abs(t.coefficient - oracle.coefficient(t.level)));
    out.push_back({"coefficients vs quadrature oracle", err});
  }
  out.push_back({"|C(0)| = 1", std::abs(std::abs(survival_amplitude(exp, 0.0)) - 1)});
  {
    const int n_max = std::min(exp.max_level(), 16);
    const Branch rs[] = {Branch::positive, Branch::negative};
    const Spin nus[] = {Spin::up, Spin::down};
    double err = 0;
    for (auto g : basis_generators()) {
      if (!is_block_diagonal(g)) continue;
      for (int n = 1; n <= n_max; ++n)
        for (int m = 1; m <= n_max; ++m) {
          if (n == m) continue;
          for (auto r1 : rs)
            for (auto v1 : nus)
              for (auto r2 : rs)
                for (auto v2 : nus) err = std::max(err, std::abs(matrix_element(g, {n, r1, v1}, {m, r2, v2}, p)));
        }
    }
    out.push_back({"selection rule, n != m", err});
  }
  {
    const double t1 = std::isfinite(run.scales.T1) ? run.scales.T1 : 1.0;
    const double t2 = std::isfinite(run.scales.T2) ? run.scales.T2 : 1.0;
    double err = 0;
    for (double t : {0.0, t1 / 3, t2 / 4, t2 / 2}) {
      GridSpec g = default_grid(spec.a, t, t + 1, 4000, 2);
      err = std::max(err, std::abs(density_grid(exp, g).row_integral(0) - 1));
    }
    out.push_back({"density row integral", err});
  }
  {
    const ObservableEngine eng(exp);
    const double t1 = std::isfinite(run.scales.T1) ? run.scales.T1 : 1.0;
    double err = 0;
    for (double t : {0.0, 0.37 * t1, 1.9 * t1})
      for (auto g : all_generators()) {
        const auto cf = closed_form_expectation(exp, g, t);
        const double v = eng.expectation(g, t);
        err = std::max(err, cf ? std::abs(*cf - v) : 0.0);
        if (g == Generator::alpha_x || g == Generator::alpha_y) err = std::max(err, std::abs(v));
      }
    out.push_back({"observables vs closed forms", err});
  }
  if (spec.symmetry == Symmetry::S) {
    double err = 0;
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> us(-(spec.a + 4), spec.a + 4), ut(0, 50);
    for (int i = 0; i < 50; ++i) {
      const double s = us(rng), t = ut(rng);
      err = std::max(err, std::abs(density_closed_form(exp, s, t) - probability_density(exp, s, t)));
    }
    out.push_back({"density closed form vs direct", err});
  }
  return out;
}

int cmd_validate(const RunConfig& cfg) {
  const double tol = validation_tolerance();
  const auto run = resolve(cfg);
  const auto checks = run_checks(run);
  bool all = true;
  std::printf("%-36s %-12s %-10s %s\n", "check", "error", "tolerance", "result");
  for (const auto& c : checks) {
    const bool pass = std::isfinite(c.error) && c.error <= tol;
    all = all && pass;
    std::printf("%-36s %-12.3e %-10.1e %s\n", c.name.c_str(), c.error, tol, pass ? "PASS" : "FAIL");
  }
  std::printf("%s\n", all ? "all checks passed" : "validation failed");
  return all ? ok : validation_failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cat states in relativistic Landau levels"};
  app.require_subcommand(1);
  Flags flags;
  bool envelope = false;
  auto* spectral = app.add_subcommand("spectral", "Spectral lines (energy, weight)");
  auto* survival = app.add_subcommand("survival", "Survival amplitude C(t)");
  auto* timescales = app.add_subcommand("timescales", "Fitted n0, dn and T1, T2, T3");
  auto* density = app.add_subcommand("density", "Probability density on an (s, t) grid");
  auto* observables = app.add_subcommand("observables", "Generator expectations, concurrence^2, mutual information");
  auto* validate = app.add_subcommand("validate", "Run the invariant checks and print a pass/fail table");
  for (auto* sub : {spectral, survival, timescales, density, observables, validate}) add_run_flags(sub, flags);
  survival->add_flag("--envelope", envelope, "Write |C_1| + |C_2| instead of C");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : bad_config;
  }

  try {
    const RunConfig cfg = build_config(flags);
    if (spectral->parsed()) return cmd_spectral(cfg);
    if (survival->parsed()) return cmd_survival(cfg, envelope);
    if (timescales->parsed()) return cmd_timescales(cfg);
    if (density->parsed()) return cmd_density(cfg);
    if (observables->parsed()) return cmd_observables(cfg);
    if (validate->parsed()) return cmd_validate(cfg);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return io_failed;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return bad_config;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return bad_config;
  }
  return ok;
}
