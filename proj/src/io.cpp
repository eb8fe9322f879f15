#include "dirac/io.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace dirac {

using ojson = nlohmann::ordered_json;

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing to stdout");
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << content;
  f.close();
  if (!f) throw IoError("failed writing '" + path + "'");
}

double TimeValue::resolve(const TimeScales& ts) const {
  switch (scale) {
    case 1: return value * ts.T1;
    case 2: return value * ts.T2;
    case 3: return value * ts.T3;
    default: return value;
  }
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double v = 0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size() || !std::isfinite(v))
    throw ConfigError(key + ": not a number: '" + text + "'");
  return v;
}

std::size_t parse_count(const std::string& key, const std::string& text) {
  const double v = parse_number(key, text);
  if (v < 0 || v != std::floor(v) || v > 1e9) throw ConfigError(key + ": expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

}  // namespace

TimeValue parse_time(const std::string& text) {
  std::string t = trim(text);
  TimeValue tv;
  if (t.size() >= 2 && (t[t.size() - 2] == 'T' || t[t.size() - 2] == 't') && t.back() >= '1' && t.back() <= '3') {
    tv.scale = t.back() - '0';
    t = t.substr(0, t.size() - 2);
    tv.value = t.empty() ? 1.0 : parse_number("time", t);
  } else {
    tv.value = parse_number("time", t);
  }
  return tv;
}

void RunConfig::validate() const {
  if (!(eB > 0)) throw ConfigError("eB must be positive");
  if (mass < 0) throw ConfigError("mass must be non-negative");
  if (!(a >= 0)) throw ConfigError("a must be non-negative");
  if (symmetry == Symmetry::A && a == 0) throw ConfigError("antisymmetric state needs a > 0");
  if (kz && ab_ratio) throw ConfigError("kz and ab_ratio are mutually exclusive");
  if (ab_ratio && !(*ab_ratio >= 0)) throw ConfigError("ab_ratio must be non-negative");
  if (!(tail_eps > 0 && tail_eps <= 1e-6)) throw ConfigError("tail_eps must lie in (0, 1e-6]");
  if (samples < 2) throw ConfigError("samples must be at least 2");
  if (ns < 2) throw ConfigError("ns must be at least 2");
  if (smin && smax && !(*smax > *smin)) throw ConfigError("smax must exceed smin");
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

void apply_config(RunConfig& cfg, const std::map<std::string, std::string>& kv) {
  for (const auto& [k, v] : kv) {
    if (k == "mass") cfg.mass = parse_number(k, v);
    else if (k == "kz") cfg.kz = parse_number(k, v);
    else if (k == "eB") cfg.eB = parse_number(k, v);
    else if (k == "a") cfg.a = parse_number(k, v);
    else if (k == "symmetry") {
      try {
        cfg.symmetry = parse_symmetry(v);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    }
    else if (k == "ab_ratio" || k == "ab-ratio") cfg.ab_ratio = parse_number(k, v);
    else if (k == "tail_eps" || k == "tail-eps") cfg.tail_eps = parse_number(k, v);
    else if (k == "tmin") cfg.tmin = parse_time(v);
    else if (k == "tmax") cfg.tmax = parse_time(v);
    else if (k == "samples") cfg.samples = parse_count(k, v);
    else if (k == "smin") cfg.smin = parse_number(k, v);
    else if (k == "smax") cfg.smax = parse_number(k, v);
    else if (k == "ns") cfg.ns = parse_count(k, v);
    else if (k == "out") cfg.out = v;
    else if (k == "format") {
      if (v == "csv") cfg.format = Format::csv;
      else if (v == "json") cfg.format = Format::json;
      else throw ConfigError("format must be csv or json");
    } else {
      throw ConfigError("unknown config key '" + k + "'");
    }
  }
}

ResolvedRun resolve(const RunConfig& cfg) {
  cfg.validate();
  ResolvedRun run;
  run.spec = {cfg.symmetry, cfg.a, {cfg.mass, cfg.kz.value_or(0.0), cfg.eB, 0.0}};
  if (cfg.ab_ratio) {
    CatSpec probe = run.spec;
    probe.params.kz = 0;
    try {
      const double n0 = gaussian_fit(expand(probe, cfg.tail_eps)).n0;
      run.spec.params.kz = kz_for_ab_ratio(*cfg.ab_ratio, n0, cfg.eB);
    } catch (const DegenerateFitError& e) {
      throw ConfigError(std::string("ab_ratio needs a fitted mean level: ") + e.what());
    }
  }
  run.expansion = expand(run.spec, cfg.tail_eps);
  try {
    run.fit = gaussian_fit(run.expansion);
  } catch (const DegenerateFitError&) {
    // Too few levels to fit: fall back to the weighted mean oscillator index.
    double mean = 0;
    for (const auto& t : run.expansion.terms) mean += t.coefficient * t.coefficient * (t.level.n - 1);
    run.fit = {std::max(mean, 1e-9), 0.0, 0.0};
  }
  run.scales = time_scales(run.fit.n0, run.spec.params);
  return run;
}

std::string config_comment(const RunConfig& cfg, const ResolvedRun& run) {
  const auto& p = run.spec.params;
  std::string s = "# symmetry=" + to_string(run.spec.symmetry) + " a=" + format_double(run.spec.a) +
                  " mass=" + format_double(p.mass) + " kz=" + format_double(p.kz) + " eB=" + format_double(p.eB) +
                  " tail_eps=" + format_double(cfg.tail_eps) + "\n";
  s += "# n0=" + format_double(run.fit.n0) + " T1=" + format_double(run.scales.T1) + " T2=" +
       format_double(run.scales.T2) + " T3=" + format_double(run.scales.T3) + "\n";
  return s;
}

namespace {

ojson config_json(const ResolvedRun& run) {
  const auto& p = run.spec.params;
  ojson c;
  c["symmetry"] = to_string(run.spec.symmetry);
  c["a"] = run.spec.a;
  c["mass"] = p.mass;
  c["kz"] = p.kz;
  c["eB"] = p.eB;
  c["tail_eps"] = run.expansion.tail_eps;
  return c;
}

ojson header_json(const ResolvedRun& run) {
  ojson j;
  j["schema"] = schema_version;
  j["config"] = config_json(run);
  return j;
}

std::string finish(const ojson& j) { return j.dump(2) + "\n"; }

std::string csv_head(const std::string& meta) { return "# schema=" + std::to_string(schema_version) + "\n" + meta; }

}  // namespace

std::string spectral_csv(const SpectralFunction& sf, const std::string& meta) {
  std::string s = csv_head(meta) + "energy,weight\n";
  for (const auto& l : sf.lines) s += format_double(l.energy) + "," + format_double(l.weight) + "\n";
  return s;
}

std::string spectral_json(const SpectralFunction& sf, const ResolvedRun& run) {
  ojson j = header_json(run);
  j["fit"] = {{"n0", run.fit.n0}, {"delta_n", run.fit.delta_n}, {"residual", run.fit.residual}};
  ojson lines = ojson::array();
  for (const auto& l : sf.lines) lines.push_back({{"energy", l.energy}, {"weight", l.weight}});
  j["lines"] = lines;
  return finish(j);
}

std::string survival_csv(const TimeSeries<std::complex<double>>& c, const std::string& meta) {
  std::string s = csv_head(meta) + "t,re,im,abs\n";
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto z = c.values[i];
    s += format_double(c.time(i)) + "," + format_double(z.real()) + "," + format_double(z.imag()) + "," +
         format_double(std::abs(z)) + "\n";
  }
  return s;
}

std::string survival_json(const TimeSeries<std::complex<double>>& c, const ResolvedRun& run) {
  ojson j = header_json(run);
  j["t0"] = c.t0;
  j["dt"] = c.dt;
  ojson re = ojson::array(), im = ojson::array(), ab = ojson::array();
  for (const auto& z : c.values) {
    re.push_back(z.real());
    im.push_back(z.imag());
    ab.push_back(std::abs(z));
  }
  j["re"] = re;
  j["im"] = im;
  j["abs"] = ab;
  return finish(j);
}

std::string timescales_csv(const ResolvedRun& run) {
  std::string s = csv_head("") + "n0,delta_n,residual,kz,T1,T2,T3\n";
  for (double v : {run.fit.n0, run.fit.delta_n, run.fit.residual, run.spec.params.kz, run.scales.T1, run.scales.T2})
    s += format_double(v) + ",";
  return s + format_double(run.scales.T3) + "\n";
}

std::string timescales_json(const ResolvedRun& run) {
  ojson j = header_json(run);
  j["n0"] = run.fit.n0;
  j["delta_n"] = run.fit.delta_n;
  j["residual"] = run.fit.residual;
  j["T1"] = run.scales.T1;
  j["T2"] = run.scales.T2;
  j["T3"] = run.scales.T3;
  return finish(j);
}

std::string grid_csv(const SpatialGrid2D& g, const std::string& meta) {
  std::string s = csv_head(meta) + "s,t,value\n";
  for (std::size_t j = 0; j < g.spec.nt; ++j)
    for (std::size_t i = 0; i < g.spec.ns; ++i)
      s += format_double(g.spec.s(i)) + "," + format_double(g.spec.t(j)) + "," + format_double(g.at(i, j)) + "\n";
  return s;
}

std::string grid_json(const SpatialGrid2D& g, const ResolvedRun& run) {
  ojson j = header_json(run);
  j["grid"] = {{"s_min", g.spec.s_min}, {"s_max", g.spec.s_max}, {"ns", g.spec.ns},
               {"t_min", g.spec.t_min}, {"t_max", g.spec.t_max}, {"nt", g.spec.nt}};
  j["layout"] = "row-major, values[j * ns + i] at (s_i, t_j)";
  j["values"] = g.values;
  return finish(j);
}

ObservableTable observable_table(const CatExpansion& exp, double t0, double t1, std::size_t samples,
                                 unsigned workers) {
  const ObservableEngine eng(exp);
  const auto grid = uniform_grid(t0, t1, samples);
  ObservableTable tab;
  tab.time = {grid.t0, grid.dt, grid.values};
  const auto& gens = all_generators();
  for (auto g : gens) tab.columns.emplace_back(generator_name(g));
  tab.columns.emplace_back("concurrence_sq");
  tab.columns.emplace_back("mutual_information");
  tab.values.assign(tab.columns.size(), std::vector<double>(samples));
  parallel_for(samples, [&](std::size_t i) {
    const double t = grid.values[i];
    for (std::size_t k = 0; k < gens.size(); ++k) tab.values[k][i] = eng.expectation(gens[k], t);
    tab.values[gens.size()][i] = concurrence_sq(eng, t);
    tab.values[gens.size() + 1][i] = mutual_information(eng, t);
  }, workers);
  return tab;
}

std::string observables_csv(const ObservableTable& tab, const std::string& meta) {
  std::string s = csv_head(meta) + "t";
  for (const auto& c : tab.columns) s += "," + c;
  s += "\n";
  for (std::size_t i = 0; i < tab.time.size(); ++i) {
    s += format_double(tab.time.values[i]);
    for (const auto& col : tab.values) s += "," + format_double(col[i]);
    s += "\n";
  }
  return s;
}

std::string observables_json(const ObservableTable& tab, const ResolvedRun& run) {
  ojson j = header_json(run);
  j["t"] = tab.time.values;
  ojson cols;
  for (std::size_t k = 0; k < tab.columns.size(); ++k) cols[tab.columns[k]] = tab.values[k];
  j["series"] = cols;
  return finish(j);
}

}  // namespace dirac
