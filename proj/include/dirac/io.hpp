#ifndef DIRAC_IO_HPP
#define DIRAC_IO_HPP

#include "dirac/density.hpp"
#include "dirac/observables.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dirac {

inline constexpr int schema_version = 1;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest round-trip decimal form.
std::string format_double(double x);

/// Writes `content` to `path`, or to stdout when path is empty or "-".
void write_output(const std::string& path, const std::string& content);

/// A time bound given either as a number or as a multiple of T1, T2 or T3,
/// e.g. "1.2T2" or "T1".
struct TimeValue {
  double value = 0;
  int scale = 0;  // 0 for plain numbers, k for a multiple of Tk

  double resolve(const TimeScales& ts) const;
};

TimeValue parse_time(const std::string& text);

enum class Format { csv, json };

struct RunConfig {
  double mass = 0;
  std::optional<double> kz;
  double eB = 1;
  double a = 5;
  Symmetry symmetry = Symmetry::S;
  std::optional<double> ab_ratio;
  double tail_eps = default_tail_eps;
  TimeValue tmin{0, 0};
  TimeValue tmax{1, 1};
  std::size_t samples = 2000;
  std::optional<double> smin;
  std::optional<double> smax;
  std::size_t ns = 401;
  std::string out;
  Format format = Format::csv;

  /// Throws ConfigError on inconsistent or out-of-range values.
  void validate() const;
};

/// Flat `key = value` file; `#` starts a comment. Throws IoError when the file
/// cannot be read and ConfigError on malformed lines.
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Applies recognised keys; unknown keys and unparsable values raise ConfigError.
void apply_config(RunConfig& cfg, const std::map<std::string, std::string>& kv);

/// Cat state, fitted level distribution and time scales for a run.
struct ResolvedRun {
  CatSpec spec;
  CatExpansion expansion;
  LevelFit fit;
  TimeScales scales;
};

ResolvedRun resolve(const RunConfig& cfg);

std::string config_comment(const RunConfig& cfg, const ResolvedRun& run);

std::string spectral_csv(const SpectralFunction& sf, const std::string& meta);
std::string spectral_json(const SpectralFunction& sf, const ResolvedRun& run);

std::string survival_csv(const TimeSeries<std::complex<double>>& c, const std::string& meta);
std::string survival_json(const TimeSeries<std::complex<double>>& c, const ResolvedRun& run);

std::string timescales_csv(const ResolvedRun& run);
std::string timescales_json(const ResolvedRun& run);

std::string grid_csv(const SpatialGrid2D& g, const std::string& meta);
std::string grid_json(const SpatialGrid2D& g, const ResolvedRun& run);

/// One column per generator, then concurrence_sq and mutual_information.
struct ObservableTable {
  TimeSeries<double> time;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> values;  // values[column][sample]
};

ObservableTable observable_table(const CatExpansion& exp, double t0, double t1, std::size_t samples,
                                 unsigned workers = 0);

std::string observables_csv(const ObservableTable& tab, const std::string& meta);
std::string observables_json(const ObservableTable& tab, const ResolvedRun& run);

}  // namespace dirac

#endif  // DIRAC_IO_HPP
