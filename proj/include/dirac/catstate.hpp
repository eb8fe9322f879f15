#ifndef DIRAC_CATSTATE_HPP
#define DIRAC_CATSTATE_HPP

#include "dirac/landau.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dirac {

enum class Symmetry { S, A };

std::string to_string(Symmetry s);
/// Accepts "S"/"A" (case-insensitive); throws std::invalid_argument otherwise.
Symmetry parse_symmetry(const std::string& text);

struct CatSpec {
  Symmetry symmetry = Symmetry::S;
  double a = 0;
  PhysicalParams params;

  void validate() const;
};

struct ExpansionTerm {
  LevelIndex level;
  double coefficient;
};

/// Normalized eigen-expansion of a cat state. Terms are ordered by n, then
/// (r=1, +), (r=1, -), (r=2, +), (r=2, -); exact zeros are omitted.
struct CatExpansion {
  CatSpec spec;
  std::vector<ExpansionTerm> terms;
  double tail_eps = 0;
  /// Sum of squared coefficients before renormalization.
  double raw_norm_sq = 1;

  int max_level() const;
  int min_level() const;
  /// Coefficient of `level`, or 0 when the level is absent.
  double coefficient(const LevelIndex& level) const;
};

inline constexpr double default_tail_eps = 1e-12;

/// Oscillator amplitudes d_m of the normalized cat profile, one parity only.
/// Both tails are cut where their discarded probability stays below tail_eps / 2.
struct OscillatorAmplitudes {
  std::vector<int> m;
  std::vector<double> d;
  double discarded = 0;
};

OscillatorAmplitudes oscillator_amplitudes(Symmetry sym, double a, double tail_eps = default_tail_eps);

/// Closed-form coefficients, renormalized after truncation.
CatExpansion expand(const CatSpec& spec, double tail_eps = default_tail_eps);

/// Coefficients from Gauss-Hermite overlaps of the closed-form initial state
/// with every basis spinor of levels 1..n_max.
CatExpansion expand_oracle(const CatSpec& spec, int n_max);

/// Level count that leaves less than tail_eps of the closed-form weight outside,
/// plus a margin of 8 levels.
int default_oracle_levels(const CatSpec& spec, double tail_eps = default_tail_eps);

/// Scalar profile f(s) of the initial spinor (f, 0, 0, 0). The unnormalized
/// form is the two-Gaussian sum with prefactor (eB/pi)^{1/4}/2; its squared norm
/// under ds/sqrt(eB) is (1 +- e^{-a^2})/2.
double cat_profile_unnormalized(const CatSpec& spec, double s);
double cat_profile(const CatSpec& spec, double s);
double cat_norm_sq(Symmetry sym, double a);

struct SpectralLine {
  double energy;
  double weight;
};

struct SpectralFunction {
  std::vector<SpectralLine> lines;

  double total_weight() const;
  double negative_weight() const;
};

SpectralFunction spectral_function(const CatExpansion& exp);

/// Per-level weight split by energy sign.
struct LevelWeight {
  int n;
  double positive;
  double negative;
};

std::vector<LevelWeight> level_weights(const CatExpansion& exp);

struct LevelFit {
  double n0;
  double delta_n;
  double residual;
};

class DegenerateFitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Least-squares fit of the per-sign level weights to
///   W(m) = S * 2 exp(-(m - n0)^2 / dn^2) / (dn sqrt(pi)),
/// in the oscillator index m = n - 1, with S the total weight of that sign.
LevelFit gaussian_fit(const CatExpansion& exp);

}  // namespace dirac

#endif  // DIRAC_CATSTATE_HPP
