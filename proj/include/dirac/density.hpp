#ifndef DIRAC_DENSITY_HPP
#define DIRAC_DENSITY_HPP

#include "dirac/evolution.hpp"

#include <vector>

namespace dirac {

struct GridSpec {
  double s_min = -11;
  double s_max = 11;
  std::size_t ns = 2001;
  double t_min = 0;
  double t_max = 1;
  std::size_t nt = 2;

  void validate() const;
  double s(std::size_t i) const;
  double t(std::size_t j) const;
};

/// Grid spanning |s| <= a + 6.
GridSpec default_grid(double a, double t_min, double t_max, std::size_t ns, std::size_t nt);

/// Row-major samples: values[j * ns + i] at (s_i, t_j).
struct SpatialGrid2D {
  GridSpec spec;
  std::vector<double> values;

  double at(std::size_t i_s, std::size_t j_t) const { return values[j_t * spec.ns + i_s]; }
  /// Trapezoidal s-integral of row j.
  double row_integral(std::size_t j_t) const;
};

/// psi^dagger psi per unit s (divided by sqrt(eB)), from the evolved state.
double probability_density(const CatExpansion& exp, double s, double t);

/// Double sum over levels n, m with d_n the Gaussian amplitude of level n:
///   d_n d_m [ F_{n-1} F_{m-1} (cos E_n t cos E_m t + (M^2 + kz^2)/(E_n E_m) sin E_n t sin E_m t)
///             + 4 eta_n eta_m B_n B_m sin E_n t sin E_m t F_n F_m ] / sqrt(eB).
double density_closed_form(const CatExpansion& exp, double s, double t);

SpatialGrid2D density_grid(const CatExpansion& exp, const GridSpec& grid, unsigned workers = 0);

}  // namespace dirac

#endif  // DIRAC_DENSITY_HPP
