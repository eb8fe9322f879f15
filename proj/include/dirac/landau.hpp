#ifndef DIRAC_LANDAU_HPP
#define DIRAC_LANDAU_HPP

#include "dirac/numerics.hpp"

#include <array>
#include <complex>
#include <string>

namespace dirac {

/// Hamiltonian inputs in natural units. ky only shifts the oscillator centre
/// and stays 0 for all cat-state work.
struct PhysicalParams {
  double mass = 0;
  double kz = 0;
  double eB = 1;
  double ky = 0;

  /// Throws std::domain_error when eB <= 0, mass < 0 or any field is not finite.
  void validate() const;
};

/// Intrinsic-parity branch: r = 1 evolves with +E_n, r = 2 with -E_n.
enum class Branch { positive = 1, negative = 2 };

/// Spinor label nu.
enum class Spin { up, down };

struct LevelIndex {
  int n = 1;
  Branch r = Branch::positive;
  Spin nu = Spin::up;

  friend bool operator==(const LevelIndex&, const LevelIndex&) = default;
};

std::string to_string(const LevelIndex& level);

struct OneParticleParams {
  double A;
  double B;
  double eta;
};

template <class Scalar>
using BispinorT = Eigen::Matrix<std::complex<Scalar>, 4, 1>;
using Bispinor = BispinorT<double>;

/// E_n = sqrt(M^2 + kz^2 + 2 n eB); n may be any real >= 0.
double energy(double n, const PhysicalParams& p);

/// +E_n for r = 1, -E_n for r = 2.
double signed_energy(const LevelIndex& level, const PhysicalParams& p);

OneParticleParams one_particle_params(int n, const PhysicalParams& p);

/// Each basis spinor has the form coef[a] * F_{order[a]}(s) per component,
/// with order n-1 on components 0 and 2 and n on components 1 and 3.
struct SpinorShape {
  std::array<double, 4> coef;
  std::array<int, 4> order;
};

SpinorShape spinor_shape(const LevelIndex& level, const PhysicalParams& p);

/// Basis spinor u^nu_{n,r}(s). Throws std::domain_error for n < 1.
Bispinor spinor(const LevelIndex& level, double s, const PhysicalParams& p);

struct EnergyDerivatives {
  double first;
  double second;
  double third;
};

/// Derivatives of E(n) in n at real n0.
EnergyDerivatives energy_derivatives(double n0, const PhysicalParams& p);

}  // namespace dirac

#endif  // DIRAC_LANDAU_HPP
