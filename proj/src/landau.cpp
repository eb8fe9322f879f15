#include "dirac/landau.hpp"

#include <cmath>
#include <stdexcept>

namespace dirac {

void PhysicalParams::validate() const {
  if (!std::isfinite(mass) || !std::isfinite(kz) || !std::isfinite(eB) || !std::isfinite(ky))
    throw std::domain_error("PhysicalParams: non-finite field");
  if (!(eB > 0)) throw std::domain_error("PhysicalParams: eB must be positive");
  if (mass < 0) throw std::domain_error("PhysicalParams: mass must be non-negative");
}

std::string to_string(const LevelIndex& level) {
  std::string s = "(n=" + std::to_string(level.n);
  s += level.r == Branch::positive ? ", r=1" : ", r=2";
  s += level.nu == Spin::up ? ", nu=+)" : ", nu=-)";
  return s;
}

double energy(double n, const PhysicalParams& p) {
  return std::sqrt(p.mass * p.mass + p.kz * p.kz + 2.0 * n * p.eB);
}

double signed_energy(const LevelIndex& level, const PhysicalParams& p) {
  const double e = energy(level.n, p);
  return level.r == Branch::positive ? e : -e;
}

OneParticleParams one_particle_params(int n, const PhysicalParams& p) {
  if (n < 1) throw std::domain_error("one_particle_params: n must be at least 1");
  const double e = energy(n, p);
  const double em = e + p.mass;
  return {p.kz / em, std::sqrt(2.0 * n * p.eB) / em, em / (2.0 * e)};
}

SpinorShape spinor_shape(const LevelIndex& level, const PhysicalParams& p) {
  if (level.n < 1) throw std::domain_error("spinor: n must be at least 1 (F_{-1} is undefined)");
  const auto [A, B, eta] = one_particle_params(level.n, p);
  const double k = std::sqrt(eta);
  SpinorShape sh;
  sh.order = {level.n - 1, level.n, level.n - 1, level.n};
  if (level.r == Branch::positive) {
    if (level.nu == Spin::up)
      sh.coef = {k, 0.0, k * A, -k * B};
    else
      sh.coef = {0.0, k, -k * B, -k * A};
  } else {
    if (level.nu == Spin::up)
      sh.coef = {k * B, k * A, 0.0, k};
    else
      sh.coef = {-k * A, k * B, k, 0.0};
  }
  return sh;
}

Bispinor spinor(const LevelIndex& level, double s, const PhysicalParams& p) {
  const SpinorShape sh = spinor_shape(level, p);
  const HermiteScale<double> scale(p.eB);
  const VectorX<double> f = hermite_fns(level.n, s, scale);
  Bispinor u;
  for (int a = 0; a < 4; ++a) u[a] = sh.coef[a] * f[sh.order[a]];
  return u;
}

EnergyDerivatives energy_derivatives(double n0, const PhysicalParams& p) {
  const double e = energy(n0, p);
  if (!(e > 0)) throw std::domain_error("energy_derivatives: E(n0) must be positive");
  const double b = p.eB;
  return {b / e, -b * b / (e * e * e), 3.0 * b * b * b / std::pow(e, 5)};
}

}  // namespace dirac
