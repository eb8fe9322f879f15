#include "dirac/density.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace dirac {

void GridSpec::validate() const {
  if (ns < 2 || nt < 2) throw std::domain_error("grid: ns and nt must be at least 2");
  if (!(s_max > s_min)) throw std::domain_error("grid: s_max must exceed s_min");
  if (!(t_max >= t_min)) throw std::domain_error("grid: t_max must not precede t_min");
}

double GridSpec::s(std::size_t i) const { return s_min + (s_max - s_min) * static_cast<double>(i) / static_cast<double>(ns - 1); }
double GridSpec::t(std::size_t j) const { return t_min + (t_max - t_min) * static_cast<double>(j) / static_cast<double>(nt - 1); }

GridSpec default_grid(double a, double t_min, double t_max, std::size_t ns, std::size_t nt) {
  return {-(a + 6), a + 6, ns, t_min, t_max, nt};
}

double SpatialGrid2D::row_integral(std::size_t j_t) const {
  const std::span<const double> row(values.data() + j_t * spec.ns, spec.ns);
  return trapezoid(row, (spec.s_max - spec.s_min) / static_cast<double>(spec.ns - 1));
}

double probability_density(const CatExpansion& exp, double s, double t) {
  const Bispinor psi = evolve_state(exp, s, t);
  return psi.squaredNorm() / std::sqrt(exp.spec.params.eB);
}

double density_closed_form(const CatExpansion& exp, double s, double t) {
  const auto& p = exp.spec.params;
  // Gaussian amplitude per level, recovered from the (r=1, +) coefficient.
  std::map<int, double> d;
  for (const auto& term : exp.terms)
    if (term.level.r == Branch::positive && term.level.nu == Spin::up)
      d[term.level.n] = term.coefficient / std::sqrt(one_particle_params(term.level.n, p).eta);
  const VectorX<double> f = hermite_fns(exp.max_level(), s, HermiteScale<double>(p.eB));

  struct Level {
    double d, fp, f, e, c, sn, etab;
  };
  std::vector<Level> lv;
  for (const auto& [n, dn] : d) {
    const auto op = one_particle_params(n, p);
    const double e = energy(n, p);
    lv.push_back({dn, f[n - 1], f[n], e, std::cos(e * t), std::sin(e * t), op.eta * op.B});
  }
  const double mk2 = p.mass * p.mass + p.kz * p.kz;
  std::vector<double> terms;
  terms.reserve(lv.size() * lv.size());
  for (const auto& a : lv)
    for (const auto& b : lv) {
      const double ss = a.sn * b.sn;
      terms.push_back(a.d * b.d * (a.fp * b.fp * (a.c * b.c + mk2 / (a.e * b.e) * ss) + 4 * a.etab * b.etab * ss * a.f * b.f));
    }
  return pairwise_sum<double>(terms) / std::sqrt(p.eB);
}

SpatialGrid2D density_grid(const CatExpansion& exp, const GridSpec& grid, unsigned workers) {
  grid.validate();
  SpatialGrid2D out{grid, std::vector<double>(grid.ns * grid.nt)};
  const double inv = 1.0 / std::sqrt(exp.spec.params.eB);
  parallel_for(grid.ns, [&](std::size_t i) {
    const StateSlice slice(exp, grid.s(i));
    for (std::size_t j = 0; j < grid.nt; ++j) out.values[j * grid.ns + i] = slice.at(grid.t(j)).squaredNorm() * inv;
  }, workers);
  return out;
}

}  // namespace dirac
