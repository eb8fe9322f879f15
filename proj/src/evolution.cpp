#include "dirac/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace dirac {

TimeScales time_scales(double n0, const PhysicalParams& p) {
  const auto d = energy_derivatives(n0, p);
  const double inf = std::numeric_limits<double>::infinity();
  auto scale = [inf](double num, double der) { return der == 0 ? inf : num / std::abs(der); };
  return {scale(std::numbers::pi, d.first), scale(std::numbers::pi, d.second), scale(1.5 * std::numbers::pi, d.third)};
}

double kz_for_ab_ratio(double ratio, double n0, double eB) {
  if (!(n0 > 0) || !(eB > 0)) throw std::domain_error("kz_for_ab_ratio: n0 and eB must be positive");
  return ratio * std::sqrt(2.0 * n0 * eB);
}

Propagator::Propagator(const CatExpansion& exp) {
  for (const auto& t : exp.terms) {
    weights_.push_back(t.coefficient * t.coefficient);
    omega_.push_back(signed_energy(t.level, exp.spec.params));
    positive_.push_back(t.level.r == Branch::positive);
  }
}

std::complex<double> Propagator::amplitude(double t) const {
  std::vector<std::complex<double>> z(weights_.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = weights_[i] * std::polar(1.0, omega_[i] * t);
  return pairwise_sum<std::complex<double>>(z);
}

std::pair<std::complex<double>, std::complex<double>> Propagator::branch_amplitudes(double t) const {
  std::vector<std::complex<double>> zp, zn;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    const auto z = weights_[i] * std::polar(1.0, omega_[i] * t);
    (positive_[i] ? zp : zn).push_back(z);
  }
  return {pairwise_sum<std::complex<double>>(zp), pairwise_sum<std::complex<double>>(zn)};
}

std::complex<double> survival_amplitude(const CatExpansion& exp, double t) { return Propagator(exp).amplitude(t); }

namespace {

template <class T, class F>
TimeSeries<T> sample(double t0, double t1, std::size_t samples, unsigned workers, F&& f) {
  const auto grid = uniform_grid(t0, t1, samples);
  TimeSeries<T> out{grid.t0, grid.dt, std::vector<T>(samples)};
  parallel_for(samples, [&](std::size_t i) { out.values[i] = f(grid.values[i]); }, workers);
  return out;
}

}  // namespace

TimeSeries<double> survival_series(const CatExpansion& exp, double t0, double t1, std::size_t samples,
                                   unsigned workers) {
  const Propagator prop(exp);
  return sample<double>(t0, t1, samples, workers, [&](double t) { return std::abs(prop.amplitude(t)); });
}

TimeSeries<std::complex<double>> survival_amplitude_series(const CatExpansion& exp, double t0, double t1,
                                                           std::size_t samples, unsigned workers) {
  const Propagator prop(exp);
  return sample<std::complex<double>>(t0, t1, samples, workers, [&](double t) { return prop.amplitude(t); });
}

TimeSeries<double> survival_envelope_series(const CatExpansion& exp, double t0, double t1, std::size_t samples,
                                            unsigned workers) {
  const Propagator prop(exp);
  return sample<double>(t0, t1, samples, workers, [&](double t) {
    const auto [a, b] = prop.branch_amplitudes(t);
    return std::abs(a) + std::abs(b);
  });
}

StateSlice::StateSlice(const CatExpansion& exp, double s) {
  const auto& p = exp.spec.params;
  const VectorX<double> f = hermite_fns(exp.max_level(), s, HermiteScale<double>(p.eB));
  for (const auto& t : exp.terms) {
    const SpinorShape sh = spinor_shape(t.level, p);
    std::array<double, 4> v{};
    for (int a = 0; a < 4; ++a) v[static_cast<std::size_t>(a)] = t.coefficient * sh.coef[static_cast<std::size_t>(a)] * f[sh.order[static_cast<std::size_t>(a)]];
    values_.push_back(v);
    omega_.push_back(signed_energy(t.level, p));
  }
}

Bispinor StateSlice::at(double t) const {
  Bispinor psi;
  std::vector<std::complex<double>> z(values_.size());
  for (int a = 0; a < 4; ++a) {
    for (std::size_t j = 0; j < values_.size(); ++j) z[j] = values_[j][static_cast<std::size_t>(a)] * std::polar(1.0, omega_[j] * t);
    psi[a] = pairwise_sum<std::complex<double>>(z);
  }
  return psi;
}

Bispinor evolve_state(const CatExpansion& exp, double s, double t) { return StateSlice(exp, s).at(t); }

std::vector<RevivalPacket> revival_packets(const std::vector<Peak>& peaks, double height, double max_gap,
                                           int min_peaks) {
  std::vector<RevivalPacket> out;
  std::vector<Peak> run;
  auto flush = [&] {
    if (static_cast<int>(run.size()) >= min_peaks) {
      const double span = run.back().t - run.front().t;
      out.push_back({run.front().t, run.back().t, static_cast<int>(run.size()),
                     span / static_cast<double>(run.size() - 1)});
    }
    run.clear();
  };
  for (const auto& p : peaks) {
    if (p.height < height) continue;
    if (!run.empty() && p.t - run.back().t > max_gap) flush();
    run.push_back(p);
  }
  flush();
  return out;
}

double peak_centroid(const std::vector<Peak>& peaks, double t_lo, double t_hi, double band) {
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& p : peaks)
    if (p.t >= t_lo && p.t <= t_hi) top = std::max(top, p.height);
  if (!std::isfinite(top)) return std::numeric_limits<double>::quiet_NaN();
  double num = 0, den = 0;
  for (const auto& p : peaks)
    if (p.t >= t_lo && p.t <= t_hi && p.height >= top - band) {
      num += p.height * p.t;
      den += p.height;
    }
  return num / den;
}

}  // namespace dirac
