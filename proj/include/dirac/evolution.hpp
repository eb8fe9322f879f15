#ifndef DIRAC_EVOLUTION_HPP
#define DIRAC_EVOLUTION_HPP

#include "dirac/catstate.hpp"

#include <array>
#include <complex>
#include <vector>

namespace dirac {

struct TimeScales {
  double T1;
  double T2;
  double T3;
};

/// T1 = pi/|E'|, T2 = pi/|E''|, T3 = 3 pi/(2 |E'''|) at real n0. A vanishing
/// derivative gives an infinite scale.
TimeScales time_scales(double n0, const PhysicalParams& p);

/// kz such that A/B = ratio at level n0: kz = ratio * sqrt(2 n0 eB).
double kz_for_ab_ratio(double ratio, double n0, double eB);

/// Phases e^{i w t} with w = +E_n (r = 1) or -E_n (r = 2), so that
/// C(t) = <psi(0)|psi(t)> = sum |c|^2 e^{i w t}.
class Propagator {
 public:
  explicit Propagator(const CatExpansion& exp);

  std::complex<double> amplitude(double t) const;
  /// Partial sums over the r = 1 and r = 2 terms.
  std::pair<std::complex<double>, std::complex<double>> branch_amplitudes(double t) const;

  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& frequencies() const { return omega_; }

 private:
  std::vector<double> weights_;
  std::vector<double> omega_;
  std::vector<bool> positive_;
};

std::complex<double> survival_amplitude(const CatExpansion& exp, double t);

/// |C(t)| on `samples` uniform points of [t0, t1].
TimeSeries<double> survival_series(const CatExpansion& exp, double t0, double t1, std::size_t samples,
                                   unsigned workers = 0);

TimeSeries<std::complex<double>> survival_amplitude_series(const CatExpansion& exp, double t0, double t1,
                                                           std::size_t samples, unsigned workers = 0);

/// |C_1(t)| + |C_2(t)|, the sum of the branch moduli. It bounds |C| from above
/// and removes the fast interference between the two energy signs.
TimeSeries<double> survival_envelope_series(const CatExpansion& exp, double t0, double t1, std::size_t samples,
                                            unsigned workers = 0);

/// Evolved spinor psi(s, t) = sum c u(s) e^{i w t}.
Bispinor evolve_state(const CatExpansion& exp, double s, double t);

/// Per-position cache: the four components of every basis term at fixed s,
/// so that many times can be evaluated cheaply.
class StateSlice {
 public:
  StateSlice(const CatExpansion& exp, double s);
  Bispinor at(double t) const;

 private:
  std::vector<std::array<double, 4>> values_;  // c * u(s) per term
  std::vector<double> omega_;
};

struct RevivalPacket {
  double t_start;
  double t_end;
  int peaks;
  /// Mean spacing of the peaks inside the packet.
  double period;
};

/// Groups peaks of height >= `height` into runs whose consecutive spacing is
/// at most `max_gap`; runs with fewer than `min_peaks` peaks are dropped.
std::vector<RevivalPacket> revival_packets(const std::vector<Peak>& peaks, double height, double max_gap,
                                           int min_peaks = 2);

/// Height-weighted mean time of the peaks in [t_lo, t_hi] whose height is
/// within `band` of the tallest one there. Returns NaN when no peak falls inside.
double peak_centroid(const std::vector<Peak>& peaks, double t_lo, double t_hi, double band);

}  // namespace dirac

#endif  // DIRAC_EVOLUTION_HPP
