#ifndef DIRAC_NUMERICS_HPP
#define DIRAC_NUMERICS_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace dirac {

template <class T>
using VectorX = Eigen::Matrix<T, Eigen::Dynamic, 1>;

template <class T>
using MatrixX = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

namespace detail {

template <class Scalar>
Scalar pi_v() {
  using std::acos;
  return acos(Scalar(-1));
}

// Normalized Hermite recurrence with the Gaussian factor stripped off. The
// running pair is rescaled by powers of two whenever it grows too large, and
// the accumulated binary exponent is folded back together with e^{-s^2/2}
// only when a value is emitted. This keeps every intermediate O(1) relative
// to its neighbours for any n and s.
template <class Scalar>
struct ScaledHermite {
  Scalar prev{0};
  Scalar cur;
  long exponent = 0;
  int order = 0;

  explicit ScaledHermite(Scalar s) : cur(Scalar(1) / sqrt_sqrt_pi()), x(s) {}

  static Scalar sqrt_sqrt_pi() {
    using std::sqrt;
    return sqrt(sqrt(pi_v<Scalar>()));
  }

  void step() {
    using std::abs;
    using std::frexp;
    using std::ldexp;
    using std::sqrt;
    const Scalar k = Scalar(order);
    const Scalar next = sqrt(Scalar(2) / (k + 1)) * x * cur - sqrt(k / (k + 1)) * prev;
    prev = cur;
    cur = next;
    ++order;
    if (abs(cur) > Scalar(1e120) || abs(prev) > Scalar(1e120)) {
      int e = 0;
      const Scalar big = abs(cur) > abs(prev) ? cur : prev;
      frexp(big, &e);
      cur = ldexp(cur, -e);
      prev = ldexp(prev, -e);
      exponent += e;
    }
  }

  // Value of the current order with the Gaussian and exponent restored.
  Scalar value(Scalar mantissa) const {
    using std::exp;
    using std::log;
    const Scalar log_scale = Scalar(exponent) * log(Scalar(2)) - x * x / 2;
    return mantissa * exp(log_scale);
  }

  Scalar x;
};

}  // namespace detail

/// Magnetic length scale of the oscillator functions.
template <class Scalar = double>
struct HermiteScale {
  Scalar eB{1};

  HermiteScale() = default;
  explicit HermiteScale(Scalar eb) : eB(eb) {
    if (!(eb > Scalar(0))) throw std::domain_error("HermiteScale: eB must be positive");
  }

  /// (eB)^{1/4}, the factor that makes F_n unit-normalized in x = s / sqrt(eB).
  Scalar prefactor() const {
    using std::sqrt;
    return sqrt(sqrt(eB));
  }
};

/// Normalized Hermite function
///   F_n(s) = (sqrt(eB) / (n! 2^n sqrt(pi)))^{1/2} e^{-s^2/2} H_n(s),
/// evaluated by the three-term recurrence on the normalized functions.
template <class Scalar>
Scalar hermite_fn(int n, Scalar s, const HermiteScale<Scalar>& scale) {
  using std::isnan;
  if (n < 0) throw std::domain_error("hermite_fn: negative order");
  if (isnan(s)) throw std::domain_error("hermite_fn: NaN argument");
  detail::ScaledHermite<Scalar> rec(s);
  for (int k = 0; k < n; ++k) rec.step();
  return scale.prefactor() * rec.value(rec.cur);
}

inline double hermite_fn(int n, double s, const HermiteScale<double>& scale = HermiteScale<double>{}) {
  return hermite_fn<double>(n, s, scale);
}

/// All of F_0(s) ... F_{n_max}(s) in one recurrence sweep.
template <class Scalar>
VectorX<Scalar> hermite_fns(int n_max, Scalar s, const HermiteScale<Scalar>& scale) {
  using std::isnan;
  if (n_max < 0) throw std::domain_error("hermite_fns: negative order");
  if (isnan(s)) throw std::domain_error("hermite_fns: NaN argument");
  VectorX<Scalar> out(n_max + 1);
  std::vector<long> exps(static_cast<std::size_t>(n_max) + 1);
  detail::ScaledHermite<Scalar> rec(s);
  out[0] = rec.cur;
  exps[0] = 0;
  for (int k = 1; k <= n_max; ++k) {
    rec.step();
    // Earlier entries keep the exponent they were stored with.
    out[k] = rec.cur;
    exps[static_cast<std::size_t>(k)] = rec.exponent;
  }
  using std::exp;
  using std::log;
  const Scalar ln2 = log(Scalar(2));
  const Scalar pref = scale.prefactor();
  for (int k = 0; k <= n_max; ++k) {
    const Scalar log_scale = Scalar(exps[static_cast<std::size_t>(k)]) * ln2 - s * s / 2;
    out[k] = pref * (out[k] * exp(log_scale));
  }
  return out;
}

inline VectorX<double> hermite_fns(int n_max, double s, const HermiteScale<double>& scale = HermiteScale<double>{}) {
  return hermite_fns<double>(n_max, s, scale);
}

/// psi_n(x) split as mantissa * 2^exponent * e^{-x^2/2}, where psi_n is the
/// unit-eB Hermite function. Lets callers combine several factors without
/// forming e^{x^2} explicitly.
template <class Scalar>
struct HermiteSplit {
  Scalar mantissa;
  long exponent;
};

template <class Scalar>
HermiteSplit<Scalar> hermite_split(int n, Scalar x) {
  detail::ScaledHermite<Scalar> rec(x);
  for (int k = 0; k < n; ++k) rec.step();
  return {rec.cur, rec.exponent};
}

/// Gauss-Hermite rule for weight e^{-x^2}.
template <class Scalar = double>
struct QuadratureRule {
  VectorX<Scalar> nodes;
  /// May underflow to 0 at the outermost nodes of large rules.
  VectorX<Scalar> weights;
  /// ln(weights[i]); always finite.
  VectorX<Scalar> log_weights;

  Eigen::Index size() const { return nodes.size(); }

  /// Integral of e^{-x^2} g(x).
  template <class F>
  auto integrate_weighted(F&& g) const {
    using R = decltype(g(Scalar{}));
    R acc{};
    for (Eigen::Index i = 0; i < nodes.size(); ++i) acc += weights[i] * g(nodes[i]);
    return acc;
  }
};

/// k-point Gauss-Hermite rule: Golub-Welsch nodes polished by Newton steps on
/// the normalized Hermite function, Christoffel weights w_i = 1 / (k h_{k-1}(x_i)^2)
/// with h_j the orthonormal Hermite polynomials.
template <class Scalar = double>
QuadratureRule<Scalar> gauss_hermite(int k) {
  using std::abs;
  using std::exp;
  using std::log;
  using std::sqrt;
  if (k < 1) throw std::domain_error("gauss_hermite: order must be at least 1");

  VectorX<Scalar> diag = VectorX<Scalar>::Zero(k);
  VectorX<Scalar> sub(k > 1 ? k - 1 : 0);
  for (int j = 1; j < k; ++j) sub[j - 1] = sqrt(Scalar(j) / 2);

  VectorX<Scalar> x(k);
  if (k == 1) {
    x[0] = Scalar(0);
  } else {
    Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    x = solver.eigenvalues();
  }

  for (int i = 0; i < k; ++i) {
    for (int it = 0; it < 3; ++it) {
      detail::ScaledHermite<Scalar> rec(x[i]);
      for (int j = 0; j < k; ++j) rec.step();
      // h_k'(x) = sqrt(2k) h_{k-1}(x); prev and cur share one scale.
      const Scalar deriv = sqrt(Scalar(2 * k)) * rec.prev;
      if (deriv == Scalar(0)) break;
      const Scalar dx = rec.cur / deriv;
      x[i] -= dx;
      if (abs(dx) <= Scalar(0)) break;
    }
  }
  for (int i = 0; i < k / 2; ++i) {
    const Scalar h = (x[k - 1 - i] - x[i]) / 2;
    x[i] = -h;
    x[k - 1 - i] = h;
  }
  if (k % 2 == 1) x[k / 2] = Scalar(0);

  QuadratureRule<Scalar> rule;
  rule.nodes = x;
  rule.weights.resize(k);
  rule.log_weights.resize(k);
  const Scalar ln2 = log(Scalar(2));
  for (int i = 0; i < k; ++i) {
    const auto h = hermite_split(k - 1, x[i]);
    rule.log_weights[i] = -log(Scalar(k) * h.mantissa * h.mantissa) - Scalar(2 * h.exponent) * ln2;
    rule.weights[i] = exp(rule.log_weights[i]);
  }
  return rule;
}

/// Matrix Q with Q(i, j) = sqrt(w_i) h_j(x_i) for j = 0..n_max, so that
/// sum_i Q(i, j) Q(i, l) = integral of psi_j psi_l whenever j + l < 2k.
/// Entries are bounded by 1 and never pass through e^{x^2}.
template <class Scalar>
MatrixX<Scalar> hermite_table(const QuadratureRule<Scalar>& rule, int n_max) {
  using std::abs;
  using std::ldexp;
  using std::sqrt;
  const Eigen::Index k = rule.size();
  const int top = std::max<int>(n_max, static_cast<int>(k) - 1);
  MatrixX<Scalar> q(k, n_max + 1);
  std::vector<Scalar> mant(static_cast<std::size_t>(top) + 1);
  std::vector<long> ex(static_cast<std::size_t>(top) + 1);
  for (Eigen::Index i = 0; i < k; ++i) {
    detail::ScaledHermite<Scalar> rec(rule.nodes[i]);
    mant[0] = rec.cur;
    ex[0] = 0;
    for (int j = 1; j <= top; ++j) {
      rec.step();
      mant[static_cast<std::size_t>(j)] = rec.cur;
      ex[static_cast<std::size_t>(j)] = rec.exponent;
    }
    const Scalar mk = mant[static_cast<std::size_t>(k - 1)];
    const long ek = ex[static_cast<std::size_t>(k - 1)];
    const Scalar norm = Scalar(1) / (sqrt(Scalar(k)) * abs(mk));
    for (int j = 0; j <= n_max; ++j)
      q(i, j) = ldexp(mant[static_cast<std::size_t>(j)] * norm, static_cast<int>(ex[static_cast<std::size_t>(j)] - ek));
  }
  return q;
}

/// Default rule size when integrating products that involve F_{n_max}.
inline int quadrature_order_for(int n_max) { return 2 * (n_max + 8); }

/// Uniformly sampled series on t0, t0 + dt, ...
template <class T>
struct TimeSeries {
  double t0 = 0;
  double dt = 1;
  std::vector<T> values;

  std::size_t size() const { return values.size(); }
  bool empty() const { return values.empty(); }
  double time(std::size_t i) const { return t0 + dt * static_cast<double>(i); }
};

/// Uniform grid of `samples` points on [t0, t1], both ends included.
inline TimeSeries<double> uniform_grid(double t0, double t1, std::size_t samples) {
  if (!(t1 > t0)) throw std::domain_error("uniform_grid: t1 must exceed t0");
  if (samples < 2) throw std::domain_error("uniform_grid: need at least two samples");
  TimeSeries<double> g;
  g.t0 = t0;
  g.dt = (t1 - t0) / static_cast<double>(samples - 1);
  g.values.resize(samples);
  for (std::size_t i = 0; i < samples; ++i) g.values[i] = g.time(i);
  return g;
}

/// Fixed-order pairwise sum; the result depends only on the input order.
template <class T>
T pairwise_sum(std::span<const T> v) {
  constexpr std::size_t block = 8;
  if (v.size() <= block) {
    T acc{};
    for (const auto& x : v) acc += x;
    return acc;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

/// Runs fn(i) for i in [0, count) over a fixed number of workers. Each index
/// is processed independently, so results do not depend on `workers`.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn, unsigned workers = 0);

/// Default worker count (hardware concurrency, at least one).
unsigned default_workers();

struct Peak {
  double t;
  double height;
};

/// Local maxima of a uniformly sampled series, refined by three-point parabolic
/// interpolation, above `min_height` and at least `min_separation` apart
/// (taller peaks win).
std::vector<Peak> find_peaks(const TimeSeries<double>& series, double min_height, double min_separation);

/// Trapezoidal integral of uniformly spaced samples.
double trapezoid(std::span<const double> values, double dx);

struct SpectralLinePeak {
  double frequency;  // cycles per unit time
  double bin_width;
  double magnitude;
};

/// Dominant non-zero DFT line of a real series after removing its mean. With
/// pad > 1 the series is zero-padded to pad times its length, which samples the
/// spectrum between record bins; bin_width stays 1/(N dt).
SpectralLinePeak dominant_frequency(const TimeSeries<double>& series, std::size_t pad = 1);

}  // namespace dirac

#endif  // DIRAC_NUMERICS_HPP
