#include "dirac/catstate.hpp"

#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numbers>

namespace dirac {

std::string to_string(Symmetry s) { return s == Symmetry::S ? "S" : "A"; }

Symmetry parse_symmetry(const std::string& text) {
  if (text.size() == 1) {
    const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
    if (c == 'S') return Symmetry::S;
    if (c == 'A') return Symmetry::A;
  }
  throw std::invalid_argument("symmetry must be S or A, got '" + text + "'");
}

void CatSpec::validate() const {
  params.validate();
  if (!std::isfinite(a) || a < 0) throw std::domain_error("CatSpec: a must be finite and non-negative");
  if (symmetry == Symmetry::A && a == 0)
    throw std::domain_error("CatSpec: antisymmetric cat state vanishes at a = 0");
}

int CatExpansion::max_level() const {
  int n = 0;
  for (const auto& t : terms) n = std::max(n, t.level.n);
  return n;
}

int CatExpansion::min_level() const {
  int n = terms.empty() ? 0 : terms.front().level.n;
  for (const auto& t : terms) n = std::min(n, t.level.n);
  return n;
}

double CatExpansion::coefficient(const LevelIndex& level) const {
  for (const auto& t : terms)
    if (t.level == level) return t.coefficient;
  return 0.0;
}

namespace {

// ln cosh(x), ln sinh(x) for x >= 0 without overflow.
double log_cosh(double x) { return x < 20 ? std::log(std::cosh(x)) : x - std::numbers::ln2 + std::log1p(std::exp(-2 * x)); }
double log_sinh(double x) { return x < 20 ? std::log(std::sinh(x)) : x - std::numbers::ln2 + std::log1p(-std::exp(-2 * x)); }

// Emission order inside a level: (r=1,+), (r=1,-), (r=2,+), (r=2,-).
constexpr std::array<LevelIndex, 4> labels_of(int n) {
  return {LevelIndex{n, Branch::positive, Spin::up}, LevelIndex{n, Branch::positive, Spin::down},
          LevelIndex{n, Branch::negative, Spin::up}, LevelIndex{n, Branch::negative, Spin::down}};
}

void renormalize(CatExpansion& e) {
  std::vector<double> sq;
  sq.reserve(e.terms.size());
  for (const auto& t : e.terms) sq.push_back(t.coefficient * t.coefficient);
  e.raw_norm_sq = pairwise_sum<double>(sq);
  if (!(e.raw_norm_sq > 0)) throw std::domain_error("cat expansion: null state");
  const double inv = 1.0 / std::sqrt(e.raw_norm_sq);
  for (auto& t : e.terms) t.coefficient *= inv;
}

}  // namespace

double cat_norm_sq(Symmetry sym, double a) {
  const double g = std::exp(-a * a);
  return sym == Symmetry::S ? (1 + g) / 2 : -std::expm1(-a * a) / 2;
}

OscillatorAmplitudes oscillator_amplitudes(Symmetry sym, double a, double tail_eps) {
  if (!(tail_eps > 0 && tail_eps <= 1e-6)) throw std::domain_error("tail_eps must lie in (0, 1e-6]");
  if (!(a >= 0) || !std::isfinite(a)) throw std::domain_error("a must be finite and non-negative");
  if (sym == Symmetry::A && a == 0) throw std::domain_error("antisymmetric cat state vanishes at a = 0");
  OscillatorAmplitudes out;
  if (a == 0) {
    out.m = {0};
    out.d = {1.0};
    return out;
  }
  const double x = a * a / 2;
  const double log_norm = sym == Symmetry::S ? log_cosh(x) : log_sinh(x);
  const int start = sym == Symmetry::S ? 0 : 1;

  std::vector<int> ms;
  std::vector<double> w;
  for (int m = start;; m += 2) {
    const double lw = m * std::log(x) - std::lgamma(m + 1.0) - log_norm;
    ms.push_back(m);
    w.push_back(std::exp(lw));
    // Beyond the peak the terms fall faster than geometrically.
    if (m > x + 2 && lw < std::log(tail_eps) - 40) break;
  }
  std::size_t lo = 0, hi = w.size();
  double cut_lo = 0, cut_hi = 0;
  while (lo < hi && cut_lo + w[lo] < tail_eps / 2) cut_lo += w[lo++];
  while (hi > lo && cut_hi + w[hi - 1] < tail_eps / 2) cut_hi += w[--hi];
  for (std::size_t i = lo; i < hi; ++i) {
    out.m.push_back(ms[i]);
    out.d.push_back(std::sqrt(w[i]));
  }
  out.discarded = cut_lo + cut_hi;
  return out;
}

CatExpansion expand(const CatSpec& spec, double tail_eps) {
  spec.validate();
  const auto osc = oscillator_amplitudes(spec.symmetry, spec.a, tail_eps);
  CatExpansion e;
  e.spec = spec;
  e.tail_eps = tail_eps;
  for (std::size_t i = 0; i < osc.m.size(); ++i) {
    const int n = osc.m[i] + 1;
    const auto [A, B, eta] = one_particle_params(n, spec.params);
    const double base = std::sqrt(eta) * osc.d[i];
    const double c[4] = {base, 0.0, B * base, -A * base};
    const auto labels = labels_of(n);
    for (int j = 0; j < 4; ++j)
      if (c[j] != 0.0) e.terms.push_back({labels[static_cast<std::size_t>(j)], c[j]});
  }
  renormalize(e);
  return e;
}

int default_oracle_levels(const CatSpec& spec, double tail_eps) {
  const auto osc = oscillator_amplitudes(spec.symmetry, spec.a, tail_eps);
  return osc.m.back() + 1 + 8;
}

CatExpansion expand_oracle(const CatSpec& spec, int n_max) {
  spec.validate();
  if (n_max < 1) throw std::domain_error("expand_oracle: n_max must be at least 1");
  const auto rule = gauss_hermite(quadrature_order_for(n_max));
  const double a = spec.a;
  const double sign = spec.symmetry == Symmetry::S ? 1.0 : -1.0;
  const double ln2 = std::numbers::ln2;

  // J_m(b) = integral psi_0(s - b) psi_m(s) ds. With s = y + b/2 the two
  // Gaussians combine to e^{-y^2 - b^2/4}, leaving a degree-m polynomial in y.
  auto overlaps = [&](double b) {
    std::vector<std::vector<double>> per_node(static_cast<std::size_t>(rule.size()));
    std::vector<double> out(static_cast<std::size_t>(n_max), 0.0);
    for (Eigen::Index i = 0; i < rule.size(); ++i) {
      detail::ScaledHermite<double> rec(rule.nodes[i] + b / 2);
      auto& col = per_node[static_cast<std::size_t>(i)];
      col.resize(static_cast<std::size_t>(n_max));
      for (int m = 0; m < n_max; ++m) {
        if (m > 0) rec.step();
        col[static_cast<std::size_t>(m)] =
            rec.cur * std::exp(rule.log_weights[i] + static_cast<double>(rec.exponent) * ln2 - b * b / 4);
      }
    }
    const double pref = std::pow(std::numbers::pi, -0.25);
    std::vector<double> terms(static_cast<std::size_t>(rule.size()));
    for (int m = 0; m < n_max; ++m) {
      for (Eigen::Index i = 0; i < rule.size(); ++i)
        terms[static_cast<std::size_t>(i)] = per_node[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)];
      out[static_cast<std::size_t>(m)] = pref * pairwise_sum<double>(terms);
    }
    return out;
  };
  const auto jp = overlaps(a);
  const auto jm = overlaps(-a);

  CatExpansion e;
  e.spec = spec;
  e.tail_eps = 0;
  for (int n = 1; n <= n_max; ++n) {
    // Overlap of the normalized-measure profile with psi_{n-1}.
    const double dm = 0.5 * (jp[static_cast<std::size_t>(n - 1)] + sign * jm[static_cast<std::size_t>(n - 1)]);
    for (const auto& lv : labels_of(n)) {
      const SpinorShape sh = spinor_shape(lv, spec.params);
      // Only the first component of the initial spinor is populated.
      const double c = sh.coef[0] * dm;
      if (c != 0.0) e.terms.push_back({lv, c});
    }
  }
  renormalize(e);
  return e;
}

double cat_profile_unnormalized(const CatSpec& spec, double s) {
  const double sign = spec.symmetry == Symmetry::S ? 1.0 : -1.0;
  const double pref = 0.5 * std::pow(spec.params.eB / std::numbers::pi, 0.25);
  return pref * (std::exp(-0.5 * (s - spec.a) * (s - spec.a)) + sign * std::exp(-0.5 * (s + spec.a) * (s + spec.a)));
}

double cat_profile(const CatSpec& spec, double s) {
  return cat_profile_unnormalized(spec, s) / std::sqrt(cat_norm_sq(spec.symmetry, spec.a));
}

double SpectralFunction::total_weight() const {
  std::vector<double> w;
  for (const auto& l : lines) w.push_back(l.weight);
  return pairwise_sum<double>(w);
}

double SpectralFunction::negative_weight() const {
  std::vector<double> w;
  for (const auto& l : lines)
    if (l.energy < 0) w.push_back(l.weight);
  return pairwise_sum<double>(w);
}

SpectralFunction spectral_function(const CatExpansion& exp) {
  std::map<std::pair<int, int>, double> acc;
  for (const auto& t : exp.terms) acc[{t.level.n, static_cast<int>(t.level.r)}] += t.coefficient * t.coefficient;
  SpectralFunction sf;
  for (const auto& [key, w] : acc) {
    if (w == 0.0) continue;
    const double e = energy(key.first, exp.spec.params);
    sf.lines.push_back({key.second == 1 ? e : -e, w});
  }
  std::sort(sf.lines.begin(), sf.lines.end(), [](const auto& x, const auto& y) { return x.energy < y.energy; });
  return sf;
}

std::vector<LevelWeight> level_weights(const CatExpansion& exp) {
  std::map<int, LevelWeight> acc;
  for (const auto& t : exp.terms) {
    auto& lw = acc.try_emplace(t.level.n, LevelWeight{t.level.n, 0.0, 0.0}).first->second;
    (t.level.r == Branch::positive ? lw.positive : lw.negative) += t.coefficient * t.coefficient;
  }
  std::vector<LevelWeight> out;
  for (const auto& [n, lw] : acc) out.push_back(lw);
  return out;
}

namespace {

struct FitFunctor {
  using Scalar = double;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;

  std::vector<double> m;
  std::vector<double> w;
  std::vector<double> total;

  int inputs() const { return 2; }
  int values() const { return static_cast<int>(m.size()); }

  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& f) const {
    const double n0 = x[0];
    const double dn = std::abs(x[1]);
    const double norm = 2.0 / (dn * std::sqrt(std::numbers::pi));
    for (std::size_t i = 0; i < m.size(); ++i) {
      const double z = (m[i] - n0) / dn;
      f[static_cast<Eigen::Index>(i)] = total[i] * norm * std::exp(-z * z) - w[i];
    }
    return 0;
  }
};

}  // namespace

LevelFit gaussian_fit(const CatExpansion& exp) {
  const auto lw = level_weights(exp);
  double tot_pos = 0, tot_neg = 0;
  int populated = 0;
  for (const auto& l : lw) {
    tot_pos += l.positive;
    tot_neg += l.negative;
    if (l.positive + l.negative > 1e-10) ++populated;
  }
  if (populated < 5) throw DegenerateFitError("gaussian_fit: fewer than 5 populated levels");

  FitFunctor fn;
  double mean = 0, mean2 = 0;
  for (const auto& l : lw) {
    const double m = l.n - 1.0;
    const double w = l.positive + l.negative;
    mean += w * m;
    mean2 += w * m * m;
    for (const auto& [part, tot] : {std::pair{l.positive, tot_pos}, std::pair{l.negative, tot_neg}}) {
      if (tot <= 0) continue;
      fn.m.push_back(m);
      fn.w.push_back(part);
      fn.total.push_back(tot);
    }
  }
  const double total = tot_pos + tot_neg;
  mean /= total;
  const double var = std::max(mean2 / total - mean * mean, 1e-12);

  Eigen::VectorXd x(2);
  x << mean, std::sqrt(2.0 * var);
  Eigen::NumericalDiff<FitFunctor> nd(fn);
  Eigen::LevenbergMarquardt<Eigen::NumericalDiff<FitFunctor>> lm(nd);
  lm.parameters.xtol = 1e-14;
  lm.parameters.ftol = 1e-14;
  lm.minimize(x);

  Eigen::VectorXd f(fn.values());
  fn(x, f);
  const double rms = std::sqrt(f.squaredNorm() / static_cast<double>(f.size()));
  if (!std::isfinite(x[0]) || !std::isfinite(x[1]) || x[1] == 0)
    throw DegenerateFitError("gaussian_fit: solver did not converge");
  return {x[0], std::abs(x[1]), rms};
}

}  // namespace dirac
