#include "dirac/observables.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <utility>

namespace dirac {

namespace {

using cd = std::complex<double>;
using Matrix2c = Eigen::Matrix<cd, 2, 2>;

constexpr std::array<std::pair<Generator, std::string_view>, 17> kNames{{
    {Generator::identity, "identity"},
    {Generator::gamma0, "gamma0"},
    {Generator::gamma5, "gamma5"},
    {Generator::i_gamma0_gamma5, "i_gamma0_gamma5"},
    {Generator::alpha_x, "alpha_x"},
    {Generator::alpha_y, "alpha_y"},
    {Generator::alpha_z, "alpha_z"},
    {Generator::i_gamma_x, "i_gamma_x"},
    {Generator::i_gamma_y, "i_gamma_y"},
    {Generator::i_gamma_z, "i_gamma_z"},
    {Generator::gamma5_gamma_x, "gamma5_gamma_x"},
    {Generator::gamma5_gamma_y, "gamma5_gamma_y"},
    {Generator::gamma5_gamma_z, "gamma5_gamma_z"},
    {Generator::gamma5_alpha_x, "gamma5_alpha_x"},
    {Generator::gamma5_alpha_y, "gamma5_alpha_y"},
    {Generator::gamma5_alpha_z, "gamma5_alpha_z"},
    {Generator::gamma0_sigma_z, "gamma0_sigma_z"},
}};

Matrix2c pauli(int i) {
  Matrix2c m = Matrix2c::Zero();
  const cd I(0, 1);
  switch (i) {
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -I, I, 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: m.setIdentity();
  }
  return m;
}

Matrix4c blocks(const Matrix2c& a, const Matrix2c& b, const Matrix2c& c, const Matrix2c& d) {
  Matrix4c m;
  m << a, b, c, d;
  return m;
}

Matrix4c gamma0() { return blocks(pauli(0), Matrix2c::Zero(), Matrix2c::Zero(), -pauli(0)); }
Matrix4c gamma5() { return blocks(Matrix2c::Zero(), pauli(0), pauli(0), Matrix2c::Zero()); }
// Contravariant gamma^i.
Matrix4c gamma_v(int i) { return blocks(Matrix2c::Zero(), pauli(i), -pauli(i), Matrix2c::Zero()); }
Matrix4c alpha(int i) { return gamma0() * gamma_v(i); }

}  // namespace

const std::vector<Generator>& basis_generators() {
  static const std::vector<Generator> g = [] {
    std::vector<Generator> v;
    for (const auto& [gen, name] : kNames)
      if (gen != Generator::gamma0_sigma_z) v.push_back(gen);
    return v;
  }();
  return g;
}

const std::vector<Generator>& all_generators() {
  static const std::vector<Generator> g = [] {
    std::vector<Generator> v;
    for (const auto& [gen, name] : kNames) v.push_back(gen);
    return v;
  }();
  return g;
}

std::string_view generator_name(Generator g) {
  for (const auto& [gen, name] : kNames)
    if (gen == g) return name;
  return "unknown";
}

std::optional<Generator> parse_generator(std::string_view name) {
  for (const auto& [gen, n] : kNames)
    if (n == name) return gen;
  return std::nullopt;
}

Matrix4c generator_matrix(Generator g) {
  const cd I(0, 1);
  switch (g) {
    case Generator::identity: return Matrix4c::Identity();
    case Generator::gamma0: return gamma0();
    case Generator::gamma5: return gamma5();
    case Generator::i_gamma0_gamma5: return I * gamma0() * gamma5();
    case Generator::alpha_x: return alpha(1);
    case Generator::alpha_y: return alpha(2);
    case Generator::alpha_z: return alpha(3);
    case Generator::i_gamma_x: return I * gamma_v(1);
    case Generator::i_gamma_y: return I * gamma_v(2);
    case Generator::i_gamma_z: return I * gamma_v(3);
    case Generator::gamma5_gamma_x: return gamma5() * gamma_v(1);
    case Generator::gamma5_gamma_y: return gamma5() * gamma_v(2);
    case Generator::gamma5_gamma_z: return gamma5() * gamma_v(3);
    case Generator::gamma5_alpha_x: return gamma5() * alpha(1);
    case Generator::gamma5_alpha_y: return gamma5() * alpha(2);
    case Generator::gamma5_alpha_z: return gamma5() * alpha(3);
    case Generator::gamma0_sigma_z: return gamma0() * gamma5() * alpha(3);
  }
  return Matrix4c::Zero();
}

bool is_block_diagonal(Generator g) {
  const Matrix4c m = generator_matrix(g);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      if ((a % 2) != (b % 2) && m(a, b) != cd(0)) return false;
  return true;
}

namespace {

MatrixX<double> gram(int n_max) {
  const auto rule = gauss_hermite(quadrature_order_for(n_max));
  const auto q = hermite_table(rule, n_max);
  return q.transpose() * q;
}

// One table per level bound, shared by single-element queries.
const MatrixX<double>& cached_gram(int n_max) {
  static std::mutex mu;
  static std::map<int, MatrixX<double>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n_max);
  if (it == cache.end()) it = cache.emplace(n_max, gram(n_max)).first;
  return it->second;
}

cd bilinear(const Matrix4c& m, const SpinorShape& a, const SpinorShape& b, const MatrixX<double>& g) {
  cd acc = 0;
  for (int i = 0; i < 4; ++i) {
    if (a.coef[static_cast<std::size_t>(i)] == 0) continue;
    for (int j = 0; j < 4; ++j) {
      if (b.coef[static_cast<std::size_t>(j)] == 0 || m(i, j) == cd(0)) continue;
      acc += a.coef[static_cast<std::size_t>(i)] * m(i, j) * b.coef[static_cast<std::size_t>(j)] *
             g(a.order[static_cast<std::size_t>(i)], b.order[static_cast<std::size_t>(j)]);
    }
  }
  return acc;
}

}  // namespace

cd matrix_element(Generator g, const LevelIndex& lv1, const LevelIndex& lv2, const PhysicalParams& p) {
  const auto s1 = spinor_shape(lv1, p);
  const auto s2 = spinor_shape(lv2, p);
  return bilinear(generator_matrix(g), s1, s2, cached_gram(std::max(lv1.n, lv2.n)));
}

ObservableEngine::ObservableEngine(const CatExpansion& exp, std::vector<Generator> generators)
    : exp_(exp), gens_(std::move(generators)) {
  const auto& p = exp_.spec.params;
  const auto g = gram(exp_.max_level());
  std::vector<SpinorShape> shapes;
  std::vector<double> omega;
  for (const auto& t : exp_.terms) {
    shapes.push_back(spinor_shape(t.level, p));
    omega.push_back(signed_energy(t.level, p));
  }
  pairs_.resize(gens_.size());
  for (std::size_t k = 0; k < gens_.size(); ++k) {
    const Matrix4c m = generator_matrix(gens_[k]);
    for (std::size_t i = 0; i < exp_.terms.size(); ++i)
      for (std::size_t j = 0; j < exp_.terms.size(); ++j) {
        if (std::abs(exp_.terms[i].level.n - exp_.terms[j].level.n) > 1) continue;
        const cd me = bilinear(m, shapes[i], shapes[j], g);
        if (me == cd(0)) continue;
        pairs_[k].push_back({exp_.terms[i].coefficient * exp_.terms[j].coefficient * me, omega[j] - omega[i]});
      }
  }
}

double ObservableEngine::expectation(Generator g, double t) const {
  for (std::size_t k = 0; k < gens_.size(); ++k) {
    if (gens_[k] != g) continue;
    std::vector<cd> z(pairs_[k].size());
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = pairs_[k][i].weight * std::polar(1.0, pairs_[k][i].domega * t);
    return pairwise_sum<cd>(z).real();
  }
  throw std::invalid_argument("ObservableEngine: generator " + std::string(generator_name(g)) + " not prepared");
}

ObservableSeries expectation_series(const CatExpansion& exp, Generator g, double t0, double t1, std::size_t samples,
                                    unsigned workers) {
  const ObservableEngine eng(exp, {g});
  const auto grid = uniform_grid(t0, t1, samples);
  ObservableSeries out{g, {grid.t0, grid.dt, std::vector<double>(samples)}};
  parallel_for(samples, [&](std::size_t i) { out.series.values[i] = eng.expectation(g, grid.values[i]); }, workers);
  return out;
}

std::optional<double> closed_form_expectation(const CatExpansion& exp, Generator g, double t) {
  const auto& p = exp.spec.params;
  std::vector<double> terms;
  double base = 0, scale = 1;
  for (const auto& term : exp.terms) {
    if (term.level.r != Branch::positive || term.level.nu != Spin::up) continue;
    const int n = term.level.n;
    const auto op = one_particle_params(n, p);
    const double e = energy(n, p);
    const double w = term.coefficient * term.coefficient / op.eta;
    const double sn = std::sin(e * t);
    const double eta2 = op.eta * op.eta;
    switch (g) {
      case Generator::gamma0: terms.push_back(w * eta2 * (op.A * op.A + op.B * op.B) * sn * sn); break;
      case Generator::gamma5_alpha_z: terms.push_back(w * eta2 * op.B * op.B * sn * sn); break;
      case Generator::gamma5_gamma_z:
      case Generator::gamma0_sigma_z: terms.push_back(w * eta2 * op.A * op.A * sn * sn); break;
      case Generator::i_gamma_z:
      case Generator::i_gamma0_gamma5: terms.push_back(w * op.eta * op.A * std::sin(2 * e * t)); break;
      case Generator::alpha_z:
      case Generator::gamma5: terms.push_back(w * op.eta * op.A * sn * sn / e); break;
      default: return std::nullopt;
    }
  }
  switch (g) {
    case Generator::gamma0:
    case Generator::gamma5_alpha_z:
    case Generator::gamma0_sigma_z: base = 1; scale = -8; break;
    case Generator::gamma5_gamma_z: base = -1; scale = 8; break;
    case Generator::i_gamma_z:
    case Generator::i_gamma0_gamma5: scale = -2; break;
    case Generator::alpha_z:
    case Generator::gamma5: scale = 4 * p.mass; break;
    default: return std::nullopt;
  }
  return base + scale * pairwise_sum<double>(terms);
}

double concurrence_sq(double gamma0, double sigma_z) {
  // Clamp rounding residue at the product-state points.
  return std::clamp((1 + gamma0) * (1 - sigma_z) / 2, 0.0, 1.0);
}

double concurrence_sq(const ObservableEngine& eng, double t) {
  return concurrence_sq(eng.expectation(Generator::gamma0, t), eng.expectation(Generator::gamma5_alpha_z, t));
}

double mutual_information(double g0, double g0sz, double sz, double igz, double az) {
  return 2 - 0.5 * ((1 + g0) * (1 + g0) + (g0sz + 1) * (g0sz + 1) + (sz - 1) * (sz - 1) - igz * igz - 4 * az * az);
}

double mutual_information(const ObservableEngine& eng, double t) {
  return mutual_information(eng.expectation(Generator::gamma0, t), eng.expectation(Generator::gamma0_sigma_z, t),
                            eng.expectation(Generator::gamma5_alpha_z, t), eng.expectation(Generator::i_gamma_z, t),
                            eng.expectation(Generator::alpha_z, t));
}

}  // namespace dirac
