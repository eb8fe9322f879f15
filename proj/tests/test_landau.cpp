#include "dirac/landau.hpp"

#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <random>

using namespace dirac;

namespace {

const Branch kBranches[] = {Branch::positive, Branch::negative};
const Spin kSpins[] = {Spin::up, Spin::down};

// Trapezoid overlap matrix of the given spinors on [-L, L], measure ds/sqrt(eB).
Eigen::MatrixXd trapezoid_gram(const std::vector<LevelIndex>& levels, const PhysicalParams& p, double L, int ns) {
  const double h = 2 * L / (ns - 1);
  Eigen::MatrixXd X(4 * ns, levels.size());
  for (std::size_t k = 0; k < levels.size(); ++k)
    for (int i = 0; i < ns; ++i) {
      const Bispinor u = spinor(levels[k], -L + h * i, p);
      const double w = std::sqrt(((i == 0 || i == ns - 1) ? 0.5 : 1.0) * h / std::sqrt(p.eB));
      for (int c = 0; c < 4; ++c) {
        REQUIRE(u[c].imag() == 0);
        X(4 * i + c, k) = w * u[c].real();
      }
    }
  return X.transpose() * X;
}

}  // namespace

TEST_CASE("energy examples") {
  CHECK(energy(0, {5, 0, 1}) == doctest::Approx(5).epsilon(1e-15));
  CHECK(energy(12, {0, 0, 1}) == doctest::Approx(std::sqrt(24.0)).epsilon(1e-15));
  CHECK(energy(12, {0, 0, 1}) == doctest::Approx(4.898979).epsilon(1e-6));
  CHECK(energy(13, {0, 10.2, 1}) == doctest::Approx(std::sqrt(130.04)).epsilon(1e-15));
  CHECK(energy(13, {0, 10.2, 1}) == doctest::Approx(11.4035).epsilon(1e-5));
}

TEST_CASE("signed energy follows the branch") {
  const PhysicalParams p{1.5, 0.3, 2};
  CHECK(signed_energy({4, Branch::positive, Spin::down}, p) == energy(4, p));
  CHECK(signed_energy({4, Branch::negative, Spin::up}, p) == -energy(4, p));
}

TEST_CASE("energy is increasing and bounded below") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 10);
  for (int k = 0; k < 50; ++k) {
    const PhysicalParams p{u(rng), u(rng) - 5, 0.1 + u(rng)};
    const double floor = std::hypot(p.mass, p.kz);
    double prev = energy(0, p);
    CHECK(prev >= floor * (1 - 1e-15));
    for (int n = 1; n < 200; ++n) {
      const double e = energy(n, p);
      CHECK(e > prev);
      prev = e;
    }
  }
}

TEST_CASE("one-particle parameters: limits") {
  for (int n : {1, 2, 17, 400}) {
    CHECK(one_particle_params(n, {2.0, 0.0, 1.3}).A == 0);
    CHECK(one_particle_params(n, {0.0, 3.7, 0.4}).eta == doctest::Approx(0.5).epsilon(1e-15));
  }
  CHECK_THROWS_AS(one_particle_params(0, {}), std::domain_error);
}

TEST_CASE("one-particle parameters: constraint over random draws") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> level(1, 10000);
  std::uniform_real_distribution<double> mass(0, 20), kz(-20, 20), eb(0.01, 10);
  double worst = 0;
  for (int k = 0; k < 1000; ++k) {
    const PhysicalParams p{mass(rng), kz(rng), eb(rng)};
    const int n = level(rng);
    const auto op = one_particle_params(n, p);
    worst = std::max(worst, std::abs(op.eta * (op.A * op.A + op.B * op.B + 1) - 1));
    // A carries the sign of kz.
    CHECK(std::abs(op.A) <= 1);
    CHECK(op.A * p.kz >= 0);
    CHECK(op.B >= 0);
    CHECK(op.B <= 1);
    CHECK(op.eta > 0);
    CHECK(op.eta <= 1);
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("A nonincreasing, B nondecreasing in n") {
  for (const PhysicalParams& p : {PhysicalParams{0, 3, 1}, PhysicalParams{5, 1, 0.5}, PhysicalParams{0.2, 10.2, 2}}) {
    auto prev = one_particle_params(1, p);
    for (int n = 2; n <= 500; ++n) {
      const auto op = one_particle_params(n, p);
      CHECK(std::abs(op.A) <= std::abs(prev.A));
      CHECK(op.B >= prev.B);
      prev = op;
    }
  }
}

TEST_CASE("one-particle parameters match their definitions") {
  const PhysicalParams p{1.1, -0.7, 2.5};
  for (int n : {1, 5, 33}) {
    const double e = energy(n, p);
    const auto op = one_particle_params(n, p);
    CHECK(op.A == doctest::Approx(p.kz / (e + p.mass)).epsilon(1e-14));
    CHECK(op.B == doctest::Approx(std::sqrt(2 * n * p.eB) / (e + p.mass)).epsilon(1e-14));
    CHECK(op.eta == doctest::Approx((e + p.mass) / (2 * e)).epsilon(1e-14));
  }
}

TEST_CASE("spinor at large mass reduces to the first component") {
  const PhysicalParams p{1e6, 0, 1};
  for (double s : {-1.0, 0.0, 0.7}) {
    const Bispinor u = spinor({1, Branch::positive, Spin::up}, s, p);
    CHECK(u[0].real() == doctest::Approx(hermite_fn(0, s)).epsilon(1e-6));
    CHECK(std::abs(u[1]) == 0);
    CHECK(std::abs(u[2]) == 0);
    CHECK(std::abs(u[3]) < 1e-3);
  }
}

TEST_CASE("spinor components follow the tabulated forms") {
  const PhysicalParams p{0.8, 0.6, 1.7};
  const int n = 4;
  const double s = 0.9;
  const auto op = one_particle_params(n, p);
  const HermiteScale<double> sc(p.eB);
  const double fp = hermite_fn(n - 1, s, sc), f = hermite_fn(n, s, sc), r = std::sqrt(op.eta);
  auto check = [&](LevelIndex lv, std::array<double, 4> want) {
    const Bispinor u = spinor(lv, s, p);
    for (int c = 0; c < 4; ++c) CHECK(u[c].real() == doctest::Approx(r * want[c]).epsilon(1e-14));
  };
  check({n, Branch::positive, Spin::up}, {fp, 0, op.A * fp, -op.B * f});
  check({n, Branch::positive, Spin::down}, {0, f, -op.B * fp, -op.A * f});
  check({n, Branch::negative, Spin::up}, {op.B * fp, op.A * f, 0, f});
  check({n, Branch::negative, Spin::down}, {-op.A * fp, op.B * f, fp, 0});
  CHECK_THROWS_AS(spinor({0, Branch::positive, Spin::up}, 0.0, p), std::domain_error);
}

TEST_CASE("four labels at n = 3 are orthonormal") {
  const PhysicalParams p{1, 0.5, 1};
  std::vector<LevelIndex> lv;
  for (auto r : kBranches)
    for (auto nu : kSpins) lv.push_back({3, r, nu});
  const Eigen::MatrixXd g = trapezoid_gram(lv, p, 14, 4001);
  CHECK((g - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("basis orthonormality up to n = 60") {
  for (const PhysicalParams& p : {PhysicalParams{0, 0, 1}, PhysicalParams{2, 1.3, 2.5}}) {
    std::vector<LevelIndex> lv;
    for (int n = 1; n <= 60; ++n)
      for (auto r : kBranches)
        for (auto nu : kSpins) lv.push_back({n, r, nu});
    // Oscillator turning point sqrt(2n+1) ~ 11; the grid reaches well past it.
    const Eigen::MatrixXd g = trapezoid_gram(lv, p, 22, 3001);
    CHECK((g - Eigen::MatrixXd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("energy derivatives") {
  const auto d = energy_derivatives(12, {0, 0, 1});
  CHECK(d.first == doctest::Approx(1 / std::sqrt(24.0)).epsilon(1e-15));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0, 5);
  for (int k = 0; k < 40; ++k) {
    const PhysicalParams p{u(rng), u(rng), 0.2 + u(rng)};
    const double n0 = 2 + 10 * u(rng);
    const auto dd = energy_derivatives(n0, p);
    CHECK(dd.second < 0);
    // Differences in 50-digit arithmetic so only the O(h^2) truncation remains.
    using big = boost::multiprecision::cpp_bin_float_50;
    const big h("1e-3"), x = n0;
    auto E = [&](const big& n) { return sqrt(big(p.mass) * p.mass + big(p.kz) * p.kz + 2 * n * big(p.eB)); };
    const double f1 = static_cast<double>((E(x + h) - E(x - h)) / (2 * h));
    const double f2 = static_cast<double>((E(x + h) - 2 * E(x) + E(x - h)) / (h * h));
    const double f3 = static_cast<double>((E(x + 2 * h) - 2 * E(x + h) + 2 * E(x - h) - E(x - 2 * h)) / (2 * h * h * h));
    CHECK(std::abs(f1 / dd.first - 1) < 1e-6);
    CHECK(std::abs(f2 / dd.second - 1) < 1e-6);
    CHECK(std::abs(f3 / dd.third - 1) < 1e-6);
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((PhysicalParams{0, 0, 0}).validate(), std::domain_error);
  CHECK_THROWS_AS((PhysicalParams{-1, 0, 1}).validate(), std::domain_error);
  CHECK_THROWS_AS((PhysicalParams{0, NAN, 1}).validate(), std::domain_error);
  CHECK_NOTHROW((PhysicalParams{0, -3, 1}).validate());
  CHECK(to_string(LevelIndex{3, Branch::negative, Spin::down}).find('3') != std::string::npos);
}
