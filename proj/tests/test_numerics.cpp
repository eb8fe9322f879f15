#include "doctest.h"

#include "dirac/numerics.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace dirac;
using boost::multiprecision::cpp_bin_float_50;

namespace {

// Raw physicists' Hermite recurrence in 50 digits, normalized at the end.
double hermite_oracle(int n, double s_in, double eB) {
  using F = cpp_bin_float_50;
  const F s = s_in;
  F h0 = 1, h1 = 2 * s;
  if (n == 0) h1 = h0;
  for (int k = 1; k < n; ++k) {
    F h2 = 2 * s * h1 - 2 * F(k) * h0;
    h0 = h1;
    h1 = h2;
  }
  F fact = 1;
  for (int k = 2; k <= n; ++k) fact *= k;
  const F pi = boost::multiprecision::acos(F(-1));
  const F norm = boost::multiprecision::sqrt(boost::multiprecision::sqrt(F(eB)) / (fact * boost::multiprecision::pow(F(2), n) * boost::multiprecision::sqrt(pi)));
  return static_cast<double>(norm * boost::multiprecision::exp(-s * s / 2) * h1);
}

}  // namespace

TEST_CASE("hermite_fn known values") {
  CHECK(hermite_fn(0, 0.0) == doctest::Approx(std::pow(std::numbers::pi, -0.25)).epsilon(1e-15));
  CHECK(hermite_fn(1, 0.0) == 0.0);
  CHECK(std::abs(hermite_fn(0, 0.0) - 0.751126) < 1e-6);
}

TEST_CASE("hermite_fn matches extended precision recurrence") {
  for (auto [n, s] : {std::pair{200, 3.0}, {200, -7.5}, {57, 1.3}, {3, 0.4}, {500, 20.0}}) {
    const double ref = hermite_oracle(n, s, 1.0);
    CHECK(std::abs(hermite_fn(n, s) - ref) <= 1e-10 * std::abs(ref));
  }
  const double ref = hermite_oracle(200, 3.0, 2.5);
  CHECK(std::abs(hermite_fn(200, 3.0, HermiteScale<double>(2.5)) - ref) <= 1e-10 * std::abs(ref));
}

TEST_CASE("hermite_fn stays finite at large order and argument") {
  for (int n : {1000, 5000, 10000}) {
    for (double s : {0.0, 10.0, std::sqrt(2.0 * n), 200.0}) {
      const double v = hermite_fn(n, s);
      CHECK(std::isfinite(v));
      CHECK(std::abs(v) < 1.0);
    }
  }
  CHECK(hermite_fn(5, 60.0) == doctest::Approx(0.0));
}

TEST_CASE("hermite_fn domain errors") {
  CHECK_THROWS_AS(hermite_fn(-1, 0.0), std::domain_error);
  CHECK_THROWS_AS(hermite_fn(2, std::nan("")), std::domain_error);
  CHECK_THROWS_AS(HermiteScale<double>(0.0), std::domain_error);
  CHECK_THROWS_AS(HermiteScale<double>(-1.0), std::domain_error);
}

TEST_CASE("hermite_fns agrees with single evaluations") {
  for (double s : {0.0, 2.2, -15.0, 40.0}) {
    const auto all = hermite_fns(400, s, HermiteScale<double>(1.7));
    for (int n : {0, 1, 7, 150, 399, 400}) CHECK(all[n] == hermite_fn(n, s, HermiteScale<double>(1.7)));
  }
}

TEST_CASE("parity") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> us(-25, 25);
  for (int i = 0; i < 200; ++i) {
    const int n = static_cast<int>(rng() % 400);
    const double s = us(rng);
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    const double a = hermite_fn(n, s), b = hermite_fn(n, -s);
    CHECK(std::abs(b - sign * a) <= 1e-13);
  }
}

TEST_CASE("scale covariance") {
  for (double c : {0.25, 3.0, 10.0}) {
    for (int n : {0, 4, 33}) {
      const double s = 1.1;
      CHECK(hermite_fn(n, s, HermiteScale<double>(c * 2.0)) ==
            doctest::Approx(std::pow(c, 0.25) * hermite_fn(n, s, HermiteScale<double>(2.0))).epsilon(1e-14));
    }
  }
}

TEST_CASE("gauss_hermite small rules") {
  const double sqpi = std::sqrt(std::numbers::pi);
  auto r1 = gauss_hermite(1);
  REQUIRE(r1.size() == 1);
  CHECK(r1.nodes[0] == 0.0);
  CHECK(r1.weights[0] == doctest::Approx(sqpi).epsilon(1e-15));

  auto r2 = gauss_hermite(2);
  CHECK(r2.nodes[0] == doctest::Approx(-1 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(r2.nodes[1] == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(r2.weights[0] == doctest::Approx(sqpi / 2).epsilon(1e-15));
  CHECK(r2.weights[1] == doctest::Approx(sqpi / 2).epsilon(1e-15));
  const double m2 = r2.integrate_weighted([](double x) { return x * x; });
  CHECK(std::abs(m2 - sqpi / 2) < 1e-14);

  CHECK_THROWS_AS(gauss_hermite(0), std::domain_error);
}

TEST_CASE("gauss_hermite rule invariants") {
  for (int k : {3, 10, 41, 100, 250, 616}) {
    const auto r = gauss_hermite(k);
    double sum = 0;
    for (int i = 0; i < k; ++i) {
      CHECK(std::isfinite(r.log_weights[i]));
      CHECK(r.weights[i] >= 0);
      sum += r.weights[i];
      if (i > 0) CHECK(r.nodes[i] > r.nodes[i - 1]);
      CHECK(r.nodes[i] == -r.nodes[k - 1 - i]);
    }
    CHECK(std::abs(sum - std::sqrt(std::numbers::pi)) < 1e-12);
    if (k <= 250) CHECK(r.weights.minCoeff() > 0);
  }
}

TEST_CASE("gauss_hermite polynomial exactness") {
  // Even moments: Gamma((p+1)/2).
  for (int k : {4, 9, 16}) {
    const auto r = gauss_hermite(k);
    for (int p = 0; p <= 2 * k - 1; ++p) {
      const double val = r.integrate_weighted([p](double x) { return std::pow(x, p); });
      // Odd moments cancel; measure them against the absolute moment.
      const double scale = std::tgamma((p + 1) / 2.0);
      const double ref = p % 2 == 1 ? 0.0 : scale;
      CHECK(std::abs(val - ref) <= 1e-12 * std::max(1.0, scale));
    }
  }
}

TEST_CASE("orthonormality up to n = 300") {
  const int n_max = 300;
  const auto r = gauss_hermite(quadrature_order_for(n_max));
  const auto q = hermite_table(r, n_max);
  const MatrixX<double> g = q.transpose() * q;
  const double err = (g - MatrixX<double>::Identity(n_max + 1, n_max + 1)).cwiseAbs().maxCoeff();
  CHECK(err < 1e-10);
}

TEST_CASE("hermite_table matches direct evaluation where weights are representable") {
  const auto r = gauss_hermite(30);
  const auto q = hermite_table(r, 12);
  for (int i = 0; i < 30; ++i)
    for (int j = 0; j <= 12; ++j) {
      const double direct = std::sqrt(r.weights[i]) * std::exp(r.nodes[i] * r.nodes[i] / 2) * hermite_fn(j, r.nodes[i]);
      CHECK(std::abs(q(i, j) - direct) < 1e-13);
    }
}

TEST_CASE("find_peaks examples") {
  TimeSeries<double> flat{0.0, 0.1, std::vector<double>(50, 0.5)};
  CHECK(find_peaks(flat, 0.6, 0.0).empty());

  TimeSeries<double> tri{0.0, 0.25, {}};
  for (int i = 0; i <= 16; ++i) tri.values.push_back(std::max(0.0, 1.0 - std::abs(tri.time(i) - 2.0) / 2.0));
  const auto p = find_peaks(tri, 0.5, 0.0);
  REQUIRE(p.size() == 1);
  CHECK(p[0].t == doctest::Approx(2.0));
  CHECK(p[0].height == doctest::Approx(1.0));

  TimeSeries<double> c{0.0, 0.01, {}};
  for (int i = 0; i <= 1000; ++i) c.values.push_back(std::abs(std::cos(c.time(i))));
  const auto pk = find_peaks(c, 0.9, 0.5);
  REQUIRE(pk.size() == 3);
  for (std::size_t i = 0; i < pk.size(); ++i) CHECK(std::abs(pk[i].t - (i + 1) * std::numbers::pi) < 0.01);

  TimeSeries<double> empty{0.0, 1.0, {}};
  CHECK_THROWS_AS(find_peaks(empty, 0.0, 0.0), std::domain_error);
}

TEST_CASE("find_peaks separation keeps the taller peak") {
  TimeSeries<double> s{0.0, 1.0, {0, 1, 0, 2, 0, 0, 0, 3, 0}};
  const auto p = find_peaks(s, 0.5, 3.0);
  REQUIRE(p.size() == 2);
  CHECK(p[0].height == doctest::Approx(2.0));
  CHECK(p[1].height == doctest::Approx(3.0));
}

TEST_CASE("pairwise_sum and parallel_for are deterministic") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> v(10007);
  for (auto& x : v) x = u(rng) * std::pow(10.0, static_cast<int>(rng() % 12) - 6);
  const double ref = pairwise_sum<double>(v);
  std::vector<double> out1(64), out4(64);
  parallel_for(64, [&](std::size_t i) { out1[i] = pairwise_sum<double>(std::span<const double>(v).first(9000 + i)); }, 1);
  parallel_for(64, [&](std::size_t i) { out4[i] = pairwise_sum<double>(std::span<const double>(v).first(9000 + i)); }, 4);
  CHECK(out1 == out4);
  CHECK(pairwise_sum<double>(v) == ref);
}

TEST_CASE("dominant_frequency finds a pure tone") {
  TimeSeries<double> s{0.0, 0.05, {}};
  for (int i = 0; i < 2000; ++i) s.values.push_back(0.3 + std::cos(2 * std::numbers::pi * 1.5 * s.time(i)));
  const auto f = dominant_frequency(s);
  CHECK(std::abs(f.frequency - 1.5) <= f.bin_width);
}

TEST_CASE("zero padding removes scalloping between bins") {
  // A half-bin tone loses ~36% at the record bins and ranks below a weaker on-bin tone.
  TimeSeries<double> s{0.0, 0.05, {}};
  const double tau = 2 * std::numbers::pi;
  for (int i = 0; i < 2000; ++i) {
    const double t = s.time(i);
    s.values.push_back(std::cos(tau * 1.505 * t) + 0.8 * std::cos(tau * 1.7 * t));
  }
  CHECK(std::abs(dominant_frequency(s).frequency - 1.7) <= 0.01);
  const auto padded = dominant_frequency(s, 8);
  CHECK(padded.bin_width == doctest::Approx(0.01));
  CHECK(std::abs(padded.frequency - 1.505) <= padded.bin_width / 8);
  CHECK_THROWS(dominant_frequency(s, 0));
}

TEST_CASE("trapezoid integrates a Gaussian") {
  std::vector<double> v;
  const double dx = 0.01;
  for (int i = 0; i <= 2000; ++i) {
    const double x = -10 + i * dx;
    v.push_back(std::exp(-x * x));
  }
  CHECK(std::abs(trapezoid(v, dx) - std::sqrt(std::numbers::pi)) < 1e-12);
}
