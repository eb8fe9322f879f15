#ifndef DIRAC_OBSERVABLES_HPP
#define DIRAC_OBSERVABLES_HPP

#include "dirac/evolution.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dirac {

/// The sixteen Hermitian spinor generators in the Dirac representation, plus
/// gamma0 Sigma_z (= -gamma5 gamma_z), which the mutual information uses.
enum class Generator {
  identity,
  gamma0,
  gamma5,
  i_gamma0_gamma5,
  alpha_x,
  alpha_y,
  alpha_z,
  i_gamma_x,
  i_gamma_y,
  i_gamma_z,
  gamma5_gamma_x,
  gamma5_gamma_y,
  gamma5_gamma_z,
  gamma5_alpha_x,
  gamma5_alpha_y,
  gamma5_alpha_z,
  gamma0_sigma_z,
};

using Matrix4c = Eigen::Matrix<std::complex<double>, 4, 4>;

/// The sixteen independent generators (gamma0_sigma_z excluded).
const std::vector<Generator>& basis_generators();
const std::vector<Generator>& all_generators();

std::string_view generator_name(Generator g);
std::optional<Generator> parse_generator(std::string_view name);

Matrix4c generator_matrix(Generator g);

/// True when the generator does not couple components {0, 2} to {1, 3}.
bool is_block_diagonal(Generator g);

/// Integral of u_1^dagger Gamma u_2 ds / sqrt(eB) by Gauss-Hermite quadrature.
std::complex<double> matrix_element(Generator g, const LevelIndex& lv1, const LevelIndex& lv2,
                                    const PhysicalParams& p);

/// Expectation values <psi(t)|Gamma|psi(t)> of one expansion. Matrix elements
/// are computed once by quadrature for every pair of terms whose levels differ
/// by at most one (all other pairs share no Hermite function).
class ObservableEngine {
 public:
  explicit ObservableEngine(const CatExpansion& exp, std::vector<Generator> generators = all_generators());

  double expectation(Generator g, double t) const;
  const CatExpansion& expansion() const { return exp_; }

 private:
  struct Pair {
    std::complex<double> weight;  // c_i c_j <u_i|Gamma|u_j>
    double domega;                // w_j - w_i
  };
  CatExpansion exp_;
  std::vector<Generator> gens_;
  std::vector<std::vector<Pair>> pairs_;
};

struct ObservableSeries {
  Generator generator;
  TimeSeries<double> series;
};

ObservableSeries expectation_series(const CatExpansion& exp, Generator g, double t0, double t1, std::size_t samples,
                                    unsigned workers = 0);

/// Level sums for the generators with a closed form: gamma0, gamma5_alpha_z,
/// i_gamma_z, i_gamma0_gamma5, gamma5_gamma_z, gamma0_sigma_z, alpha_z, gamma5.
/// With w the level weight, sn = sin(E t):
///   <gamma0>        = 1 - 8 sum w eta^2 (A^2 + B^2) sn^2
///   <Sigma_z>       = 1 - 8 sum w eta^2 B^2 sn^2
///   -<gamma5 gz>    = 1 - 8 sum w eta^2 A^2 sn^2
///   -<i gamma_z>    = 2 sum w eta A sin(2 E t)
///   <alpha_z>       = 4 M sum w eta A sn^2 / E = <gamma5>
/// Returns nullopt for generators without one.
std::optional<double> closed_form_expectation(const CatExpansion& exp, Generator g, double t);

/// (1 + <gamma0>)(1 - <Sigma_z>)/2.
double concurrence_sq(double gamma0, double sigma_z);
double concurrence_sq(const ObservableEngine& eng, double t);

/// 2 - ((1 + <g0>)^2 + (<g0 Sz> + 1)^2 + (<Sz> - 1)^2 - <i gz>^2 - 4 <az>^2) / 2.
double mutual_information(double gamma0, double gamma0_sigma_z, double sigma_z, double i_gamma_z, double alpha_z);
double mutual_information(const ObservableEngine& eng, double t);

}  // namespace dirac

#endif  // DIRAC_OBSERVABLES_HPP
