#pragma once

// Numerical checks of the closed forms behind the H1 screening factor:
// expectation values of the correlated partition fraction over a
// hydrogenic 1s density, the truncated binomial series, and the
// extremum/stationarity identities of the two-coordinate potential.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sae {

//! Which electron's radius sits in the numerator of the partition fraction.
enum class FractionVariant {
  f_of_i, //!< r_i^2 / (r_i^2 + r_j^2)
  f_of_j  //!< r_j^2 / (r_i^2 + r_j^2)
};

std::string_view to_string(FractionVariant v);

struct OracleConfig {
  double Z = 2.0;
  std::vector<double> r_grid;
  FractionVariant variant = FractionVariant::f_of_i;
  int series_kmax = 1;
  double tolerance = 1e-10; //!< absolute, in (0, 1e-6]
  double exponent = 0.6;    //!< power applied to the fraction

  void validate() const;
};

//! Normalized hydrogenic 1s radial density 4 Z^3 r^2 exp(-2 Z r).
double hydrogenic_density(double Z, double r);

//! <g(r_i, r_j)^exponent> over r_j with the hydrogenic density, split at
//! r_j = r_i and cut off at max(40/Z, r_i) + 40/Z. Throws QuadratureError
//! (carrying the achieved estimate) if the tolerance is not met.
double expectation_numeric(double Z, double r_i, FractionVariant variant,
                           double tolerance = 1e-10, double exponent = 0.6);

//! Normalization check: the same integral with g == 1.
double density_norm(double Z, double tolerance = 1e-10);

//! Generalized binomial coefficient C(a, k).
double binomial(double a, int k);

/*!
  Two-region integral with (1 + t^2)^{-3/5} replaced by its binomial series
  through t^{2 kmax}, t = r_< / r_>. The default variant reproduces the
  integrand as written in the derivation (r_j^2 in the numerator). Each
  term is integrated by adaptive quadrature.
*/
double series_truncated(double Z, double r_i, int kmax,
                        FractionVariant variant = FractionVariant::f_of_j,
                        double tolerance = 1e-12);

struct StationarityResult {
  double r_i = 0.0;      //!< root of the equal-weighting extremum condition
  double residual = 0.0; //!< |1/sqrt(r_i^2+r_j^2) - (1/r_i)[(Z/2) f]^{1/5}|
  bool degenerate = false; //!< condition holds for every r_i (Z=2, r_j=0)
};

/*!
  Solves Z / r_i^2 = 2 r_i (r_i^2 + r_j^2) / (r_i^2 + r_j^2)^{5/2} for r_i by
  bracketed bisection and evaluates the residual of the correlation-term
  identity there. Roots exist only for r_j = 0 with Z = 2 (every r_i) and
  for r_j > 0 with Z < 2. Throws NoRootError otherwise.
*/
StationarityResult stationarity_check(double Z, double r_j);

//! dV/dr_i of two_body_potential, unsimplified form.
double extremum_derivative(double Z, double r_i, double r_j);
//! The same derivative after collecting terms over (r_i^2 + r_j^2)^{5/2}.
double extremum_derivative_simplified(double Z, double r_i, double r_j);

struct ExtremumResidual {
  double finite_difference; //!< |central FD - analytic|
  double forms;             //!< |unsimplified - simplified|
};

ExtremumResidual extremum_derivative_check(double Z, double r_i, double r_j,
                                           double step = 1e-5);

struct OracleRecord {
  double r = 0.0;
  std::optional<double> numeric_fi;
  std::optional<double> numeric_fj;
  double zeta_h1 = 0.0;
  std::optional<double> series; //!< series_truncated at series_kmax
  std::optional<double> err_fi_vs_h1;
  std::string failure; //!< non-empty if a quadrature failed on this row
};

struct OracleReport {
  double Z = 2.0;
  int series_kmax = 1;
  std::vector<OracleRecord> records;
  //! Which variant has the smaller mean |numeric - zeta_h1| on rows with
  //! Z r >= 1.
  FractionVariant closer_variant = FractionVariant::f_of_i;
};

//! Evaluates every grid radius; per-row quadrature failures are recorded
//! in the row rather than aborting.
OracleReport compare_closed_form(const OracleConfig &config);

//! CSV with header r,numeric_fi,numeric_fj,zeta_h1,series_k<kmax>,
//! err_fi_vs_h1. Failed cells are left empty.
std::string to_csv(const OracleReport &report);

} // namespace sae
