#pragma once

// Fitting alpha of the h2 model so that the two-electron ground level
// 4 e_1s reproduces a target energy.

#include "sae/basis.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sae {

//! Nonrelativistic helium ground-state energy used as the default target.
inline constexpr double helium_ground_reference = -2.90372;

//! 300 splines in a 100 bohr box: enough for the 1s orbital, cheap to solve.
BasisConfig calibration_basis();

struct CalibrationProblem {
  double Z = 2.0;
  double target_energy = helium_ground_reference;
  double alpha_lo = 0.1;
  double alpha_hi = 0.9;
  double tol_alpha = 1e-6;
  BasisConfig basis = calibration_basis();
  //! Re-solve at the fitted alpha on this profile (skipped if empty).
  std::optional<BasisConfig> confirm_basis = BasisConfig::standard();
  int max_evaluations = 60;

  void validate() const;
};

//! 4 e_1s(h2, alpha) - target on `basis`. Each call is one l = 0 solve.
double calibration_objective(const BSplineBasis &basis, double Z,
                             double target_energy, double alpha);

struct CalibrationResult {
  double alpha = 0.0;
  double residual = 0.0; //!< objective at alpha on the calibration basis
  double energy = 0.0;   //!< 4 e_1s at alpha on the calibration basis
  int evaluations = 0;
  std::string method; //!< "root" (bracketed hybrid) or "minimize"
  //! Prescan samples were strictly monotone in alpha.
  bool monotone = true;
  std::vector<std::pair<double, double>> profile; //!< prescan (alpha, residual)
  std::optional<double> confirm_energy;
  std::optional<double> confirm_residual;
};

/*!
  Samples the objective at 7 evenly spaced points of the bracket. When the
  samples are monotone and change sign, the bracketing sub-interval is
  refined by TOMS 748 (secant/inverse-cubic steps safeguarded by bisection)
  until it is narrower than tol_alpha. Otherwise |objective| is minimized
  by Brent's golden-section/parabolic search around the best sample.

  Throws CalibrationError (carrying the sampled profile) if the objective
  is flat over the bracket or the evaluation budget runs out.
*/
CalibrationResult fit_alpha(const CalibrationProblem &problem);

} // namespace sae
