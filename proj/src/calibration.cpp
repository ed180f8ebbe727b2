#include "sae/calibration.hpp"

#include "sae/errors.hpp"
#include "sae/potentials.hpp"
#include "sae/radial_solver.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>

namespace sae {

BasisConfig calibration_basis() {
  BasisConfig c;
  c.rmax = 100.0;
  c.n_splines = 300;
  return c;
}

void CalibrationProblem::validate() const {
  if (!(Z > 0.0))
    throw ConfigError("calibration: Z must be positive");
  if (!(target_energy < 0.0))
    throw ConfigError("calibration: target energy must be negative");
  if (!(alpha_lo > 0.0 && alpha_lo < alpha_hi && alpha_hi < 1.0))
    throw ConfigError("calibration: bracket must satisfy 0 < lo < hi < 1");
  if (!(tol_alpha >= 1e-8 && tol_alpha <= 1e-3))
    throw ConfigError("calibration: tol_alpha must lie in [1e-8, 1e-3]");
  if (max_evaluations < 10)
    throw ConfigError("calibration: max_evaluations must be at least 10");
  basis.validate();
  if (confirm_basis)
    confirm_basis->validate();
}

double calibration_objective(const BSplineBasis &basis, double Z,
                             double target_energy, double alpha) {
  const auto sol = solve_channel(basis, {PotentialModel::h2(Z, alpha), 0, 1});
  return 4.0 * sol.energies.front() - target_energy;
}

namespace {

constexpr int prescan_points = 7;

} // namespace

CalibrationResult fit_alpha(const CalibrationProblem &p) {
  p.validate();
  const BSplineBasis basis(p.basis);
  CalibrationResult res;
  int evals = 0;
  auto f = [&](double a) {
    if (evals >= p.max_evaluations)
      throw CalibrationError("calibration: evaluation budget exhausted",
                             res.profile);
    ++evals;
    return calibration_objective(basis, p.Z, p.target_energy, a);
  };

  // Prescan: independent solves, run concurrently.
  std::vector<double> xs(prescan_points), ys(prescan_points);
  std::vector<std::future<double>> jobs;
  for (int i = 0; i < prescan_points; ++i) {
    xs[i] = p.alpha_lo + (p.alpha_hi - p.alpha_lo) * i / (prescan_points - 1);
    jobs.push_back(std::async(std::launch::async, calibration_objective,
                              std::cref(basis), p.Z, p.target_energy, xs[i]));
  }
  for (int i = 0; i < prescan_points; ++i) {
    ys[i] = jobs[i].get();
    res.profile.emplace_back(xs[i], ys[i]);
  }
  evals = prescan_points;

  bool increasing = true, decreasing = true;
  for (int i = 1; i < prescan_points; ++i) {
    increasing = increasing && ys[i] > ys[i - 1];
    decreasing = decreasing && ys[i] < ys[i - 1];
  }
  res.monotone = increasing || decreasing;

  const auto [ymin, ymax] = std::minmax_element(ys.begin(), ys.end());
  if (*ymax - *ymin < 1e-12)
    throw CalibrationError("calibration: objective is flat over the bracket",
                           res.profile);

  int bracket = -1;
  for (int i = 0; i + 1 < prescan_points && bracket < 0; ++i)
    if ((ys[i] <= 0.0) != (ys[i + 1] <= 0.0) || ys[i] == 0.0)
      bracket = i;

  if (res.monotone && bracket >= 0) {
    res.method = "root";
    double a = xs[bracket], b = xs[bracket + 1];
    if (ys[bracket] == 0.0) {
      res.alpha = a;
    } else {
      std::uintmax_t iters = std::uintmax_t(p.max_evaluations - evals - 1);
      const double tol = p.tol_alpha;
      const auto r = boost::math::tools::toms748_solve(
          f, a, b, ys[bracket], ys[bracket + 1],
          [tol](double lo, double hi) { return std::abs(hi - lo) <= tol; },
          iters);
      if (std::abs(r.second - r.first) > tol)
        throw CalibrationError("calibration: root refinement did not converge",
                               res.profile);
      res.alpha = 0.5 * (r.first + r.second);
    }
  } else {
    res.method = "minimize";
    const int best = int(std::min_element(ys.begin(), ys.end(),
                                          [](double u, double v) {
                                            return std::abs(u) < std::abs(v);
                                          }) -
                         ys.begin());
    const double a = xs[std::max(best - 1, 0)];
    const double b = xs[std::min(best + 1, prescan_points - 1)];
    const int bits = int(std::ceil(-std::log2(p.tol_alpha))) + 1;
    std::uintmax_t iters = std::uintmax_t(p.max_evaluations - evals - 1);
    const auto m = boost::math::tools::brent_find_minima(
        [&](double x) { return std::abs(f(x)); }, a, b, bits, iters);
    res.alpha = m.first;
  }

  res.residual = f(res.alpha);
  res.energy = res.residual + p.target_energy;
  res.evaluations = evals;

  if (p.confirm_basis) {
    const BSplineBasis cb(*p.confirm_basis);
    res.confirm_residual =
        calibration_objective(cb, p.Z, p.target_energy, res.alpha);
    res.confirm_energy = *res.confirm_residual + p.target_energy;
  }
  return res;
}

} // namespace sae
