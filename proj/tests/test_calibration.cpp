#include "sae/calibration.hpp"
#include "sae/errors.hpp"

#include <catch_amalgamated.hpp>

using namespace sae;
using Catch::Matchers::WithinAbs;

namespace {

CalibrationProblem quick() {
  CalibrationProblem p;
  p.confirm_basis.reset();
  return p;
}

} // namespace

TEST_CASE("objective falls as alpha grows") {
  const BSplineBasis basis(calibration_basis());
  const double lo = calibration_objective(basis, 2.0, -2.90372, 0.01);
  const double mid = calibration_objective(basis, 2.0, -2.90372, 0.46135);
  const double hi = calibration_objective(basis, 2.0, -2.90372, 0.99);
  CHECK(lo > 0.0);
  CHECK(hi < 0.0);
  CHECK(lo > mid);
  CHECK(mid > hi);
  CHECK_THAT(mid, WithinAbs(4.77e-5, 2e-7));
}

TEST_CASE("fit to the helium ground state") {
  const auto r = fit_alpha(quick());
  CHECK(r.method == "root");
  CHECK(r.monotone);
  CHECK(r.alpha > 0.458);
  CHECK(r.alpha < 0.465);
  CHECK(r.evaluations <= 60);
  CHECK(std::abs(r.residual) < 1e-7);
  CHECK(r.profile.size() == 7);
}

TEST_CASE("fixed point and bracket independence") {
  const BSplineBasis basis(calibration_basis());
  auto p = quick();
  p.target_energy = calibration_objective(basis, 2.0, 0.0, 0.46135);
  const auto wide = fit_alpha(p);
  CHECK_THAT(wide.alpha, WithinAbs(0.46135, p.tol_alpha));
  p.alpha_lo = 0.4;
  p.alpha_hi = 0.5;
  const auto narrow = fit_alpha(p);
  CHECK_THAT(narrow.alpha, WithinAbs(wide.alpha, p.tol_alpha));
}

TEST_CASE("fits are deterministic") {
  const auto a = fit_alpha(quick());
  const auto b = fit_alpha(quick());
  CHECK(a.alpha == b.alpha);
  CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("unreachable target falls back to minimization") {
  auto p = quick();
  p.target_energy = -6.0; // below the energy at every alpha in the bracket
  const auto r = fit_alpha(p);
  CHECK(r.method == "minimize");
  CHECK(r.alpha > 0.85);
  CHECK(r.residual > 0.0);
  CHECK(r.evaluations <= 60);
}

TEST_CASE("confirmation solve on the full profile") {
  auto p = quick();
  p.confirm_basis = BasisConfig::standard();
  const auto r = fit_alpha(p);
  REQUIRE(r.confirm_energy);
  CHECK_THAT(*r.confirm_energy, WithinAbs(r.energy, 1e-7));
}

TEST_CASE("problem validation") {
  auto p = quick();
  p.alpha_lo = 0.9;
  p.alpha_hi = 0.1;
  CHECK_THROWS_AS(fit_alpha(p), ConfigError);
  p = quick();
  p.target_energy = 1.0;
  CHECK_THROWS_AS(fit_alpha(p), ConfigError);
  p = quick();
  p.tol_alpha = 1e-2;
  CHECK_THROWS_AS(fit_alpha(p), ConfigError);
}
