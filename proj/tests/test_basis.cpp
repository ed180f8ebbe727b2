#include "sae/basis.hpp"
#include "sae/errors.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace sae;
using Catch::Matchers::WithinAbs;

namespace {

BasisConfig small(KnotScheme scheme) {
  BasisConfig c;
  c.rmax = 50.0;
  c.n_splines = 40;
  c.order = 6;
  c.scheme = scheme;
  return c;
}

} // namespace

TEST_CASE("config validation") {
  BasisConfig c;
  CHECK_NOTHROW(c.validate());
  CHECK(c.quad_points_per_interval() == 14);

  auto bad = c;
  bad.n_splines = bad.order - 1;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.rmax = -1.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.order = 1;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.clustering = 0.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  CHECK(knot_scheme_from_string("linear") == KnotScheme::linear);
  CHECK(knot_scheme_from_string("exp") == KnotScheme::exponential);
  CHECK(knot_scheme_from_string("sinh-hybrid") == KnotScheme::sinh_hybrid);
  CHECK_THROWS_AS(knot_scheme_from_string("cubic"), ConfigError);

  CHECK(BasisConfig::published_box().rmax == 200.0);
  CHECK(BasisConfig::fast().n_splines == 300);
}

TEST_CASE("knot sequences") {
  for (auto scheme :
       {KnotScheme::linear, KnotScheme::exponential, KnotScheme::sinh_hybrid}) {
    const auto cfg = small(scheme);
    const KnotSequence t(cfg);
    REQUIRE(t.size() == std::size_t(cfg.n_splines + cfg.order));
    for (int i = 0; i < cfg.order; ++i) {
      CHECK(t[std::size_t(i)] == 0.0);
      CHECK(t[t.size() - 1 - std::size_t(i)] == cfg.rmax);
    }
    for (std::size_t i = 1; i < t.size(); ++i)
      CHECK(t[i] >= t[i - 1]);
    const auto bp = t.breakpoints();
    CHECK(bp.size() == std::size_t(cfg.n_splines - cfg.order + 2));
    for (std::size_t i = 1; i < bp.size(); ++i)
      CHECK(bp[i] > bp[i - 1]);
  }
  // exponential knots crowd the origin
  const KnotSequence lin(small(KnotScheme::linear));
  const KnotSequence exp(small(KnotScheme::exponential));
  CHECK(exp.breakpoints()[1] < lin.breakpoints()[1]);
}

TEST_CASE("B-splines: partition of unity, positivity, local support") {
  for (auto scheme : {KnotScheme::linear, KnotScheme::exponential}) {
    const BSplineBasis basis(small(scheme));
    const int k = basis.order();
    std::vector<double> v(std::size_t(k), 0.0), d(std::size_t(k), 0.0);
    for (int s = 0; s <= 400; ++s) {
      const double r = basis.rmax() * s / 400.0;
      const std::size_t first = basis.evaluate_nonzero(r, v, d);
      double sum = 0.0, dsum = 0.0;
      for (int a = 0; a < k; ++a) {
        CHECK(v[std::size_t(a)] >= -1e-15);
        sum += v[std::size_t(a)];
        dsum += d[std::size_t(a)];
        CHECK_THAT(basis.value(first + std::size_t(a), r),
                   WithinAbs(v[std::size_t(a)], 1e-15));
      }
      CHECK_THAT(sum, WithinAbs(1.0, 1e-13));
      CHECK_THAT(dsum, WithinAbs(0.0, 1e-9));
      // splines outside the window vanish
      if (first > 0)
        CHECK(basis.value(first - 1, r) == 0.0);
      if (first + std::size_t(k) < basis.size())
        CHECK(basis.value(first + std::size_t(k), r) == 0.0);
    }
    // full multiplicity at the ends: only B_0 is non-zero at 0
    CHECK(basis.value(0, 0.0) == 1.0);
    CHECK(basis.value(1, 0.0) == 0.0);
    CHECK_THAT(basis.value(basis.size() - 1, basis.rmax()), WithinAbs(1.0, 1e-14));
  }
}

TEST_CASE("B-spline derivatives match central differences") {
  const BSplineBasis basis(small(KnotScheme::exponential));
  const auto bp = basis.knots().breakpoints();
  for (std::size_t i = 0; i < basis.size(); i += 3) {
    for (std::size_t j = 0; j + 1 < bp.size(); j += 5) {
      const double r = 0.37 * bp[j] + 0.63 * bp[j + 1];
      const double h = 1e-6 * (bp[j + 1] - bp[j]);
      const double fd =
          (basis.value(i, r + h) - basis.value(i, r - h)) / (2.0 * h);
      const double scale = 1.0 / (bp[j + 1] - bp[j]);
      CHECK_THAT(basis.derivative(i, r), WithinAbs(fd, 1e-7 * scale));
    }
  }
}

TEST_CASE("out-of-range evaluation throws") {
  const BSplineBasis basis(small(KnotScheme::linear));
  CHECK_THROWS_AS(basis.value(basis.size(), 1.0), std::out_of_range);
  CHECK_THROWS_AS(basis.value(0, -1.0), std::out_of_range);
  CHECK_THROWS_AS(basis.value(0, basis.rmax() * 1.01), std::out_of_range);
}

TEST_CASE("interval quadrature integrates spline products exactly") {
  const BSplineBasis basis(small(KnotScheme::exponential));
  // int B_i dr = (t_{i+k} - t_i) / k
  const auto t = basis.knots().knots();
  const int k = basis.order();
  std::vector<double> integral(basis.size(), 0.0);
  for (const auto &iq : basis.quadrature()) {
    CHECK(iq.nodes.size() == std::size_t(k + 4));
    for (int a = 0; a < k; ++a) {
      const auto v = iq.spline_values(std::size_t(a));
      for (std::size_t p = 0; p < iq.nodes.size(); ++p)
        integral[iq.first + std::size_t(a)] += iq.weights[p] * v[p];
    }
  }
  for (std::size_t i = 0; i < basis.size(); ++i)
    CHECK_THAT(integral[i], WithinAbs((t[i + std::size_t(k)] - t[i]) / k, 1e-12));
}

TEST_CASE("standard profile: unity, support and derivatives on dense samples") {
  const BSplineBasis basis(BasisConfig::standard());
  const auto t = basis.knots().knots();
  const std::size_t k = std::size_t(basis.order());
  std::vector<double> v(k), d(k);
  std::vector<double> rs;
  for (int s = 1; s <= 1000; ++s) {
    rs.push_back(basis.rmax() * s / 1001.0);
    rs.push_back(basis.rmax() * std::pow(1e-8, 1.0 - s / 1001.0));
  }
  for (double r : rs) {
    basis.evaluate_nonzero(r, v, d);
    double sum = 0.0;
    for (std::size_t a = 0; a < k; ++a) {
      CHECK(v[a] >= -1e-15);
      sum += v[a];
    }
    CHECK_THAT(sum, WithinAbs(1.0, 1e-12));
  }
  // B_i vanishes exactly outside [t_i, t_{i+k}]
  for (std::size_t i = 1; i + 1 < basis.size(); i += 37) {
    CHECK(basis.value(i, t[i] * 0.999) == 0.0);
    if (t[i + k] < basis.rmax())
      CHECK(basis.value(i, std::min(basis.rmax(), t[i + k] * 1.001)) == 0.0);
  }
  // relative derivative error against central differences
  int checked = 0;
  for (std::size_t i = 3; i < basis.size() && checked < 100; i += 6) {
    const double r = 0.5 * (t[i + 2] + t[i + 3]);
    const double h = 1e-5 * (t[i + 3] - t[i + 2]);
    const double fd = (basis.value(i, r + h) - basis.value(i, r - h)) / (2 * h);
    const double an = basis.derivative(i, r);
    if (std::abs(an) < 1e-3 * (1.0 / (t[i + 3] - t[i + 2])))
      continue;
    CHECK(std::abs(fd - an) / std::abs(an) < 1e-6);
    ++checked;
  }
  CHECK(checked >= 80);
}
