#include "sae/basis.hpp"

#include "sae/errors.hpp"
#include "sae/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sae {

std::string_view to_string(KnotScheme s) {
  switch (s) {
  case KnotScheme::linear:
    return "linear";
  case KnotScheme::exponential:
    return "exponential";
  case KnotScheme::sinh_hybrid:
    return "sinh-hybrid";
  }
  return "unknown";
}

KnotScheme knot_scheme_from_string(std::string_view s) {
  if (s == "linear")
    return KnotScheme::linear;
  if (s == "exponential" || s == "exp")
    return KnotScheme::exponential;
  if (s == "sinh-hybrid" || s == "sinh")
    return KnotScheme::sinh_hybrid;
  throw ConfigError("unknown knot scheme '" + std::string(s) +
                    "' (expected linear, exponential or sinh-hybrid)");
}

void BasisConfig::validate() const {
  if (!(rmax > 0.0) || !std::isfinite(rmax))
    throw ConfigError("basis: rmax must be positive");
  if (order < 2)
    throw ConfigError("basis: spline order must be >= 2");
  if (n_splines <= order)
    throw ConfigError("basis: n_splines must exceed the spline order");
  if (scheme != KnotScheme::linear && !(clustering > 0.0))
    throw ConfigError("basis: clustering parameter must be positive");
  if (quad_points_per_interval() < order)
    throw ConfigError("basis: need at least `order` quadrature points");
}

BasisConfig BasisConfig::standard() { return BasisConfig{}; }

BasisConfig BasisConfig::published_box() {
  BasisConfig c;
  c.rmax = 200.0;
  return c;
}

BasisConfig BasisConfig::fast() {
  BasisConfig c;
  c.n_splines = 300;
  return c;
}

KnotSequence::KnotSequence(const BasisConfig &cfg) {
  cfg.validate();
  const std::size_t k = std::size_t(cfg.order);
  const std::size_t nb = std::size_t(cfg.n_splines) - k + 2;
  breakpoints_.resize(nb);
  const double g = cfg.clustering;
  for (std::size_t j = 0; j < nb; ++j) {
    const double t = double(j) / double(nb - 1);
    double r = 0.0;
    switch (cfg.scheme) {
    case KnotScheme::linear:
      r = cfg.rmax * t;
      break;
    case KnotScheme::exponential:
      r = cfg.rmax * std::expm1(g * t) / std::expm1(g);
      break;
    case KnotScheme::sinh_hybrid:
      r = cfg.rmax * std::sinh(g * t) / std::sinh(g);
      break;
    }
    breakpoints_[j] = r;
  }
  breakpoints_.front() = 0.0;
  breakpoints_.back() = cfg.rmax;
  for (std::size_t j = 1; j < nb; ++j) {
    if (!(breakpoints_[j] > breakpoints_[j - 1]))
      throw ConfigError("basis: knot clustering too strong, breakpoints "
                        "collapse in double precision");
  }

  knots_.reserve(nb + 2 * (k - 1));
  knots_.insert(knots_.end(), k - 1, 0.0);
  knots_.insert(knots_.end(), breakpoints_.begin(), breakpoints_.end());
  knots_.insert(knots_.end(), k - 1, cfg.rmax);
}

namespace {

// de Boor's BSPLVB: values of the `order` splines of order `order` that are
// non-zero on the span [t[mu], t[mu+1]), written to b[0..order-1].
void spline_values(std::span<const double> t, std::size_t order,
                   std::size_t mu, double x, double *b, double *left,
                   double *right) {
  b[0] = 1.0;
  for (std::size_t j = 1; j < order; ++j) {
    left[j] = x - t[mu + 1 - j];
    right[j] = t[mu + j] - x;
    double saved = 0.0;
    for (std::size_t r = 0; r < j; ++r) {
      const double temp = b[r] / (right[r + 1] + left[j - r]);
      b[r] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    b[j] = saved;
  }
}

} // namespace

BSplineBasis::BSplineBasis(const BasisConfig &cfg)
    : config_(cfg), knots_(cfg) {
  const std::size_t k = std::size_t(config_.order);
  const auto bp = knots_.breakpoints();
  const GaussLegendreRule ref =
      gauss_legendre(std::size_t(config_.quad_points_per_interval()));
  quad_.reserve(bp.size() - 1);
  std::vector<double> vals(k), ders(k);
  for (std::size_t j = 0; j + 1 < bp.size(); ++j) {
    IntervalQuadrature iq;
    iq.a = bp[j];
    iq.b = bp[j + 1];
    iq.first = j;
    const auto mapped = map_rule(ref, iq.a, iq.b);
    iq.nodes = mapped.nodes;
    iq.weights = mapped.weights;
    const std::size_t q = iq.nodes.size();
    iq.values.assign(k * q, 0.0);
    iq.derivs.assign(k * q, 0.0);
    for (std::size_t p = 0; p < q; ++p) {
      const std::size_t first = evaluate_nonzero(iq.nodes[p], vals, ders);
      // interior Gauss nodes always resolve to span j
      if (first != j)
        throw BasisError("basis: quadrature node resolved to wrong span");
      for (std::size_t a = 0; a < k; ++a) {
        iq.values[a * q + p] = vals[a];
        iq.derivs[a * q + p] = ders[a];
      }
    }
    quad_.push_back(std::move(iq));
  }
}

std::size_t BSplineBasis::find_span(double r) const {
  const std::size_t k = std::size_t(config_.order);
  const std::size_t n = size();
  const auto t = knots_.knots();
  if (r >= t[n])
    return n - 1; // r == rmax: last non-empty span
  // largest mu in [k-1, n-1] with t[mu] <= r
  const auto it = std::upper_bound(t.begin() + std::ptrdiff_t(k - 1),
                                   t.begin() + std::ptrdiff_t(n), r);
  return std::size_t(it - t.begin()) - 1;
}

std::size_t BSplineBasis::evaluate_nonzero(double r, std::span<double> values,
                                           std::span<double> derivs) const {
  const std::size_t k = std::size_t(config_.order);
  if (!(r >= 0.0 && r <= config_.rmax))
    throw std::out_of_range("basis: radius outside [0, rmax]");
  if (values.size() < k || (!derivs.empty() && derivs.size() < k))
    throw std::invalid_argument("basis: output spans shorter than order");
  const auto t = knots_.knots();
  const std::size_t mu = find_span(r);
  std::vector<double> left(k), right(k);
  if (!derivs.empty()) {
    // order-(k-1) values give the derivatives
    std::vector<double> low(k, 0.0);
    spline_values(t, k - 1, mu, r, low.data(), left.data(), right.data());
    // low[s] = B_{mu-k+2+s, k-1}; spline a <-> global index mu-k+1+a
    for (std::size_t a = 0; a < k; ++a) {
      const std::size_t i = mu + 1 + a - k;
      double d = 0.0;
      if (a >= 1) {
        const double den = t[i + k - 1] - t[i];
        if (den > 0.0)
          d += low[a - 1] / den;
      }
      if (a + 1 < k) {
        const double den = t[i + k] - t[i + 1];
        if (den > 0.0)
          d -= low[a] / den;
      }
      derivs[a] = double(k - 1) * d;
    }
  }
  spline_values(t, k, mu, r, values.data(), left.data(), right.data());
  return mu + 1 - k;
}

double BSplineBasis::value(std::size_t i, double r) const {
  if (i >= size())
    throw std::out_of_range("basis: spline index out of range");
  const std::size_t k = std::size_t(config_.order);
  std::vector<double> v(k);
  const std::size_t first = evaluate_nonzero(r, v);
  return (i >= first && i < first + k) ? v[i - first] : 0.0;
}

double BSplineBasis::derivative(std::size_t i, double r) const {
  if (i >= size())
    throw std::out_of_range("basis: spline index out of range");
  const std::size_t k = std::size_t(config_.order);
  std::vector<double> v(k), d(k);
  const std::size_t first = evaluate_nonzero(r, v, d);
  return (i >= first && i < first + k) ? d[i - first] : 0.0;
}

} // namespace sae
