#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sae {

enum class KnotScheme { linear, exponential, sinh_hybrid };

std::string_view to_string(KnotScheme s);
//! Parses "linear", "exponential" (or "exp"), "sinh-hybrid" (or "sinh").
KnotScheme knot_scheme_from_string(std::string_view s);

/*!
  Radial B-spline box on [0, rmax].

  Breakpoints t in [0,1] are mapped to radii by
    linear       r = rmax t
    exponential  r = rmax (e^{g t} - 1) / (e^g - 1)
    sinh-hybrid  r = rmax sinh(g t) / sinh(g)
  with g = clustering. Both ends carry full multiplicity (order).
*/
struct BasisConfig {
  double rmax = 500.0; //!< bohr
  int n_splines = 600;
  int order = 10; //!< polynomial order k (degree k-1)
  KnotScheme scheme = KnotScheme::exponential;
  double clustering = 5.0;
  int quad_points = 0; //!< per interval; 0 means order + 4

  int quad_points_per_interval() const {
    return quad_points > 0 ? quad_points : order + 4;
  }

  //! Throws ConfigError if an invariant is violated.
  void validate() const;

  //! Default profile used for the Table-1 runs: 600 splines, k = 10,
  //! exponential knots, 500 bohr box.
  static BasisConfig standard();
  //! The literal published box: as standard() but rmax = 200 bohr.
  static BasisConfig published_box();
  //! Reduced profile for quick runs: 300 splines, same box.
  static BasisConfig fast();
};

class KnotSequence {
public:
  KnotSequence() = default;
  explicit KnotSequence(const BasisConfig &cfg);

  //! Full knot vector, length n_splines + order.
  std::span<const double> knots() const { return knots_; }
  //! Distinct breakpoints, 0 and rmax included.
  std::span<const double> breakpoints() const { return breakpoints_; }
  double operator[](std::size_t i) const { return knots_[i]; }
  std::size_t size() const { return knots_.size(); }

private:
  std::vector<double> knots_;
  std::vector<double> breakpoints_;
};

//! Quadrature data for one knot interval. values/derivs hold the order
//! non-zero splines (indices first .. first+order-1) at each node, stored
//! spline-major: values[a * nodes.size() + p].
struct IntervalQuadrature {
  double a = 0.0;
  double b = 0.0;
  std::size_t first = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> values;
  std::vector<double> derivs;

  std::span<const double> spline_values(std::size_t local) const {
    return {values.data() + local * nodes.size(), nodes.size()};
  }
  std::span<const double> spline_derivs(std::size_t local) const {
    return {derivs.data() + local * nodes.size(), nodes.size()};
  }
};

//! Immutable after construction; safe for concurrent const access.
class BSplineBasis {
public:
  explicit BSplineBasis(const BasisConfig &cfg);

  const BasisConfig &config() const { return config_; }
  const KnotSequence &knots() const { return knots_; }
  std::size_t size() const { return std::size_t(config_.n_splines); }
  int order() const { return config_.order; }
  double rmax() const { return config_.rmax; }

  //! B_i(r). Throws std::out_of_range for i >= size() or r outside [0, rmax].
  double value(std::size_t i, double r) const;
  //! dB_i/dr; right-limit at interior breakpoints.
  double derivative(std::size_t i, double r) const;

  //! Values (and optionally derivatives) of the order splines that can be
  //! non-zero at r. Returns the index of the first one.
  std::size_t evaluate_nonzero(double r, std::span<double> values,
                               std::span<double> derivs = {}) const;

  std::span<const IntervalQuadrature> quadrature() const { return quad_; }

private:
  std::size_t find_span(double r) const;

  BasisConfig config_;
  KnotSequence knots_;
  std::vector<IntervalQuadrature> quad_;
};

} // namespace sae
