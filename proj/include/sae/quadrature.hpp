#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace sae {

//! Nodes and weights of an n-point Gauss–Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

//! Computes the n-point Gauss–Legendre rule (n >= 1) by Newton iteration on
//! P_n. Nodes are ascending.
GaussLegendreRule gauss_legendre(std::size_t n);

//! Maps a rule onto [a, b].
GaussLegendreRule map_rule(const GaussLegendreRule &rule, double a, double b);

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0; // estimated absolute error
  std::size_t evaluations = 0;
  bool converged = false;
};

//! Globally adaptive Gauss–Kronrod (7/15) integration of f over [a, b] to an
//! absolute tolerance. Subintervals with the largest error estimate are
//! bisected until the summed estimate is below tol or max_intervals is hit.
//! The result reports converged = false rather than throwing.
QuadratureResult integrate_adaptive(const std::function<double(double)> &f,
                                    double a, double b, double tol,
                                    std::size_t max_intervals = 2000);

} // namespace sae
