#include "sae/radial_solver.hpp"

#include "sae/errors.hpp"
#include "sae/kernels.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <string>

namespace sae {

namespace {

// Adds a banded Galerkin integral to M. Spline index g maps to row g - 1 of
// the reduced matrix; splines 0 and n-1 are skipped. The local order x order
// block of each interval is accumulated with the node weights in `w`.
template <class LocalTerm>
void accumulate(const BSplineBasis &basis, Matrix &M, LocalTerm &&term) {
  const std::size_t n = basis.size();
  const std::size_t k = std::size_t(basis.order());
  for (const auto &iq : basis.quadrature()) {
    for (std::size_t a = 0; a < k; ++a) {
      const std::size_t ga = iq.first + a;
      if (ga == 0 || ga == n - 1)
        continue;
      for (std::size_t b = a; b < k; ++b) {
        const std::size_t gb = iq.first + b;
        if (gb == 0 || gb == n - 1)
          continue;
        const double v = term(iq, a, b);
        M(ga - 1, gb - 1) += v;
        if (b != a)
          M(gb - 1, ga - 1) += v;
      }
    }
  }
}

} // namespace

Matrix assemble_overlap(const BSplineBasis &basis) {
  const std::size_t dim = basis.size() - 2;
  Matrix S(dim, dim);
  accumulate(basis, S,
             [](const IntervalQuadrature &iq, std::size_t a, std::size_t b) {
               return kernels::weighted_dot(iq.weights, iq.spline_values(a),
                                            iq.spline_values(b));
             });
  return S;
}

Matrix assemble_hamiltonian(const BSplineBasis &basis,
                            const PotentialModel &model, int l) {
  model.validate();
  if (l < 0)
    throw ConfigError("hamiltonian: l must be non-negative");
  const std::size_t dim = basis.size() - 2;
  Matrix H(dim, dim);
  const double cent = 0.5 * double(l) * double(l + 1);
  std::vector<double> wpot;
  const IntervalQuadrature *cached = nullptr;
  accumulate(basis, H,
             [&](const IntervalQuadrature &iq, std::size_t a, std::size_t b) {
               if (cached != &iq) {
                 // weight * effective potential at the interval's nodes
                 wpot.resize(iq.nodes.size());
                 for (std::size_t p = 0; p < iq.nodes.size(); ++p) {
                   const double r = iq.nodes[p];
                   wpot[p] =
                       iq.weights[p] * (cent / (r * r) + evaluate(model, r));
                 }
                 cached = &iq;
               }
               const double kin =
                   0.5 * kernels::weighted_dot(iq.weights, iq.spline_derivs(a),
                                               iq.spline_derivs(b));
               const double pot = kernels::weighted_dot(
                   wpot, iq.spline_values(a), iq.spline_values(b));
               return kin + pot;
             });
  return H;
}

double outer_turning_point(const PotentialModel &model, int l, double e) {
  if (!(e < 0.0))
    return std::numeric_limits<double>::infinity();
  // e = -Zc/r + l(l+1)/(2r^2)  ->  -e r^2 - Zc r + l(l+1)/2 = 0 (outer root)
  const double zc = model.asymptotic_charge();
  const double c = 0.5 * double(l) * double(l + 1);
  const double disc = zc * zc - 4.0 * (-e) * c;
  if (disc < 0.0)
    return std::numeric_limits<double>::infinity();
  return (zc + std::sqrt(disc)) / (2.0 * (-e));
}

Eigensolution solve_channel(const BSplineBasis &basis,
                            const ChannelSpec &spec) {
  spec.model.validate();
  const std::size_t dim = basis.size() - 2;
  if (spec.l < 0)
    throw ConfigError("channel: l must be non-negative");
  if (spec.n_states < 1 || std::size_t(spec.n_states) > dim - 2)
    throw ConfigError("channel: n_states must be in [1, basis_dim - 2]");

  const std::string name = std::string(to_string(spec.model.kind)) +
                           " l=" + std::to_string(spec.l);
  const Matrix S = assemble_overlap(basis);
  const Matrix H = assemble_hamiltonian(basis, spec.model, spec.l);

  GeneralizedEigen eig;
  try {
    eig = lowest_generalized_eigenpairs(H, S, std::size_t(spec.n_states));
  } catch (const ConvergenceError &e) {
    throw ConvergenceError("channel " + name + ": " + e.what());
  } catch (const BasisError &e) {
    throw BasisError("channel " + name + ": " + e.what());
  }

  Eigensolution sol;
  sol.channel = spec;
  sol.energies = std::move(eig.values);
  sol.coefficients = std::move(eig.vectors);
  sol.basis_dim = dim;
  sol.box_distorted.reserve(sol.energies.size());
  for (double e : sol.energies) {
    // the tail beyond the turning point must decay by ~e^-12 before the wall
    const double rt = outer_turning_point(spec.model, spec.l, e);
    sol.box_distorted.push_back(
        e >= 0.0 || std::sqrt(-2.0 * e) * (basis.rmax() - rt) < 12.0);
  }
  return sol;
}

std::vector<Eigensolution> solve_channels(const BSplineBasis &basis,
                                          const PotentialModel &model,
                                          int lmax, int n_states) {
  if (lmax < 0)
    throw ConfigError("lmax must be >= 0");
  model.validate();
  std::vector<std::future<Eigensolution>> jobs;
  for (int l = 0; l <= lmax; ++l)
    jobs.push_back(std::async(std::launch::async, [&basis, model, l, n_states] {
      return solve_channel(basis, {model, l, n_states});
    }));
  std::vector<Eigensolution> out;
  out.reserve(jobs.size());
  // get() in order; an exception from any channel propagates here
  for (auto &j : jobs)
    out.push_back(j.get());
  return out;
}

} // namespace sae
