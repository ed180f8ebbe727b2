#pragma once

#include "sae/basis.hpp"
#include "sae/linalg.hpp"
#include "sae/potentials.hpp"

#include <vector>

namespace sae {

struct ChannelSpec {
  PotentialModel model;
  int l = 0;
  int n_states = 5;
};

/*!
  Lowest eigenpairs of the radial Hamiltonian for one (model, l) channel.

  The first and last B-splines are dropped so u(0) = u(rmax) = 0; the
  coefficient vectors therefore have basis_dim = n_splines - 2 entries and
  refer to splines 1 .. n_splines-2.
*/
struct Eigensolution {
  ChannelSpec channel;
  std::vector<double> energies; //!< ascending, hartree
  Matrix coefficients;          //!< row s is state s, S-orthonormal
  std::size_t basis_dim = 0;
  //! State s is unbound, or its tail has not decayed by e^-12 between the
  //! outer turning point and rmax; its energy is raised by the box wall.
  std::vector<bool> box_distorted;

  //! Principal quantum number of state s: l + 1 + s.
  int principal(std::size_t s) const { return channel.l + 1 + int(s); }
};

//! S_ij = int B_i B_j dr over the reduced (Dirichlet) basis.
Matrix assemble_overlap(const BSplineBasis &basis);

//! H_ij = 1/2 int B_i' B_j' dr + int B_i [l(l+1)/(2r^2) + V(r)] B_j dr over
//! the reduced basis.
Matrix assemble_hamiltonian(const BSplineBasis &basis,
                            const PotentialModel &model, int l);

//! Assembles and solves one channel. Throws ConfigError for an invalid
//! channel spec, BasisError if S is not positive definite, ConvergenceError naming
//! the channel if the eigensolver stalls.
Eigensolution solve_channel(const BSplineBasis &basis,
                            const ChannelSpec &spec);

//! Solves l = 0 .. lmax for one model, channels in parallel; the result is
//! ordered by l whatever the completion order.
std::vector<Eigensolution> solve_channels(const BSplineBasis &basis,
                                          const PotentialModel &model,
                                          int lmax, int n_states);

//! Outer turning point of a state with energy e in the channel's asymptotic
//! Coulomb tail; +inf if e >= 0.
double outer_turning_point(const PotentialModel &model, int l, double e);

} // namespace sae
