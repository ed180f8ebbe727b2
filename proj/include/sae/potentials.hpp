#pragma once

#include <string>
#include <string_view>

namespace sae {

//! Radial potential families. All are -Z/r plus a screening term.
enum class PotentialKind {
  bare_coulomb,         //!< -Z/r
  separable_mean_field, //!< -Z/r + (2Z)^{1/3} / (2r)
  sae_h1,               //!< screening factor from the two-term expansion
  sae_h2                //!< one-parameter screening factor, alpha
};

std::string_view to_string(PotentialKind k);
//! Accepts the CLI spellings coulomb | meanfield | h1 | h2.
PotentialKind potential_kind_from_string(std::string_view s);

constexpr double default_alpha = 0.46135;

struct PotentialModel {
  PotentialKind kind = PotentialKind::sae_h2;
  double Z = 2.0;
  double alpha = default_alpha; //!< used by sae_h2 only

  //! Throws ConfigError unless Z > 0 and, for sae_h2, 0 < alpha < 1.
  void validate() const;

  //! Charge seen by a distant electron, i.e. -lim r V(r).
  double asymptotic_charge() const;

  static PotentialModel coulomb(double Z) {
    return {PotentialKind::bare_coulomb, Z, default_alpha};
  }
  static PotentialModel mean_field(double Z) {
    return {PotentialKind::separable_mean_field, Z, default_alpha};
  }
  static PotentialModel h1(double Z) {
    return {PotentialKind::sae_h1, Z, default_alpha};
  }
  static PotentialModel h2(double Z, double alpha = default_alpha) {
    return {PotentialKind::sae_h2, Z, alpha};
  }
};

//! Share of the pair correlation energy carried by electron i:
//! r_i^2 / (r_i^2 + r_j^2). DomainError if both radii are zero or either
//! is negative.
double partition_fraction(double r_i, double r_j);

//! Two-coordinate independent-particle potential of electron i with the
//! correlation energy apportioned by partition_fraction:
//! -Z/r_i + r_i^2 / (r_i^2 + r_j^2)^{3/2}. DomainError for r_i <= 0.
double two_body_potential(double Z, double r_i, double r_j);

//! Screening factor of model H1:
//! 1 - [27/25 + (6/5) Z r - 6/(125 Z r)] exp(-2 Z r). DomainError for r <= 0.
double zeta_h1(double Z, double r);

//! Screening factor of model H2: 1 - alpha (1 + 3 Z r) exp(-2 Z r).
//! DomainError for r < 0.
double zeta_h2(double Z, double alpha, double r);

//! (Z/2)^{3/5}, the strength of the screening term.
double screening_prefactor(double Z);

//! V(r) for the model. DomainError for r <= 0.
double evaluate(const PotentialModel &model, double r);

} // namespace sae
