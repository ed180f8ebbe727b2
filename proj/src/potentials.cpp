#include "sae/potentials.hpp"

#include "sae/errors.hpp"

#include <cmath>
#include <string>

namespace sae {

std::string_view to_string(PotentialKind k) {
  switch (k) {
  case PotentialKind::bare_coulomb:
    return "coulomb";
  case PotentialKind::separable_mean_field:
    return "meanfield";
  case PotentialKind::sae_h1:
    return "h1";
  case PotentialKind::sae_h2:
    return "h2";
  }
  return "unknown";
}

PotentialKind potential_kind_from_string(std::string_view s) {
  if (s == "coulomb")
    return PotentialKind::bare_coulomb;
  if (s == "meanfield")
    return PotentialKind::separable_mean_field;
  if (s == "h1")
    return PotentialKind::sae_h1;
  if (s == "h2")
    return PotentialKind::sae_h2;
  throw ConfigError("unknown model '" + std::string(s) +
                    "' (expected coulomb, meanfield, h1 or h2)");
}

void PotentialModel::validate() const {
  if (!(Z > 0.0) || !std::isfinite(Z))
    throw ConfigError("model: nuclear charge Z must be positive");
  if (kind == PotentialKind::sae_h2 && !(alpha > 0.0 && alpha < 1.0))
    throw ConfigError("model: alpha must lie in (0, 1) for model h2");
}

double PotentialModel::asymptotic_charge() const {
  switch (kind) {
  case PotentialKind::bare_coulomb:
    return Z;
  case PotentialKind::separable_mean_field:
    return Z - 0.5 * std::cbrt(2.0 * Z);
  case PotentialKind::sae_h1:
  case PotentialKind::sae_h2:
    return Z - screening_prefactor(Z);
  }
  return Z;
}

double partition_fraction(double r_i, double r_j) {
  if (r_i < 0.0 || r_j < 0.0)
    throw DomainError("partition_fraction: radii must be non-negative");
  if (r_i == 0.0 && r_j == 0.0)
    throw DomainError("partition_fraction: undefined for r_i = r_j = 0");
  const double a = r_i * r_i;
  return a / (a + r_j * r_j);
}

double two_body_potential(double Z, double r_i, double r_j) {
  if (!(r_i > 0.0))
    throw DomainError("two_body_potential: r_i must be positive");
  if (r_j < 0.0)
    throw DomainError("two_body_potential: r_j must be non-negative");
  const double s = r_i * r_i + r_j * r_j;
  return -Z / r_i + r_i * r_i / (s * std::sqrt(s));
}

double zeta_h1(double Z, double r) {
  if (!(r > 0.0))
    throw DomainError("zeta_h1: r must be positive");
  const double zr = Z * r;
  const double bracket = 27.0 / 25.0 + 1.2 * zr - 6.0 / (125.0 * zr);
  return 1.0 - bracket * std::exp(-2.0 * zr);
}

double zeta_h2(double Z, double alpha, double r) {
  if (r < 0.0)
    throw DomainError("zeta_h2: r must be non-negative");
  const double zr = Z * r;
  return 1.0 - alpha * (1.0 + 3.0 * zr) * std::exp(-2.0 * zr);
}

double screening_prefactor(double Z) { return std::pow(0.5 * Z, 0.6); }

double evaluate(const PotentialModel &model, double r) {
  if (!(r > 0.0))
    throw DomainError("potential: r must be positive");
  const double Z = model.Z;
  switch (model.kind) {
  case PotentialKind::bare_coulomb:
    return -Z / r;
  case PotentialKind::separable_mean_field:
    return -Z / r + 0.5 * std::cbrt(2.0 * Z) / r;
  case PotentialKind::sae_h1:
    return -Z / r + screening_prefactor(Z) * zeta_h1(Z, r) / r;
  case PotentialKind::sae_h2:
    return -Z / r + screening_prefactor(Z) * zeta_h2(Z, model.alpha, r) / r;
  }
  return 0.0;
}

} // namespace sae
