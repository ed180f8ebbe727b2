#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sae {

//! Input outside an operation's domain (e.g. r = 0 where the potential is
//! singular, both partition radii zero).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

//! Invalid configuration of a basis, model or command.
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

//! The overlap matrix could not be Cholesky-factorized.
class BasisError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

//! An iterative procedure hit its iteration limit.
class ConvergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

//! Adaptive quadrature did not reach the requested tolerance.
class QuadratureError : public std::runtime_error {
public:
  QuadratureError(const std::string &what, double estimate, double error)
      : std::runtime_error(what), estimate_(estimate), error_(error) {}
  double estimate() const { return estimate_; }
  double error() const { return error_; }

private:
  double estimate_;
  double error_;
};

//! Root bracketing failed.
class NoRootError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

//! A required channel or table row is missing.
class IncompleteInputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

//! Computed levels and reference rows do not line up.
class AlignmentError : public std::runtime_error {
public:
  AlignmentError(const std::string &what, std::vector<std::string> orphans)
      : std::runtime_error(what), orphans_(std::move(orphans)) {}
  const std::vector<std::string> &orphans() const { return orphans_; }

private:
  std::vector<std::string> orphans_;
};

//! Output destination could not be written.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

//! The alpha calibration objective is flat over the bracket.
class CalibrationError : public std::runtime_error {
public:
  CalibrationError(const std::string &what,
                   std::vector<std::pair<double, double>> profile)
      : std::runtime_error(what), profile_(std::move(profile)) {}
  //! Sampled (alpha, residual) pairs.
  const std::vector<std::pair<double, double>> &profile() const {
    return profile_;
  }

private:
  std::vector<std::pair<double, double>> profile_;
};

} // namespace sae
