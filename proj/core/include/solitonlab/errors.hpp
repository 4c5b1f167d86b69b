#pragma once

#include <stdexcept>
#include <string>

namespace solitonlab {

/// Base of every error thrown by the library. Catch this at tool boundaries.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RangeError : public Error { using Error::Error; };
class InsufficientDataError : public Error { using Error::Error; };
class CausalityError : public Error { using Error::Error; };
class DomainError : public Error { using Error::Error; };
class GeometryError : public Error { using Error::Error; };
class ValidityError : public Error { using Error::Error; };
class ResonanceError : public Error { using Error::Error; };
class FitError : public Error { using Error::Error; };
class ConfigError : public Error { using Error::Error; };
class IoError : public Error { using Error::Error; };

/// Quadrature failed to reach the requested tolerance.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double estimate, double error_estimate)
      : Error(what), estimate_(estimate), error_estimate_(error_estimate) {}
  double estimate() const noexcept { return estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double estimate_;
  double error_estimate_;
};

/// ODE integration could not proceed. Carries the last accepted state.
class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, double t_last)
      : Error(what), t_last_(t_last) {}
  double last_time() const noexcept { return t_last_; }

 private:
  double t_last_;
};

class DivergenceError : public IntegrationError {
 public:
  using IntegrationError::IntegrationError;
};

/// |Psi| fell below the node threshold at the evaluation point.
class NodeError : public Error { using Error::Error; };

/// M^2 = omega0^2 + Q <= 0 at the evaluation point.
class TachyonError : public Error { using Error::Error; };

/// The light cone of a field point leaves the sampled part of a worldline.
class HorizonError : public Error {
 public:
  enum class Root { retarded, advanced };
  HorizonError(const std::string& what, Root root) : Error(what), root_(root) {}
  Root root() const noexcept { return root_; }

 private:
  Root root_;
};

/// rho = |(x - z) . zdot| vanished at a light-cone root.
class CausticError : public Error { using Error::Error; };

}  // namespace solitonlab
