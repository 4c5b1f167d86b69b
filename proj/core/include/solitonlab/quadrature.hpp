#pragma once

#include <functional>
#include <span>

namespace solitonlab {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // absolute error estimate
};

/// Adaptive Gauss-Kronrod on [a, b]. Throws AccuracyError when the error
/// estimate exceeds max(abs_tol, rel_tol * |integral of |f||).
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double rel_tol = 1e-13, double abs_tol = 0.0);

/// Same, split at the given increasing breakpoints (first and last are the limits).
QuadratureResult integrate_piecewise(const std::function<double(double)>& f, std::span<const double> points,
                                     double rel_tol = 1e-13, double abs_tol = 0.0);

/// Integral over [0, inf) of coeff * r^a * (r^2 + s^2)^(-q), requires a - 2q < -1.
/// Adaptive quadrature up to 1e3 * s, then the binomial series of the integrand
/// integrated term by term for the tail.
QuadratureResult integrate_algebraic_radial(double coeff, double a, double q, double s, double rel_tol = 1e-13);

/// The tail alone: integral over [r_cut, inf) of the same integrand, r_cut >> s.
double algebraic_tail(double coeff, double a, double q, double s, double r_cut);

}  // namespace solitonlab
