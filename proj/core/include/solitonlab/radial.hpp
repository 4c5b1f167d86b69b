#pragma once

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

namespace solitonlab {

/// F'' + (2/r) F' + kappa F^5 + A F = 0 with F(0) = F0, F'(0) = 0.
struct RadialProblem {
  double A = 0.0;
  double kappa = 3.0;
  double F0 = 1.0;
  double r_max = 10.0;
  double tol = 1e-10;
  double epsilon = 1e-6;      // series start
  double output_step = 0.01;  // spacing of the returned grid

  void validate() const;
};

struct RadialPoint {
  double r, F, dF;
};

struct RadialSolution {
  std::vector<RadialPoint> grid;  // r = epsilon, then multiples of output_step, then r_max
  std::size_t steps = 0;
  std::size_t rejected = 0;
  double max_local_error = 0.0;

  /// Hermite dense output using F'' from the ODE.
  double F(double r) const;
  double kappa = 3.0, A = 0.0;
};

/// F(eps) = F0 + c eps^2, F'(eps) = 2 c eps with c = -(kappa F0^5 + A F0) / 6.
std::pair<double, double> series_start(const RadialProblem& prob, double epsilon);

/// Throws IntegrationError on step underflow and DivergenceError once |F| > 1e6.
RadialSolution solve_radial(const RadialProblem& prob);

struct TailFit {
  double amplitude = 0.0;  // C
  double phase = 0.0;      // delta, in (-pi, pi]
  double exponent = 1.0;   // m
  double rms_residual = 0.0;
  double envelope_error = 0.0;  // max |fit - F| / (C / r^m) over the window
};

/// Least-squares fit of C cos(sqrt(A) r + delta) / r^m over the window.
/// Throws FitError for A <= 0 or a window shorter than two periods.
TailFit tail_fit(const RadialSolution& sol, double A, std::pair<double, double> window);

/// CSV `r,F,dF`.
void write_radial_csv(std::ostream& os, const RadialSolution& sol);

}  // namespace solitonlab
