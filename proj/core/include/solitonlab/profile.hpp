#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "solitonlab/params.hpp"
#include "solitonlab/quadrature.hpp"

namespace solitonlab {

/// F(r) = (g/4pi) / sqrt(r^2 + r0^2), the closed-form p = 2 soliton.
class LaneEmdenProfile {
 public:
  explicit LaneEmdenProfile(SolitonParams p);

  const SolitonParams& params() const { return p_; }
  double amplitude() const { return p_.g / (4.0 * kPi); }  // g / 4pi
  double gamma() const { return p_.quintic_coefficient(); }

  double operator()(double r) const;
  double derivative(double r) const;
  double second_derivative(double r) const;
  /// F'' + 2F'/r, with the r -> 0 limit 3F''(0).
  double laplacian(double r) const;

 private:
  SolitonParams p_;
};

double profile_eval(const LaneEmdenProfile& prof, double r);

/// r0 -> r0/alpha, g -> g/sqrt(alpha): the profile sqrt(alpha) F(alpha r).
LaneEmdenProfile dilate(const LaneEmdenProfile& prof, double alpha);

/// N(y) = -gamma y^p and its potential U(y) = -gamma y^(p+1)/(p+1), so N = dU/dy.
struct Nonlinearity {
  double p = 2.0;
  double gamma = 0.0;

  static Nonlinearity lane_emden(const SolitonParams& params) { return {2.0, params.quintic_coefficient()}; }
  double N(double y) const;
  double U(double y) const;
};

/// -int N(f^2) f d^3x; equals g.
QuadratureResult charge_integral(const LaneEmdenProfile& prof);

/// int [U(f^2) - N(f^2) f^2] d^3x; equals g^2 / (32 r0).
QuadratureResult static_energy(const LaneEmdenProfile& prof);

double static_energy_closed_form(const SolitonParams& params);

struct DerrickRow {
  double alpha = 1.0;
  double beta = 1.0;
  double energy = 0.0;          // quadrature of the transformed profile
  double energy_formula = 0.0;  // beta^2/alpha I_k - beta^(2(p+1))/alpha^3 I_p
};

struct DerrickScan {
  double p = 2.0;
  double gamma = 0.0;
  double I_k = 0.0;
  double I_p = 0.0;
  double surface_term = 0.0;  // 4 pi R^2 |f f'| at the quadrature boundary
  double boundary = 0.0;
  std::vector<DerrickRow> rows;  // constrained, beta = alpha^(1/p)
  double dE = 0.0, d2E = 0.0;                              // constrained, at alpha = 1
  double dE_unconstrained = 0.0, d2E_unconstrained = 0.0;  // beta = 1
};

/// E_s(alpha) for f -> beta f(alpha r) with beta = alpha^(1/p). The profile shape
/// is the closed-form one; for p != 2 the coefficient gamma must be supplied.
/// Derivatives: central differences with step 1e-3 and one Richardson step.
DerrickScan derrick_scan(const LaneEmdenProfile& prof, double p, std::span<const double> alphas,
                         std::optional<double> gamma = std::nullopt);

/// CSV `alpha,E_s,beta` followed by `# key,value` summary lines.
void write_derrick_csv(std::ostream& os, const DerrickScan& scan);

/// (g/4pi) cos(M r) / sqrt(r^2 + r0^2).
double interpolated_far_profile(const SolitonParams& params, double M, double r);

/// Warning text when M r0 leaves the small-core regime, empty otherwise.
std::string far_profile_regime_warning(const SolitonParams& params, double M);

struct ResidualTerms {
  double residual = 0.0;  // F'' + 2F'/r + gamma F^5 + M^2 F
  double scale = 0.0;     // sum of the magnitudes of the four terms
};

/// The radial equation with mass term evaluated on the interpolated far profile.
ResidualTerms radial_equation_residual(const SolitonParams& params, double M, double r);

/// G'' + 3 G^5 / x^4 for G(x) = x / sqrt(1 + x^2) + offset, analytic G''.
double g_equation_residual(double x, double offset = 0.0);

}  // namespace solitonlab
