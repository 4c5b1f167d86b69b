#pragma once

#include <array>
#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "solitonlab/params.hpp"

namespace solitonlab {

/// Energy and norm of the rest monopole f = (g/4pi) cos(omega0 r) / sqrt(r^2 + r0^2)
/// inside a sphere of radius R.
struct EnergyReport {
  double R = 0.0;
  double E_numeric = 0.0, E_closed = 0.0;
  double Q_numeric = 0.0, Q_closed = 0.0;
  double ratio = 0.0;    // E_numeric / Q_numeric
  double E_s = 0.0;      // core energy int [U - f^2 N], by quadrature
  double surface = 0.0;  // 4 pi R^2 f f' at R, the total-divergence term
  std::vector<std::string> warnings;
};

/// E = int [U(f^2) - f^2 N(f^2) + 2 omega0^2 f^2] d^3x + surface term, Q = int 2 omega0 f^2 d^3x.
EnergyReport energy_vs_radius(const SolitonParams& params, double R);

std::vector<EnergyReport> energy_sweep(const SolitonParams& params, std::span<const double> radii,
                                       unsigned threads = 1);

/// E_s + (g^2/4pi) [omega0^2 R - cos^2(omega0 R) / R].
double energy_closed_form(const SolitonParams& params, double R);
/// (g^2/4pi) [omega0 R + sin(2 omega0 R) / 2].
double norm_closed_form(const SolitonParams& params, double R);
/// omega0 [1 + lambda0^2 / (32 pi r0 R)], lambda0 = 2 pi / omega0.
double energy_per_norm_asymptote(const SolitonParams& params, double R);

/// Least-squares exponent p in y ~ c x^(-p) on log-log axes.
double fit_decay_exponent(std::span<const double> x, std::span<const double> y);

struct CavityField {
  std::complex<double> u;  // total field at (t, r)
  double f_direct = 0.0;   // g cos(omega r) / (4 pi r)
  double f_reflected = 0.0;  // cot(omega R) g sin(omega r) / (4 pi r); u = (f_direct - f_reflected) e^{-i omega t}
  double ratio = 0.0;        // |f_reflected / f_direct|
  bool near_resonance = false;
};

/// Monopole of frequency omega in a spherical cavity of radius R with u(R) = 0.
/// ResonanceError when |sin(omega R)| < 1e-6; near_resonance when below 0.05.
CavityField cavity_field(const SolitonParams& params, double omega, double R_cav, double r, double t = 0.0);

using ComplexField = std::function<std::complex<double>(const FourVector&)>;

struct StressTensor {
  using Matrix = std::array<std::array<double, 4>, 4>;
  Matrix T{};             // 2 f^2 M^2 v^mu v^nu
  FourVector divergence;  // d_mu T^{mu nu}, central differences of step h
  FourVector force;       // 2 f^2 M (d^nu M + e F^{nu mu} v_mu)
  FourVector residual;    // divergence - force
  double max_residual = 0.0;
  double scale = 0.0;     // max |T^{mu nu}| / h, for relative comparisons
};

/// Energy-momentum tensor of u = f e^{i phi}, with M = |d phi + eA| and
/// v = -(d phi + eA) / M. Inner derivatives use step h / 10 (fourth order), the
/// divergence step h (second order). NodeError where |u| vanishes.
StressTensor stress_tensor(const SolitonParams& params, const ComplexField& u, const FourVector& x, double h,
                           const ExternalPotential& potential = {});

/// Symmetric rest monopole (g/4pi) cos(omega0 r) e^{-i omega0 t} / sqrt(r^2 + r0^2),
/// boosted to velocity vx.
ComplexField monopole_field(const SolitonParams& params, double vx = 0.0);

struct DiamondEnergy {
  double E_before = 0.0, E_during = 0.0, E_after = 0.0;  // by quadrature
  double bulk_closed = 0.0;                              // (g^2/4pi) omega0^2 T / 2
  double E_s = 0.0;
  std::vector<std::string> warnings;
};

/// Energy bookkeeping for a soliton living from t = 0 to t = T. Outside the
/// lifetime only a half-amplitude retarded or advanced shell of thickness T
/// exists; at time t inside it the two overlap for r < min(t, T - t) and the core
/// adds E_s. Transients at the tips are neglected.
DiamondEnergy diamond_energy(const SolitonParams& params, double T_life, double t_eval = -1.0);

/// 32 pi (r0 / lambda0) (R / lambda0).
double darkmatter_ratio(double r0, double lambda0, double R);

}  // namespace solitonlab
