#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "solitonlab/errors.hpp"
#include "solitonlab/four_vector.hpp"
#include "solitonlab/params.hpp"
#include "solitonlab/trajectory.hpp"

namespace solitonlab {

using Complex = std::complex<double>;

/// Psi, its covariant gradient d_mu Psi and d'Alembertian at one point.
struct PsiDerivatives {
  Complex value;
  std::array<Complex, 4> grad{};
  Complex box;
};

/// Analytic solutions of the linear Klein-Gordon equation used as pilot waves.
/// Plane waves carry the convention Psi = exp(-i (k + eA).x), so the guidance
/// velocity is k / omega0 whatever the constant potential.
class PsiModel {
 public:
  enum class Kind { plane_wave, superposition, cavity_mode, custom };
  struct Term {
    Complex weight;
    FourVector k;
  };
  using Function = std::function<Complex(const FourVector&)>;

  /// Throws DomainError unless k.k = omega0^2 within 1e-12 (relative).
  static PsiModel plane_wave(const SolitonParams& params, const FourVector& k, ExternalPotential potential = {});
  /// Plane wave whose guidance velocity is the given spatial velocity.
  static PsiModel plane_wave_velocity(const SolitonParams& params, double vx, double vy = 0.0, double vz = 0.0,
                                      ExternalPotential potential = {});
  static PsiModel superposition(const SolitonParams& params, std::vector<Term> terms, ExternalPotential potential = {});
  /// sin(k_n r)/r exp(-i omega_n t) with k_n = n pi / R inside a spherical cavity.
  static PsiModel cavity_mode(const SolitonParams& params, int n, double R);
  /// Arbitrary Psi; derivatives by fourth-order central differences with step
  /// 1e-4 * wavelength. amplitude_scale sets the node threshold.
  static PsiModel custom(const SolitonParams& params, Function psi, double amplitude_scale, double wavelength,
                         ExternalPotential potential = {});

  Kind kind() const { return kind_; }
  const SolitonParams& params() const { return params_; }
  const ExternalPotential& potential() const { return potential_; }
  const std::vector<Term>& terms() const { return terms_; }
  /// Upper bound of |Psi|, the reference for the node threshold.
  double amplitude_scale() const { return scale_; }
  /// Shortest length over which Psi varies appreciably.
  double length_scale() const { return length_; }
  double cavity_frequency() const { return omega_n_; }
  double cavity_radius() const { return R_; }

  Complex value(const FourVector& x) const;
  PsiDerivatives derivatives(const FourVector& x) const;

 private:
  PsiModel() = default;
  PsiModel as_kind(Kind k) &&;
  Kind kind_ = Kind::plane_wave;
  SolitonParams params_;
  ExternalPotential potential_;
  std::vector<Term> terms_;  // wavevectors include the eA shift
  double k_n_ = 0.0, omega_n_ = 0.0, R_ = 0.0;
  Function fn_;
  double scale_ = 1.0, length_ = 1.0;
};

/// Hydrodynamic fields of Psi = a e^{iS} at a point.
struct HydroFields {
  double amplitude = 0.0;
  double phase = 0.0;         // arg Psi, principal branch; informational
  FourVector phase_gradient;  // d^mu S, contravariant
  double quantum_potential = 0.0;
  double mass_squared = 0.0;
  double mass = 0.0;
  FourVector velocity;        // -(dS + eA) / M
};

/// Decomposition from point derivatives; shared by single- and many-body models.
/// Throws NodeError when |Psi| < 1e-12 * node_scale and TachyonError when M^2 <= 0.
HydroFields hydro_from_derivatives(const PsiDerivatives& d, double omega0, double e, const FourVector& A,
                                   double node_scale);

HydroFields hydro_decompose(const PsiModel& psi, const FourVector& x);

/// Guidance integration hit a node or a tachyonic region. Carries the samples
/// accepted before the failure.
class DynamicsError : public Error {
 public:
  DynamicsError(const std::string& what, std::vector<TrajectorySample> partial)
      : Error(what), partial_(std::move(partial)) {}
  const std::vector<TrajectorySample>& partial() const noexcept { return partial_; }

 private:
  std::vector<TrajectorySample> partial_;
};

struct GuidanceOptions {
  double tol = 1e-10;
  std::size_t samples = 201;  // uniformly spaced in proper time, endpoints included
};

/// dz/dtau = v_Psi(z) from tau0 to tau1; the result is proper-time parameterized.
Trajectory integrate_guidance(const PsiModel& psi, const FourVector& z0, double tau0, double tau1,
                              const GuidanceOptions& options = {});

struct CollectiveSample {
  double tau = 0.0;
  double mass = 0.0;
  double alpha = 1.0;            // sqrt(M / M(0))
  double B = 0.0;                // dM/dtau / 2
  double amplitude_ratio = 1.0;  // f(z(tau)) / f(z(0)) = (M / M(0))^(1/4)
};

/// Collective coordinates from masses sampled along a path (central differences).
std::vector<CollectiveSample> collective_from_masses(const std::vector<double>& taus, const std::vector<double>& masses);

std::vector<CollectiveSample> collective_coordinates(const PsiModel& psi, const Trajectory& traj);

struct ForceLawReport {
  double max_residual = 0.0;
  std::vector<double> taus;
  std::vector<FourVector> residuals;
};

/// d/dtau [M zdot] - d^mu M - e F^{mu nu} zdot_nu at the interior samples, with
/// three-point differences along the trajectory (second order in the step).
ForceLawReport force_law_residual(const PsiModel& psi, const Trajectory& traj);

/// Central-difference spacetime gradient d^mu M (contravariant) of the Bohmian mass.
FourVector mass_gradient(const PsiModel& psi, const FourVector& x);

/// sqrt(alpha) g / (4 pi sqrt(alpha^2 r^2 + r0^2)).
double near_field_amplitude(const SolitonParams& params, double alpha, double r);

/// u = F_tau(r) exp(i [S(z) - eA(z).xi + B xi.xi / 2]) for an offset xi in the
/// rest hyperplane at proper time tau. Throws GeometryError if xi.zdot != 0.
Complex assemble_near_field(const SolitonParams& params, const PsiModel& psi, const Trajectory& traj, double tau,
                            const FourVector& xi);

}  // namespace solitonlab
