#pragma once

#include <array>
#include <complex>
#include <functional>
#include <string>

#include "solitonlab/four_vector.hpp"
#include "solitonlab/params.hpp"
#include "solitonlab/worldline.hpp"

namespace solitonlab {

class PsiModel;

using Complex = std::complex<double>;

enum class FieldKind { ret, adv, sym };
std::string to_string(FieldKind k);
FieldKind parse_field_kind(const std::string& s);

struct LightConeRoot {
  double s = 0.0;    // worldline parameter
  double tau = 0.0;  // proper time
  FourVector position;
  FourVector velocity;
  double residual = 0.0;  // (x - z)^2 at the root
  double rho = 0.0;       // |(x - z) . zdot|
};

struct LightConeRoots {
  LightConeRoot ret, adv;
  double s_x = 0.0;  // parameter of the worldline point simultaneous with x
};

/// Intersections of the worldline with the past and future light cones of x.
/// Throws HorizonError (naming the root) when a cone leaves the parameter range and
/// CausticError when x lies on the worldline.
LightConeRoots solve_light_cone(const Worldline& w, const FourVector& x);

/// Where the field was emitted; path functions see the parameter, proper time and event.
struct EmissionPoint {
  double s = 0.0;
  double tau = 0.0;
  FourVector position;
};

/// Phase S(z(tau)) and compression alpha(tau) along the source path.
struct PathData {
  std::function<double(const EmissionPoint&)> phase;
  std::function<double(const EmissionPoint&)> alpha;  // empty means alpha = 1

  /// S = -omega0 tau, alpha = 1.
  static PathData classical(double omega0);
  /// S = arg Psi(z), alpha = sqrt(M_Psi(z) / M0). The model must outlive the result.
  static PathData from_psi(const PsiModel& psi, double M0);
};

/// exp(-i e A.(x - x')), the constant-potential factor on the vacuum kernel.
Complex constant_A_kernel_phase(double e, const FourVector& A, const FourVector& x, const FourVector& xp);

struct LienardValue {
  LightConeRoots roots;
  Complex ret, adv;            // pole regularized as 1/sqrt(rho^2 + r0^2)
  Complex ret_bare, adv_bare;  // 1/rho

  Complex sym() const { return 0.5 * (ret + adv); }
  Complex sym_bare() const { return 0.5 * (ret_bare + adv_bare); }
  Complex get(FieldKind k, bool regularized = true) const;
};

/// g(0) e^{iS} / (4 pi sqrt(alpha) rho) at both light-cone roots, times the
/// constant-potential kernel factor when e A != 0.
LienardValue lienard_all(const SolitonParams& params, const Worldline& w, const PathData& path, const FourVector& x,
                         const ExternalPotential& potential = {});

Complex lienard_field(const SolitonParams& params, const Worldline& w, const PathData& path, const FourVector& x,
                      FieldKind kind, const ExternalPotential& potential = {});

/// Closed-form field of a source in uniform motion along x with the classical
/// phase, pole regularized. sym uses the cosine form.
Complex uniform_motion_field(const SolitonParams& params, double vx, const FourVector& x, FieldKind kind);

struct NearFieldExpansion {
  double sigma_ret = 0.0, sigma_adv = 0.0;
  double inv_rho_ret = 0.0, inv_rho_adv = 0.0;
  Complex u_expanded;  // series roots with a second-order Taylor expansion of g e^{iS}
  Complex u_printed;   // the closed O(r^2) bracket in its commonly quoted form
};

/// Small-distance expansion of the symmetric field at x = z(tau) + xi, with xi in the
/// rest hyperplane. Throws GeometryError if xi.zdot != 0 and ValidityError unless
/// r |zddot| < 0.1.
NearFieldExpansion near_field_expansion(const SolitonParams& params, const Worldline& w, const PathData& path,
                                        double tau, const FourVector& xi);

struct FarFieldGuidance {
  double angle = 0.0;  // between -(d phi + e A) and zdot, radians
  FourVector direction;
};

/// Extracts d phi from the evaluated (unregularized, symmetric) field on a stencil
/// z +- xi_k and compares -(d phi + eA) with zdot. The stencil vectors must be
/// mutually orthogonal, of equal length and orthogonal to zdot (GeometryError).
FarFieldGuidance guidance_from_far_field(const SolitonParams& params, const Worldline& w, const PathData& path,
                                         double tau, const std::array<FourVector, 3>& stencil,
                                         const ExternalPotential& potential = {});

/// Same, with the orthonormal rest-frame triad scaled to length r.
FarFieldGuidance guidance_from_far_field(const SolitonParams& params, const Worldline& w, const PathData& path,
                                         double tau, double r, const ExternalPotential& potential = {});

}  // namespace solitonlab
