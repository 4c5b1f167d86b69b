#pragma once

#include <array>
#include <string>
#include <vector>

#include "solitonlab/four_vector.hpp"

namespace solitonlab {

inline constexpr double kPi = 3.14159265358979323846;

/// Soliton charge g, core radius r0, rest mass omega0 and electric coupling e.
struct SolitonParams {
  double g = 4.0 * kPi;
  double r0 = 1.0;
  double omega0 = 0.0;
  double e = 0.0;

  /// Throws DomainError unless r0 > 0 and omega0 >= 0.
  void validate() const;

  /// Regime warnings (omega0 r0 > 0.1), empty when the small-core regime holds.
  std::vector<std::string> regime_warnings() const;

  /// 3 r0^2 / (g / 4 pi)^4, the quintic coefficient of the Lane-Emden equation.
  double quintic_coefficient() const;
};

/// A(x) = [V, A_vec]. Only zero and constant potentials are modelled; both are
/// pure gauge, so the field tensor F^{mu nu} vanishes identically.
class ExternalPotential {
 public:
  enum class Kind { zero, constant };

  ExternalPotential() = default;
  static ExternalPotential constant(const FourVector& a) { return ExternalPotential(Kind::constant, a); }

  Kind kind() const { return kind_; }
  FourVector value(const FourVector& /*x*/ = {}) const { return value_; }

  using Tensor = std::array<std::array<double, 4>, 4>;
  Tensor field_tensor(const FourVector& /*x*/ = {}) const { return {}; }

 private:
  ExternalPotential(Kind k, const FourVector& a) : kind_(k), value_(a) {}
  Kind kind_ = Kind::zero;
  FourVector value_{};
};

/// Contract F^{mu nu} with a contravariant vector's lowered index: F^{mu nu} v_nu.
FourVector contract_field(const ExternalPotential::Tensor& f, const FourVector& v);

}  // namespace solitonlab
