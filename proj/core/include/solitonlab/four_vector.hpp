#pragma once

#include <array>
#include <cmath>
#include <iosfwd>

namespace solitonlab {

/// Contravariant four-vector in natural units (c = hbar = 1).
/// The Minkowski metric has signature (+,-,-,-).
struct FourVector {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr FourVector() = default;
  constexpr FourVector(double t_, double x_, double y_, double z_) : t(t_), x(x_), y(y_), z(z_) {}

  constexpr double operator[](int mu) const {
    return mu == 0 ? t : mu == 1 ? x : mu == 2 ? y : z;
  }
  constexpr double& operator[](int mu) {
    return mu == 0 ? t : mu == 1 ? x : mu == 2 ? y : z;
  }

  constexpr FourVector& operator+=(const FourVector& o) {
    t += o.t; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr FourVector& operator-=(const FourVector& o) {
    t -= o.t; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr FourVector& operator*=(double s) {
    t *= s; x *= s; y *= s; z *= s;
    return *this;
  }
  constexpr FourVector& operator/=(double s) { return *this *= (1.0 / s); }

  friend constexpr FourVector operator+(FourVector a, const FourVector& b) { return a += b; }
  friend constexpr FourVector operator-(FourVector a, const FourVector& b) { return a -= b; }
  friend constexpr FourVector operator-(FourVector a) { return a *= -1.0; }
  friend constexpr FourVector operator*(FourVector a, double s) { return a *= s; }
  friend constexpr FourVector operator*(double s, FourVector a) { return a *= s; }
  friend constexpr FourVector operator/(FourVector a, double s) { return a /= s; }
  friend constexpr bool operator==(const FourVector&, const FourVector&) = default;
};

std::ostream& operator<<(std::ostream& os, const FourVector& v);

/// a.b = a^t b^t - a_vec . b_vec
constexpr double minkowski_dot(const FourVector& a, const FourVector& b) {
  return a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z;
}

constexpr double spatial_dot(const FourVector& a, const FourVector& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline double spatial_norm(const FourVector& a) { return std::sqrt(spatial_dot(a, a)); }

/// Largest absolute component; used for tolerance scaling.
inline double max_abs(const FourVector& a) {
  return std::fmax(std::fmax(std::fabs(a.t), std::fabs(a.x)), std::fmax(std::fabs(a.y), std::fabs(a.z)));
}

/// Lower the index: (a^t, a^x, a^y, a^z) -> (a_t, a_x, a_y, a_z).
constexpr FourVector lower(const FourVector& a) { return {a.t, -a.x, -a.y, -a.z}; }

/// Unit four-velocity gamma (1, v) for a spatial velocity.
FourVector four_velocity(double vx, double vy = 0.0, double vz = 0.0);

/// Spatial offset given in the instantaneous rest frame of `velocity`, mapped to
/// lab coordinates by the pure boost along the velocity. The result satisfies
/// offset . velocity = 0.
FourVector rest_frame_offset(const FourVector& velocity, double dx, double dy, double dz);

/// Orthonormal spatial triad spanning the hyperplane normal to a unit timelike vector.
/// Each e_k satisfies e_k . velocity = 0 and e_k . e_k = -1.
std::array<FourVector, 3> hyperplane_basis(const FourVector& velocity);

}  // namespace solitonlab
