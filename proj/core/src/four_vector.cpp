#include "solitonlab/four_vector.hpp"

#include <ostream>
#include <stdexcept>

#include "solitonlab/errors.hpp"

namespace solitonlab {

std::ostream& operator<<(std::ostream& os, const FourVector& v) {
  return os << '(' << v.t << ", " << v.x << ", " << v.y << ", " << v.z << ')';
}

FourVector four_velocity(double vx, double vy, double vz) {
  const double v2 = vx * vx + vy * vy + vz * vz;
  if (v2 >= 1.0) throw DomainError("four_velocity: superluminal velocity");
  const double gamma = 1.0 / std::sqrt(1.0 - v2);
  return {gamma, gamma * vx, gamma * vy, gamma * vz};
}

FourVector rest_frame_offset(const FourVector& u, double dx, double dy, double dz) {
  // Boost with beta = u_vec / u^t applied to (0, d).
  const double gamma = u.t;
  const double bx = u.x / gamma, by = u.y / gamma, bz = u.z / gamma;
  const double b2 = bx * bx + by * by + bz * bz;
  const double bd = bx * dx + by * dy + bz * dz;
  const double k = b2 > 0.0 ? (gamma - 1.0) / b2 : 0.0;
  return {gamma * bd, dx + k * bd * bx, dy + k * bd * by, dz + k * bd * bz};
}

std::array<FourVector, 3> hyperplane_basis(const FourVector& u) {
  return {rest_frame_offset(u, 1, 0, 0), rest_frame_offset(u, 0, 1, 0), rest_frame_offset(u, 0, 0, 1)};
}

}  // namespace solitonlab
