#pragma once

#include <array>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <vector>

#include "solitonlab/four_vector.hpp"
#include "solitonlab/trajectory.hpp"

namespace solitonlab {

/// Position and proper-time derivatives at one point of a worldline.
struct Kinematics {
  FourVector position;
  FourVector velocity;      // dz/dtau, unit timelike
  FourVector acceleration;  // d2z/dtau2, orthogonal to velocity
  FourVector jerk;          // d3z/dtau3
  double proper_time = 0.0;
};

/// A timelike worldline z(s) over a generic parameter s (proper time, coordinate
/// time or a foliation parameter, depending on the implementation).
class Worldline {
 public:
  virtual ~Worldline() = default;

  virtual double parameter_min() const = 0;
  virtual double parameter_max() const = 0;
  virtual FourVector position(double s) const = 0;
  /// dz/ds.
  virtual FourVector tangent(double s) const = 0;
  virtual double proper_time(double s) const = 0;
  virtual double parameter_at_proper_time(double tau) const = 0;
  /// Parameter whose coordinate time equals t (clamped to the parameter range).
  virtual double parameter_at_coordinate_time(double t) const;
  virtual Kinematics kinematics(double s) const = 0;
  /// Sample nodes, when the worldline is built from samples. Used for root bracketing.
  virtual std::span<const double> nodes() const { return {}; }

  FourVector velocity(double s) const;
};

/// z(tau) = origin + u tau, parameter s = tau.
class UniformWorldline final : public Worldline {
 public:
  UniformWorldline(const FourVector& origin, double vx, double vy = 0.0, double vz = 0.0);

  double parameter_min() const override { return -std::numeric_limits<double>::infinity(); }
  double parameter_max() const override { return std::numeric_limits<double>::infinity(); }
  FourVector position(double s) const override { return origin_ + u_ * s; }
  FourVector tangent(double) const override { return u_; }
  double proper_time(double s) const override { return s; }
  double parameter_at_proper_time(double tau) const override { return tau; }
  double parameter_at_coordinate_time(double t) const override { return (t - origin_.t) / u_.t; }
  Kinematics kinematics(double s) const override;

 private:
  FourVector origin_;
  FourVector u_;
};

/// Worldline given analytically in coordinate time, s = t. Proper time is
/// measured from t = 0 and obtained by adaptive quadrature of sqrt(1 - v^2).
class CoordinateTimeWorldline final : public Worldline {
 public:
  using Vec3 = std::array<double, 3>;
  struct Motion {
    std::function<Vec3(double)> position, velocity, acceleration, jerk;
  };

  explicit CoordinateTimeWorldline(Motion motion,
                                   double t_min = -std::numeric_limits<double>::infinity(),
                                   double t_max = std::numeric_limits<double>::infinity());

  double parameter_min() const override { return t_min_; }
  double parameter_max() const override { return t_max_; }
  FourVector position(double t) const override;
  FourVector tangent(double t) const override;
  double proper_time(double t) const override;
  double parameter_at_proper_time(double tau) const override;
  double parameter_at_coordinate_time(double t) const override;
  Kinematics kinematics(double t) const override;

 private:
  Motion m_;
  double t_min_, t_max_;
};

/// x(t) = -sqrt(x0^2 + v0^2 t^2), at its apex at t = 0.
std::shared_ptr<CoordinateTimeWorldline> hyperbolic_worldline(double x0, double v0);

/// Uniform circular motion of the given radius and angular velocity in the x-y plane.
std::shared_ptr<CoordinateTimeWorldline> circular_worldline(double radius, double omega);

/// Cubic Hermite worldline through sample nodes. Unit velocities are interpolated
/// with finite-difference slopes to give the acceleration; the jerk is a central
/// difference of the interpolated acceleration.
class SampledWorldline final : public Worldline {
 public:
  /// From a trajectory: proper-time data keeps s = tau; coordinate-time data keeps
  /// s = lambda and integrates proper time, with tau = 0 at t = 0 when the samples
  /// span it and at the first sample otherwise. Needs at least two samples.
  explicit SampledWorldline(const Trajectory& traj);

  /// Fully specified nodes: positions, exact tangents dz/ds, proper times and dtau/ds.
  SampledWorldline(std::vector<double> s, std::vector<FourVector> z, std::vector<FourVector> dz,
                   std::vector<double> tau, std::vector<double> dtau);

  double parameter_min() const override { return s_.front(); }
  double parameter_max() const override { return s_.back(); }
  FourVector position(double s) const override;
  FourVector tangent(double s) const override;
  double proper_time(double s) const override;
  double parameter_at_proper_time(double tau) const override;
  double parameter_at_coordinate_time(double t) const override;
  Kinematics kinematics(double s) const override;
  std::span<const double> nodes() const override { return s_; }

  std::span<const double> node_proper_times() const { return tau_; }
  std::span<const FourVector> node_positions() const { return z_; }

 private:
  void finish();
  double dtau_ds(double s) const;
  FourVector unit_velocity_slope(double s) const;  // d(u)/ds of the interpolated unit velocity

  std::vector<double> s_;
  std::vector<FourVector> z_, dz_;
  std::vector<double> tau_, dtau_;
  std::vector<FourVector> u_, du_;
};

/// Kinematics of a sampled trajectory at parameter lambda (RangeError outside the
/// samples, InsufficientDataError for fewer than five samples).
Kinematics kinematics_at(const Trajectory& traj, double lambda);

/// Proper-time trajectory with n uniformly spaced proper-time samples spanning the
/// same proper-time interval.
Trajectory resample_proper_time(const Trajectory& traj, std::size_t n);

/// Proper time elapsed between the first and last samples.
double total_proper_time(const Trajectory& traj);

}  // namespace solitonlab
