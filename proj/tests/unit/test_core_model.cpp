#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "solitonlab/errors.hpp"
#include "solitonlab/four_vector.hpp"
#include "solitonlab/params.hpp"
#include "solitonlab/quadrature.hpp"
#include "solitonlab/trajectory.hpp"
#include "solitonlab/worldline.hpp"

using namespace solitonlab;

namespace {

Trajectory hyperbola_samples(double x0, double v0, double T, std::size_t n) {
  std::vector<TrajectorySample> s;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = -T + 2.0 * T * static_cast<double>(k) / static_cast<double>(n - 1);
    s.push_back({t, {t, -std::sqrt(x0 * x0 + v0 * v0 * t * t), 0.0, 0.0}});
  }
  return Trajectory(std::move(s), Parameterization::coordinate_time);
}

Trajectory line_samples(double v, double t0, double t1, std::size_t n) {
  std::vector<TrajectorySample> s;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(n - 1);
    s.push_back({t, {t, v * t, 0.0, 0.0}});
  }
  return Trajectory(std::move(s), Parameterization::coordinate_time);
}

}  // namespace

TEST(MinkowskiDot, SignatureExamples) {
  EXPECT_EQ(minkowski_dot({1, 0, 0, 0}, {1, 0, 0, 0}), 1.0);
  EXPECT_EQ(minkowski_dot({1, 1, 0, 0}, {1, 1, 0, 0}), 0.0);
  EXPECT_EQ(minkowski_dot({0, 3, 4, 0}, {0, 3, 4, 0}), -25.0);
}

TEST(MinkowskiDot, BilinearAndSymmetric) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-5, 5);
  auto rv = [&] { return FourVector{u(rng), u(rng), u(rng), u(rng)}; };
  for (int i = 0; i < 500; ++i) {
    const FourVector a = rv(), b = rv(), c = rv();
    const double s = u(rng);
    EXPECT_DOUBLE_EQ(minkowski_dot(a, b), minkowski_dot(b, a));
    EXPECT_NEAR(minkowski_dot(a * s + b, c), s * minkowski_dot(a, c) + minkowski_dot(b, c), 1e-11);
  }
}

TEST(FourVelocity, RejectsSuperluminal) {
  EXPECT_THROW(four_velocity(1.2), DomainError);
  const auto u = four_velocity(0.6);
  EXPECT_DOUBLE_EQ(u.t, 1.25);
  EXPECT_DOUBLE_EQ(u.x, 0.75);
}

TEST(HyperplaneBasis, OrthonormalAndNormalToVelocity) {
  const auto u = four_velocity(0.3, -0.5, 0.2);
  const auto e = hyperplane_basis(u);
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(minkowski_dot(e[i], u), 0.0, 1e-14);
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(minkowski_dot(e[i], e[j]), i == j ? -1.0 : 0.0, 1e-14);
  }
  EXPECT_NEAR(minkowski_dot(rest_frame_offset(u, 0.1, 0.2, -0.3), u), 0.0, 1e-15);
}

TEST(SolitonParams, ValidationAndRegimeFlag) {
  SolitonParams p;
  p.r0 = 0.0;
  EXPECT_THROW(p.validate(), DomainError);
  p.r0 = 1.0;
  p.omega0 = -1.0;
  EXPECT_THROW(p.validate(), DomainError);
  p.omega0 = 0.05;
  EXPECT_TRUE(p.regime_warnings().empty());
  p.omega0 = 0.5;
  EXPECT_EQ(p.regime_warnings().size(), 1u);
}

TEST(ExternalPotential, ConstantIsPureGauge) {
  const auto A = ExternalPotential::constant({0.3, 0.1, -0.2, 0.0});
  for (const auto& row : A.field_tensor({1, 2, 3, 4}))
    for (double f : row) EXPECT_EQ(f, 0.0);
  EXPECT_EQ(A.value({5, 0, 0, 0}), (FourVector{0.3, 0.1, -0.2, 0.0}));
}

TEST(Trajectory, RejectsLightlikeSegment) {
  std::vector<TrajectorySample> s{{0.0, {0, 0, 0, 0}}, {1.0, {1, 1, 0, 0}}};
  EXPECT_THROW(Trajectory(s, Parameterization::coordinate_time), CausalityError);
}

TEST(Trajectory, RejectsNonMonotoneParameter) {
  std::vector<TrajectorySample> s{{0.0, {0, 0, 0, 0}}, {0.0, {1, 0, 0, 0}}};
  EXPECT_THROW(Trajectory(s, Parameterization::coordinate_time), DomainError);
}

TEST(Trajectory, CsvRoundTrip) {
  const auto tr = line_samples(0.6, -1.0, 1.0, 7);
  std::stringstream ss;
  write_trajectory_csv(ss, tr);
  EXPECT_EQ(ss.str().substr(0, 15), "lambda,t,x,y,z\n");
  const auto back = read_trajectory_csv(ss, Parameterization::coordinate_time);
  ASSERT_EQ(back.size(), tr.size());
  for (std::size_t k = 0; k < tr.size(); ++k) EXPECT_EQ(back.samples()[k].z, tr.samples()[k].z);
  std::stringstream bad("t,x\n1,2\n");
  EXPECT_THROW(read_trajectory_csv(bad, Parameterization::proper_time), IoError);
}

TEST(KinematicsAt, RestTrajectory) {
  std::vector<TrajectorySample> s;
  for (int k = 0; k <= 10; ++k) s.push_back({double(k), {double(k), 0, 0, 0}});
  const Trajectory tr(s, Parameterization::proper_time);
  const auto k = kinematics_at(tr, 3.7);
  EXPECT_NEAR(k.velocity.t, 1.0, 1e-14);
  EXPECT_NEAR(max_abs(k.acceleration), 0.0, 1e-14);
  EXPECT_NEAR(max_abs(k.jerk), 0.0, 1e-12);
}

TEST(KinematicsAt, UniformVelocity) {
  const auto k = kinematics_at(line_samples(0.6, -5, 5, 21), 0.3);
  EXPECT_NEAR(k.velocity.t, 1.25, 1e-12);
  EXPECT_NEAR(k.velocity.x, 0.75, 1e-12);
  EXPECT_NEAR(max_abs(k.acceleration), 0.0, 1e-10);
}

TEST(KinematicsAt, HyperbolaApexMatchesAnalyticDerivatives) {
  const double x0 = 5.0, v0 = 0.5;
  const auto tr = hyperbola_samples(x0, v0, 20.0, 801);
  const auto k = kinematics_at(tr, 0.0);
  EXPECT_NEAR(k.velocity.t, 1.0, 1e-9);
  EXPECT_NEAR(k.velocity.x, 0.0, 1e-9);
  EXPECT_NEAR(k.acceleration.t, 0.0, 1e-8);
  EXPECT_NEAR(std::fabs(k.acceleration.x), v0 * v0 / x0, 1e-6);
  // The analytic worldline is the oracle away from the apex too.
  const auto exact = hyperbolic_worldline(x0, v0);
  const auto ke = exact->kinematics(7.3);
  const auto ks = kinematics_at(tr, 7.3);
  EXPECT_LT(max_abs(ks.velocity - ke.velocity), 1e-8);
  EXPECT_LT(max_abs(ks.acceleration - ke.acceleration), 1e-6);
  EXPECT_LT(max_abs(ks.jerk - ke.jerk), 1e-4);
  EXPECT_NEAR(ks.proper_time, ke.proper_time, 1e-9);
}

TEST(KinematicsAt, Errors) {
  const auto tr = line_samples(0.1, 0, 1, 4);
  EXPECT_THROW(kinematics_at(tr, 0.5), InsufficientDataError);
  const auto tr5 = line_samples(0.1, 0, 1, 5);
  EXPECT_THROW(kinematics_at(tr5, 1.5), RangeError);
}

TEST(AnalyticWorldline, HyperbolaKinematicsAgainstFiniteDifferences) {
  const auto w = hyperbolic_worldline(3.0, 0.7);
  const double t = 2.1, h = 1e-4;
  const auto k = w->kinematics(t);
  // d/dtau = (dt/dtau) d/dt; compare the acceleration with differences of the velocity.
  const FourVector dv = (w->kinematics(t + h).velocity - w->kinematics(t - h).velocity) / (2 * h);
  EXPECT_LT(max_abs(dv * k.velocity.t - k.acceleration), 1e-7);
  const FourVector da = (w->kinematics(t + h).acceleration - w->kinematics(t - h).acceleration) / (2 * h);
  EXPECT_LT(max_abs(da * k.velocity.t - k.jerk), 1e-7);
  EXPECT_NEAR(minkowski_dot(k.velocity, k.acceleration), 0.0, 1e-14);
  EXPECT_NEAR(w->parameter_at_proper_time(w->proper_time(t)), t, 1e-12);
  EXPECT_NEAR(w->proper_time(-t), -w->proper_time(t), 1e-14);
}

TEST(ProperTimeInvariants, SampledTrajectories) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-9.0, 9.0);
  const auto tr = resample_proper_time(hyperbola_samples(4.0, 0.6, 10.0, 401), 301);
  const SampledWorldline w(tr);
  for (int i = 0; i < 200; ++i) {
    const double lam = u(rng);
    if (lam <= tr.lambda_min() || lam >= tr.lambda_max()) continue;
    const auto k = w.kinematics(lam);
    EXPECT_LT(std::fabs(minkowski_dot(k.velocity, k.velocity) - 1.0), 1e-8);
    EXPECT_LT(std::fabs(minkowski_dot(k.velocity, k.acceleration)), 1e-6);
  }
}

TEST(ResampleProperTime, UniformLine) {
  const auto tr = resample_proper_time(line_samples(0.6, 0.0, 10.0, 41), 11);
  ASSERT_EQ(tr.size(), 11u);
  for (std::size_t k = 0; k + 1 < tr.size(); ++k) {
    const double dtau = tr.samples()[k + 1].lambda - tr.samples()[k].lambda;
    const double dt = tr.samples()[k + 1].z.t - tr.samples()[k].z.t;
    EXPECT_NEAR(dtau, 0.8, 1e-12);
    EXPECT_NEAR(dt, dtau * 1.25, 1e-10);
  }
}

TEST(ResampleProperTime, RestWorldlineKeepsDuration) {
  EXPECT_NEAR(total_proper_time(resample_proper_time(line_samples(0.0, 2.0, 9.5, 16), 5)), 7.5, 1e-12);
}

TEST(ResampleProperTime, HyperbolaTotalMatchesQuadrature) {
  const double x0 = 5.0, v0 = 0.5, T = 30.0;
  // Oracle: direct quadrature of sqrt(1 - v(t)^2).
  const double exact = integrate(
                           [&](double t) {
                             const double v = v0 * v0 * t / std::sqrt(x0 * x0 + v0 * v0 * t * t);
                             return std::sqrt(1.0 - v * v);
                           },
                           -T, T, 1e-13)
                           .value;
  const auto tr = hyperbola_samples(x0, v0, T, 1201);
  const auto rs = resample_proper_time(tr, 500);
  EXPECT_NEAR(total_proper_time(tr) / exact, 1.0, 1e-10);
  EXPECT_NEAR((rs.lambda_max() - rs.lambda_min()) / exact, 1.0, 1e-10);
  // The proper-time origin sits at the apex, so the range is symmetric.
  EXPECT_NEAR(rs.lambda_min(), -rs.lambda_max(), 1e-10);
}

TEST(ResampleProperTime, Idempotent) {
  const auto once = resample_proper_time(hyperbola_samples(2.0, 0.8, 6.0, 301), 200);
  const auto twice = resample_proper_time(once, 200);
  double worst = 0.0;
  for (std::size_t k = 0; k < once.size(); ++k) {
    worst = std::fmax(worst, max_abs(once.samples()[k].z - twice.samples()[k].z));
    worst = std::fmax(worst, std::fabs(once.samples()[k].lambda - twice.samples()[k].lambda));
  }
  EXPECT_LT(worst, 1e-10);
}
