#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "solitonlab/errors.hpp"
#include "solitonlab/pilot_wave.hpp"

using namespace solitonlab;

namespace {

SolitonParams massive(double omega0 = 1.0, double e = 0.0) {
  SolitonParams p;
  p.omega0 = omega0;
  p.e = e;
  return p;
}

// Two counter-propagating waves with unequal weights: no nodes, non-trivial Q.
PsiModel asymmetric_pair() {
  const auto p = massive();
  return PsiModel::superposition(p, {{Complex(1.0, 0.0), four_velocity(0.3)}, {Complex(0.4, 0.1), four_velocity(-0.5)}});
}

FourVector random_point(std::mt19937_64& rng, double span) {
  std::uniform_real_distribution<double> u(-span, span);
  return {u(rng), u(rng), u(rng), u(rng)};
}

}  // namespace

TEST(PilotWave, PlaneWaveHydro) {
  const auto psi = PsiModel::plane_wave_velocity(massive(2.0), 0.6);
  const auto h = hydro_decompose(psi, {0.3, -1.0, 2.0, 0.5});
  EXPECT_NEAR(h.quantum_potential, 0.0, 1e-12);
  EXPECT_NEAR(h.mass, 2.0, 1e-12);
  EXPECT_NEAR(h.velocity.t, 1.25, 1e-12);
  EXPECT_NEAR(h.velocity.x, 0.75, 1e-12);
  EXPECT_NEAR(h.velocity.y, 0.0, 1e-12);
  EXPECT_NEAR(minkowski_dot(h.velocity, h.velocity), 1.0, 1e-12);
}

TEST(PilotWave, OffShellWavevectorRejected) {
  EXPECT_THROW(PsiModel::plane_wave(massive(), {1.0, 0.5, 0.0, 0.0}), DomainError);
  SolitonParams bad;
  bad.r0 = -1.0;
  EXPECT_THROW(PsiModel::plane_wave(bad, {0, 0, 0, 0}), DomainError);
}

TEST(PilotWave, CavityParticleAtRest) {
  const auto p = massive(1.0);
  const auto psi = PsiModel::cavity_mode(p, 2, 5.0);
  const double k = 2 * kPi / 5.0;
  EXPECT_NEAR(psi.cavity_frequency(), std::sqrt(1.0 + k * k), 1e-14);
  // The standing wave keeps M^2 = omega_n^2 - k^2 ... only at the centre; the
  // velocity is purely temporal everywhere off the nodes.
  for (double r : {0.0, 1e-6, 0.3, 1.1, 2.0}) {
    const auto h = hydro_decompose(psi, {0.7, r, 0.0, 0.0});
    EXPECT_NEAR(h.velocity.x, 0.0, 1e-12) << r;
    EXPECT_NEAR(h.velocity.t, 1.0, 1e-10) << r;
    EXPECT_NEAR(h.mass, psi.cavity_frequency(), 1e-9) << r;
  }
  EXPECT_THROW(hydro_decompose(psi, {0.0, 2.5, 0.0, 0.0}), NodeError);
}

TEST(PilotWave, CavityDerivativesMatchFiniteDifferences) {
  const auto psi = PsiModel::cavity_mode(massive(0.5), 1, 3.0);
  const FourVector x{0.4, 0.5, -0.3, 0.8};
  const auto d = psi.derivatives(x);
  const double h = 1e-4;
  Complex box = 0.0;
  for (int mu = 0; mu < 4; ++mu) {
    FourVector e{};
    e[mu] = h;
    const Complex fd = (psi.value(x + e) - psi.value(x - e)) / (2 * h);
    EXPECT_NEAR(std::abs(fd - d.grad[mu]), 0.0, 1e-7) << mu;
    const Complex second = (psi.value(x + e) - 2.0 * psi.value(x) + psi.value(x - e)) / (h * h);
    box += mu == 0 ? second : -second;
  }
  EXPECT_NEAR(std::abs(box - d.box), 0.0, 1e-5);
}

TEST(PilotWave, StandingWaveVelocityIsTemporal) {
  const auto p = massive();
  const auto k1 = four_velocity(0.4), k2 = four_velocity(-0.4);
  const auto psi = PsiModel::superposition(p, {{1.0, k1}, {1.0, k2}});
  std::mt19937_64 rng(7);
  // Finite-difference oracle on the explicit sum.
  auto explicit_psi = [&](const FourVector& x) {
    return std::exp(Complex(0, -minkowski_dot(k1, x))) + std::exp(Complex(0, -minkowski_dot(k2, x)));
  };
  for (int i = 0; i < 20; ++i) {
    FourVector x = random_point(rng, 3.0);
    // Keep away from the nodes cos(k x) = 0.
    if (std::fabs(std::cos(k1.x * x.x)) < 0.1) continue;
    const double h = 1e-5;
    const FourVector ex{0, h, 0, 0};
    const Complex dpsi = (explicit_psi(x + ex) - explicit_psi(x - ex)) / (2 * h);
    const double dS = (std::conj(explicit_psi(x)) * dpsi).imag() / std::norm(explicit_psi(x));
    EXPECT_NEAR(dS, 0.0, 1e-8);
    const auto hf = hydro_decompose(psi, x);
    EXPECT_NEAR(hf.velocity.x, 0.0, 1e-12);
    EXPECT_NEAR(hf.velocity.t, 1.0, 1e-10);
  }
}

TEST(PilotWave, MassMatchesHamiltonJacobi) {
  std::mt19937_64 rng(11);
  const auto pair = asymmetric_pair();
  const auto cavity = PsiModel::cavity_mode(massive(0.7), 3, 4.0);
  for (int i = 0; i < 50; ++i) {
    for (const PsiModel* psi : {&pair, &cavity}) {
      const FourVector x = random_point(rng, 1.2);
      HydroFields h;
      try {
        h = hydro_decompose(*psi, x);
      } catch (const NodeError&) {
        continue;
      } catch (const TachyonError&) {
        continue;
      }
      const double direct = std::sqrt(minkowski_dot(h.phase_gradient, h.phase_gradient));
      EXPECT_NEAR(h.mass / direct, 1.0, 1e-6);
      EXPECT_NEAR(minkowski_dot(h.velocity, h.velocity), 1.0, 1e-8);
    }
  }
}

TEST(PilotWave, ConstantGaugeLeavesVelocityUnchanged) {
  const auto p = massive(1.0, 0.7);
  const FourVector A{0.3, -0.2, 0.1, 0.5};
  const auto k = four_velocity(0.2, 0.1);
  const auto free = PsiModel::plane_wave(p, k);
  const auto gauged = PsiModel::plane_wave(p, k, ExternalPotential::constant(A));
  const FourVector x{1.0, 2.0, -0.5, 0.25};
  const auto h0 = hydro_decompose(free, x), h1 = hydro_decompose(gauged, x);
  const FourVector shift = h1.phase_gradient - h0.phase_gradient;
  for (int mu = 0; mu < 4; ++mu) {
    EXPECT_NEAR(shift[mu], -p.e * A[mu], 1e-14);
    EXPECT_NEAR(h1.velocity[mu], h0.velocity[mu], 1e-14);
  }
  const auto t0 = integrate_guidance(free, x, 0.0, 2.0, {1e-10, 21});
  const auto t1 = integrate_guidance(gauged, x, 0.0, 2.0, {1e-10, 21});
  for (std::size_t i = 0; i < t0.size(); ++i)
    EXPECT_NEAR(max_abs(t0.samples()[i].z - t1.samples()[i].z), 0.0, 1e-13);
}

TEST(PilotWave, ContinuityOfCurrent) {
  std::mt19937_64 rng(3);
  const auto psi = asymmetric_pair();
  auto current = [&](const FourVector& x) {
    const auto h = hydro_decompose(psi, x);
    return h.velocity * (h.amplitude * h.amplitude * h.mass);
  };
  const double h = 1e-3;
  for (int i = 0; i < 20; ++i) {
    const FourVector x = random_point(rng, 5.0);
    double div = 0.0;
    for (int mu = 0; mu < 4; ++mu) {
      FourVector e{};
      e[mu] = h;
      div += (-current(x + 2.0 * e)[mu] + 8.0 * current(x + e)[mu] - 8.0 * current(x - e)[mu] +
              current(x - 2.0 * e)[mu]) / (12 * h);
    }
    EXPECT_NEAR(div, 0.0, 1e-6);
  }
}

TEST(PilotWave, CustomModelMatchesAnalytic) {
  const auto pair = asymmetric_pair();
  const auto custom = PsiModel::custom(pair.params(), [&](const FourVector& x) { return pair.value(x); }, 1.4, 1.0);
  const FourVector x{0.2, 0.9, -0.4, 0.3};
  const auto a = hydro_decompose(pair, x), b = hydro_decompose(custom, x);
  EXPECT_NEAR(a.mass, b.mass, 1e-6);
  EXPECT_NEAR(a.quantum_potential, b.quantum_potential, 1e-6);
  EXPECT_NEAR(max_abs(a.velocity - b.velocity), 0.0, 1e-8);
}

TEST(PilotWave, GuidanceRestAndUniform) {
  const auto rest = PsiModel::plane_wave_velocity(massive(), 0.0);
  const FourVector z0{0.0, 1.0, 2.0, 3.0};
  const auto tr = integrate_guidance(rest, z0, 0.0, 5.0);
  EXPECT_EQ(tr.size(), 201u);
  for (const auto& s : tr.samples()) EXPECT_NEAR(max_abs(s.z - (z0 + FourVector{s.lambda, 0, 0, 0})), 0.0, 1e-12);

  const auto moving = PsiModel::plane_wave_velocity(massive(), 0.6);
  const auto tm = integrate_guidance(moving, z0, 0.0, 4.0);
  for (const auto& s : tm.samples()) {
    EXPECT_NEAR(s.z.t, 1.25 * s.lambda, 1e-11);
    EXPECT_NEAR(s.z.x, 1.0 + 0.75 * s.lambda, 1e-11);
  }
  EXPECT_THROW(integrate_guidance(moving, z0, 1.0, 1.0), DomainError);
}

TEST(PilotWave, GuidanceInCavityIsStationary) {
  const auto psi = PsiModel::cavity_mode(massive(1.0), 1, 4.0);
  const FourVector z0{0.0, 0.5, 0.7, -0.2};
  const auto tr = integrate_guidance(psi, z0, 0.0, 10.0);
  for (const auto& s : tr.samples()) {
    EXPECT_NEAR(s.z.x, 0.5, 1e-12);
    EXPECT_NEAR(s.z.y, 0.7, 1e-12);
  }
  // Proper time runs at dt/dtau = 1 for a particle at rest.
  EXPECT_NEAR(tr.samples().back().z.t, 10.0, 1e-9);
}

TEST(PilotWave, GuidanceStopsAtNodeWithPartialPath) {
  // A particle started on a node fails immediately; started just inside the
  // cavity wall it survives; a custom Psi with a moving node traps it.
  const auto psi = PsiModel::cavity_mode(massive(1.0), 1, 2.0);
  try {
    integrate_guidance(psi, {0.0, 2.0, 0.0, 0.0}, 0.0, 1.0);
    FAIL() << "expected DynamicsError";
  } catch (const DynamicsError& e) {
    EXPECT_TRUE(e.partial().empty() || e.partial().size() == 1);
  }
  // Node at x = t: the trajectory moving at v=0 meets it at t = 1.
  const auto p = massive();
  const auto node = PsiModel::custom(
      p, [](const FourVector& x) { return Complex(x.x - x.t, 0.0) * std::exp(Complex(0, -x.t)); }, 1.0, 1.0);
  try {
    integrate_guidance(node, {0.0, 1.0, 0.0, 0.0}, 0.0, 3.0, {1e-10, 31});
    FAIL() << "expected DynamicsError";
  } catch (const DynamicsError& e) {
    ASSERT_FALSE(e.partial().empty());
    EXPECT_LT(e.partial().back().lambda, 1.0 + 1e-6);
  }
}

TEST(PilotWave, CollectiveCoordinatesOfPlaneWave) {
  const auto psi = PsiModel::plane_wave_velocity(massive(), 0.3);
  const auto tr = integrate_guidance(psi, {0, 0, 0, 0}, 0.0, 3.0, {1e-10, 31});
  for (const auto& c : collective_coordinates(psi, tr)) {
    EXPECT_NEAR(c.alpha, 1.0, 1e-12);
    EXPECT_NEAR(c.B, 0.0, 1e-10);
    EXPECT_NEAR(c.amplitude_ratio, 1.0, 1e-12);
  }
}

TEST(PilotWave, CollectiveFromSyntheticMasses) {
  const auto c = collective_from_masses({0.0, 0.5, 1.0}, {1.0, 1.5, 2.0});
  EXPECT_NEAR(c.back().alpha, std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(c[1].B, 0.5, 1e-14);
  EXPECT_NEAR(c.back().amplitude_ratio, std::pow(2.0, 0.25), 1e-15);
  EXPECT_THROW(collective_from_masses({0.0}, {1.0}), InsufficientDataError);
}

TEST(PilotWave, CollectiveBMatchesMassDerivativeAtTwoSteps) {
  const auto psi = asymmetric_pair();
  // B from the collective table against an independent centred difference of
  // M along the same path, at two sample densities.
  for (std::size_t n : {201u, 401u}) {
    const auto tr = integrate_guidance(psi, {0, 0.2, 0, 0}, 0.0, 4.0, {1e-12, n});
    const auto c = collective_coordinates(psi, tr);
    const double h = 4.0 / static_cast<double>(n - 1);
    double worst = 0.0;
    for (std::size_t k = 1; k + 1 < c.size(); ++k) {
      const double dM = (c[k + 1].mass - c[k - 1].mass) / (2 * h);
      worst = std::fmax(worst, std::fabs(c[k].B - 0.5 * dM));
    }
    EXPECT_LT(worst, 1e-12) << n;
  }
}

TEST(PilotWave, AmplitudeMassRelationConvergesUnderStepHalving) {
  // d/dtau ln[f^2 M] = 3B/M with f ~ M^(1/4); the finite-difference mismatch
  // must fall by ~4 per halving.
  const auto psi = asymmetric_pair();
  std::vector<double> errs;
  for (std::size_t n : {41u, 81u, 161u}) {
    const auto tr = integrate_guidance(psi, {0, 0.2, 0, 0}, 0.0, 4.0, {1e-12, n});
    const auto c = collective_coordinates(psi, tr);
    auto lhs = [&](std::size_t k) { return std::log(c[k].amplitude_ratio * c[k].amplitude_ratio * c[k].mass); };
    const std::size_t mid = (n - 1) / 2;
    const double h = c[mid + 1].tau - c[mid].tau;
    const double d = (lhs(mid + 1) - lhs(mid - 1)) / (2 * h);
    // B from an exact derivative of M via the gradient along the velocity.
    const auto hf = hydro_decompose(psi, tr.samples()[mid].z);
    const double B_exact = 0.5 * minkowski_dot(mass_gradient(psi, tr.samples()[mid].z), hf.velocity);
    errs.push_back(std::fabs(d - 3 * B_exact / c[mid].mass));
    EXPECT_NEAR(c[mid].B, B_exact, 50 * h * h);
  }
  EXPECT_GT(errs[0] / errs[1], 3.0);
  EXPECT_GT(errs[1] / errs[2], 3.0);
}

TEST(PilotWave, ForceLawPlaneWave) {
  const auto psi = PsiModel::plane_wave_velocity(massive(), 0.6);
  const auto tr = integrate_guidance(psi, {0, 0, 0, 0}, 0.0, 2.0, {1e-10, 41});
  EXPECT_LT(force_law_residual(psi, tr).max_residual, 1e-8);
}

TEST(PilotWave, ForceLawSecondOrderOnSuperposition) {
  const auto psi = asymmetric_pair();
  std::vector<double> r;
  for (std::size_t n : {41u, 81u, 161u}) {
    const auto tr = integrate_guidance(psi, {0, 0.2, 0, 0}, 0.0, 4.0, {1e-12, n});
    r.push_back(force_law_residual(psi, tr).max_residual);
  }
  const double slope1 = std::log2(r[0] / r[1]), slope2 = std::log2(r[1] / r[2]);
  EXPECT_NEAR(slope1, 2.0, 0.3);
  EXPECT_NEAR(slope2, 2.0, 0.3);
  EXPECT_LT(r[2], 1e-3);
}

TEST(PilotWave, ForceLawNegativeControl) {
  // A rest line through a partial standing wave is not a guidance trajectory.
  const auto p = massive();
  const auto psi =
      PsiModel::superposition(p, {{Complex(1.0, 0.0), four_velocity(0.6)}, {Complex(0.8, 0.0), four_velocity(-0.6)}});
  std::vector<TrajectorySample> s;
  for (int i = 0; i <= 40; ++i) s.push_back({0.1 * i, {0.1 * i, 1.4, 0, 0}});
  const Trajectory line(s, Parameterization::proper_time);
  const double control = force_law_residual(psi, line).max_residual;
  const auto guided = integrate_guidance(psi, {0, 1.4, 0, 0}, 0.0, 0.5, {1e-12, 41});
  EXPECT_GT(control, 0.1);
  EXPECT_GT(control, 100 * force_law_residual(psi, guided).max_residual);
}

TEST(PilotWave, NearFieldAmplitudes) {
  SolitonParams p = massive();
  p.g = 4 * kPi;
  p.r0 = 0.01;
  EXPECT_NEAR(near_field_amplitude(p, 1.0, 0.0), 1.0 / 0.01, 1e-12);
  EXPECT_NEAR(near_field_amplitude(p, 4.0, 0.0), 2.0 / 0.01, 1e-12);
  // alpha=4 quarters the core radius: half height at r = sqrt(3) r0 / 4.
  EXPECT_NEAR(near_field_amplitude(p, 4.0, std::sqrt(3.0) * 0.01 / 4.0), 1.0 / 0.01, 1e-10);
  EXPECT_NEAR(near_field_amplitude(p, 1.0, 10.0) * 10.0, 1.0, 1e-6);
}

TEST(PilotWave, AssembleNearFieldAtRest) {
  SolitonParams p = massive();
  p.r0 = 1e-3;
  const auto psi = PsiModel::plane_wave_velocity(p, 0.0);
  const auto tr = integrate_guidance(psi, {0, 0, 0, 0}, 0.0, 2.0, {1e-10, 21});
  const Complex u0 = assemble_near_field(p, psi, tr, 1.0, {0, 0, 0, 0});
  EXPECT_NEAR(std::abs(u0), p.g / (4 * kPi * p.r0), 1e-9);
  EXPECT_NEAR(std::arg(u0), std::arg(psi.value({1.0, 0, 0, 0})), 1e-12);
  const double r = 0.5;
  const Complex u = assemble_near_field(p, psi, tr, 1.0, {0, r, 0, 0});
  EXPECT_NEAR(std::abs(u) * 4 * kPi * r / p.g, 1.0, 1e-5);
  EXPECT_THROW(assemble_near_field(p, psi, tr, 1.0, {0.1, r, 0, 0}), GeometryError);
  EXPECT_THROW(assemble_near_field(p, psi, tr, 3.0, {0, 0, 0, 0}), RangeError);
}

TEST(PilotWave, AssembleNearFieldMovingOffsetInRestFrame) {
  const auto p = massive();
  const auto psi = PsiModel::plane_wave_velocity(p, 0.6);
  const auto tr = integrate_guidance(psi, {0, 0, 0, 0}, 0.0, 2.0, {1e-10, 21});
  const FourVector xi = rest_frame_offset(four_velocity(0.6), 0.3, 0.0, 0.0);
  const Complex u = assemble_near_field(p, psi, tr, 1.0, xi);
  EXPECT_NEAR(std::abs(u), near_field_amplitude(p, 1.0, 0.3), 1e-12);
}
