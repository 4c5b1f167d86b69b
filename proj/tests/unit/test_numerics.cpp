#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "solitonlab/errors.hpp"
#include "solitonlab/interpolation.hpp"
#include "solitonlab/ode.hpp"
#include "solitonlab/quadrature.hpp"

using namespace solitonlab;

TEST(Fornberg, ReproducesPolynomialDerivativesOnIrregularNodes) {
  const std::vector<double> x{-0.7, -0.2, 0.1, 0.45, 1.3};
  const auto w = fornberg_weights(0.2, x, 2);
  // A quartic is differentiated exactly by a five-point stencil.
  auto p = [](double t) { return 1.0 - 2.0 * t + 0.5 * t * t + 3.0 * t * t * t - t * t * t * t; };
  auto dp = [](double t) { return -2.0 + t + 9.0 * t * t - 4.0 * t * t * t; };
  auto d2p = [](double t) { return 1.0 + 18.0 * t - 12.0 * t * t; };
  double f0 = 0, f1 = 0, f2 = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    f0 += w[0][i] * p(x[i]);
    f1 += w[1][i] * p(x[i]);
    f2 += w[2][i] * p(x[i]);
  }
  EXPECT_NEAR(f0, p(0.2), 1e-13);
  EXPECT_NEAR(f1, dp(0.2), 1e-12);
  EXPECT_NEAR(f2, d2p(0.2), 1e-11);
}

TEST(Hermite, ExactForCubics) {
  auto f = [](double t) { return 2.0 * t * t * t - t + 4.0; };
  auto df = [](double t) { return 6.0 * t * t - 1.0; };
  for (double s : {0.3, 0.55, 0.9}) {
    const auto h = hermite_cubic(0.2, 1.1, f(0.2), f(1.1), df(0.2), df(1.1), s);
    EXPECT_NEAR(h.value, f(s), 1e-14);
    EXPECT_NEAR(h.slope, df(s), 1e-13);
  }
}

TEST(Quadrature, AlgebraicRadialMatchesBetaFunctions) {
  // int_0^inf r^2 (r^2+s^2)^(-5/2) dr = 1/(3 s^2); r^4 (r^2+s^2)^(-3) -> 3 pi/(16 s)
  for (double s : {0.5, 1.0, 2.0}) {
    EXPECT_NEAR(integrate_algebraic_radial(1.0, 2.0, 2.5, s).value * 3.0 * s * s, 1.0, 1e-12);
    EXPECT_NEAR(integrate_algebraic_radial(1.0, 4.0, 3.0, s).value * 16.0 * s / (3.0 * M_PI), 1.0, 1e-12);
  }
}

TEST(Quadrature, TailSeriesMatchesDirectIntegration) {
  const std::vector<double> pts{50.0, 500.0, 5e3, 5e4};
  const double direct = integrate_piecewise([](double r) { return r * r * std::pow(r * r + 1.0, -3.0); }, pts, 1e-12).value +
                        algebraic_tail(1.0, 2.0, 3.0, 1.0, 5e4);
  EXPECT_NEAR(algebraic_tail(1.0, 2.0, 3.0, 1.0, 50.0) / direct, 1.0, 1e-10);
}

TEST(Quadrature, RejectsNonIntegrableTail) {
  EXPECT_THROW(integrate_algebraic_radial(1.0, 2.0, 1.0, 1.0), DomainError);
}

TEST(DormandPrince, HarmonicOscillatorFifthOrder) {
  auto rhs = [](double, std::span<const double> y, std::span<double> dy) {
    dy[0] = y[1];
    dy[1] = -y[0];
  };
  std::vector<double> errs, tols{1e-6, 1e-8, 1e-10};
  for (double tol : tols) {
    OdeOptions opt;
    opt.abs_tol = tol;
    opt.outputs = {1.0, 2.5};
    DormandPrince dp(rhs, opt);
    const auto& r = dp.integrate(0.0, 10.0, {0.0, 1.0});
    EXPECT_LE(r.max_local_error, tol);
    const auto at = r.at(std::vector<double>{1.0, 2.5});
    EXPECT_EQ(at[0]->t, 1.0);
    EXPECT_NEAR(at[1]->y[0], std::sin(2.5), 200 * tol);
    errs.push_back(std::fabs(r.back().y[0] - std::sin(10.0)));
  }
  EXPECT_LT(errs[2], errs[0]);
}

TEST(DormandPrince, DenseOutputIsAccurateBetweenSteps) {
  auto rhs = [](double t, std::span<const double>, std::span<double> dy) { dy[0] = std::cos(t); };
  OdeOptions opt;
  opt.abs_tol = 1e-12;
  DormandPrince dp(rhs, opt);
  const auto& r = dp.integrate(0.0, 3.0, {0.0});
  for (double t : {0.123, 1.7, 2.95}) EXPECT_NEAR(r.eval(t)[0], std::sin(t), 1e-7);
}

TEST(DormandPrince, DivergenceKeepsLastGoodTime) {
  auto rhs = [](double, std::span<const double> y, std::span<double> dy) { dy[0] = y[0] * y[0]; };
  OdeOptions opt;
  opt.blowup = 1e6;
  DormandPrince dp(rhs, opt);
  try {
    dp.integrate(0.0, 2.0, {1.0});
    FAIL() << "expected divergence";
  } catch (const DivergenceError& e) {
    EXPECT_LT(e.last_time(), 1.0);
    EXPECT_GT(e.last_time(), 0.99);
    EXPECT_FALSE(dp.result().samples.empty());
  }
}

TEST(DormandPrince, StepUnderflowIsAnIntegrationError) {
  auto rhs = [](double t, std::span<const double>, std::span<double> dy) { dy[0] = 1.0 / (1.0 - t); };
  OdeOptions opt;
  opt.abs_tol = 1e-12;
  DormandPrince dp(rhs, opt);
  EXPECT_THROW(dp.integrate(0.0, 2.0, {0.0}), IntegrationError);
}
