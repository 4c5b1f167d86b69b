#include "solitonlab/radial.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "solitonlab/errors.hpp"
#include "solitonlab/interpolation.hpp"
#include "solitonlab/ode.hpp"
#include "solitonlab/params.hpp"

namespace solitonlab {

void RadialProblem::validate() const {
  if (!(F0 > 0.0)) throw DomainError("RadialProblem: F0 must be positive");
  if (!(r_max > 0.0)) throw DomainError("RadialProblem: r_max must be positive");
  if (!(tol > 0.0)) throw DomainError("RadialProblem: tol must be positive");
  if (!(epsilon > 0.0) || !(epsilon < r_max)) throw DomainError("RadialProblem: epsilon must lie in (0, r_max)");
  if (!(output_step > 0.0)) throw DomainError("RadialProblem: output_step must be positive");
  if (!(A >= 0.0)) throw DomainError("RadialProblem: A must be non-negative");
}

std::pair<double, double> series_start(const RadialProblem& prob, double epsilon) {
  const double c = -(prob.kappa * std::pow(prob.F0, 5) + prob.A * prob.F0) / 6.0;
  return {prob.F0 + c * epsilon * epsilon, 2.0 * c * epsilon};
}

double RadialSolution::F(double r) const {
  if (grid.empty() || r < grid.front().r || r > grid.back().r) throw RangeError("RadialSolution::F: r outside grid");
  auto it = std::lower_bound(grid.begin(), grid.end(), r, [](const RadialPoint& p, double v) { return p.r < v; });
  if (it->r == r) return it->F;
  const auto& b = *it;
  const auto& a = *(it - 1);
  return hermite_cubic(a.r, b.r, a.F, b.F, a.dF, b.dF, r).value;
}

RadialSolution solve_radial(const RadialProblem& prob) {
  prob.validate();
  const double kappa = prob.kappa, A = prob.A;
  auto rhs = [kappa, A](double r, std::span<const double> y, std::span<double> dy) {
    dy[0] = y[1];
    dy[1] = -2.0 * y[1] / r - kappa * std::pow(y[0], 5) - A * y[0];
  };
  OdeOptions opt;
  opt.abs_tol = prob.tol;
  opt.blowup = 1e6;
  opt.record_steps = false;
  const auto count = static_cast<std::size_t>(std::floor(prob.r_max / prob.output_step + 1e-9));
  for (std::size_t k = 1; k <= count; ++k) {
    const double r = prob.output_step * static_cast<double>(k);
    if (r > prob.epsilon && r < prob.r_max) opt.outputs.push_back(r);
  }
  opt.outputs.push_back(prob.r_max);

  const auto [F_eps, dF_eps] = series_start(prob, prob.epsilon);
  DormandPrince dp(rhs, opt);
  const OdeResult& res = dp.integrate(prob.epsilon, prob.r_max, {F_eps, dF_eps});

  RadialSolution sol;
  sol.kappa = kappa;
  sol.A = A;
  sol.steps = res.steps;
  sol.rejected = res.rejected;
  sol.max_local_error = res.max_local_error;
  sol.grid.reserve(res.samples.size());
  for (const auto& s : res.samples) sol.grid.push_back({s.t, s.y[0], s.y[1]});
  return sol;
}

TailFit tail_fit(const RadialSolution& sol, double A, std::pair<double, double> window) {
  if (!(A > 0.0)) throw FitError("tail_fit: no oscillation for A <= 0");
  const auto [r_lo, r_hi] = window;
  if (!(r_hi > r_lo) || sol.grid.empty() || r_lo < sol.grid.front().r || r_hi > sol.grid.back().r)
    throw FitError("tail_fit: window outside the solution range");
  const double k = std::sqrt(A);
  const double period = 2.0 * kPi / k;
  if (r_hi - r_lo < 2.0 * period) {
    std::ostringstream os;
    os << "tail_fit: window spans " << (r_hi - r_lo) / period << " periods, need at least 2";
    throw FitError(os.str());
  }
  std::vector<double> r, F;
  for (const auto& p : sol.grid)
    if (p.r >= r_lo && p.r <= r_hi) {
      r.push_back(p.r);
      F.push_back(p.F);
    }
  const auto n = static_cast<Eigen::Index>(r.size());
  if (n < 8) throw FitError("tail_fit: too few points in window");

  // Variable projection: for fixed m the model a cos(kr)/r^m + b sin(kr)/r^m is linear.
  auto linear = [&](double m, Eigen::Vector2d& ab) {
    Eigen::MatrixXd X(n, 2);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double w = std::pow(r[i], -m);
      X(i, 0) = std::cos(k * r[i]) * w;
      X(i, 1) = std::sin(k * r[i]) * w;
      y(i) = F[i];
    }
    ab = X.colPivHouseholderQr().solve(y);
    return (X * ab - y).squaredNorm();
  };

  // Golden-section search on m, then Gauss-Newton on (a, b, m) to polish.
  double lo = 0.0, hi = 3.0;
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  Eigen::Vector2d ab;
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = linear(x1, ab), f2 = linear(x2, ab);
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    if (f1 < f2) {
      hi = x2; x2 = x1; f2 = f1;
      x1 = hi - phi * (hi - lo); f1 = linear(x1, ab);
    } else {
      lo = x1; x1 = x2; f1 = f2;
      x2 = lo + phi * (hi - lo); f2 = linear(x2, ab);
    }
  }
  double m = 0.5 * (lo + hi);
  double ssr = linear(m, ab);
  Eigen::Vector3d theta(ab(0), ab(1), m);
  for (int it = 0; it < 20; ++it) {
    Eigen::MatrixXd J(n, 3);
    Eigen::VectorXd res(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double w = std::pow(r[i], -theta(2));
      const double c = std::cos(k * r[i]), s = std::sin(k * r[i]);
      const double model = (theta(0) * c + theta(1) * s) * w;
      J(i, 0) = c * w;
      J(i, 1) = s * w;
      J(i, 2) = -std::log(r[i]) * model;
      res(i) = F[i] - model;
    }
    const Eigen::Vector3d step = J.colPivHouseholderQr().solve(res);
    theta += step;
    if (step.norm() < 1e-14 * (1.0 + theta.norm())) break;
  }
  m = theta(2);
  ssr = 0.0;
  TailFit fit;
  fit.amplitude = std::hypot(theta(0), theta(1));
  fit.phase = std::atan2(-theta(1), theta(0));
  fit.exponent = m;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double w = std::pow(r[i], -m);
    const double model = fit.amplitude * std::cos(k * r[i] + fit.phase) * w;
    ssr += (model - F[i]) * (model - F[i]);
    fit.envelope_error = std::fmax(fit.envelope_error, std::fabs(model - F[i]) / (fit.amplitude * w));
  }
  fit.rms_residual = std::sqrt(ssr / static_cast<double>(n));
  return fit;
}

void write_radial_csv(std::ostream& os, const RadialSolution& sol) {
  os << "r,F,dF\n" << std::setprecision(17);
  for (const auto& p : sol.grid) os << p.r << ',' << p.F << ',' << p.dF << '\n';
}

}  // namespace solitonlab
