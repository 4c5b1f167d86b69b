#include "solitonlab/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <sstream>
#include <vector>

#include "solitonlab/errors.hpp"

namespace solitonlab {

namespace {

constexpr unsigned kMaxDepth = 18;

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                           double abs_tol) {
  if (a == b) return {};
  // Boost compares the error of the interval rescaled to [-1, 1] against a tolerance
  // in original units, so short intervals refine needlessly. Integrate on [-1, 1].
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  auto g = [&](double x) { return f(mid + half * x); };
  double err = 0.0, l1 = 0.0;
  const double value =
      half * boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, -1.0, 1.0, kMaxDepth, rel_tol, &err, &l1);
  err *= std::fabs(half);
  l1 *= std::fabs(half);
  if (!std::isfinite(value)) throw AccuracyError("quadrature produced a non-finite value", value, err);
  const double budget = std::fmax(abs_tol, 10.0 * rel_tol * l1);
  if (err > budget) {
    std::ostringstream os;
    os << "quadrature on [" << a << ", " << b << "] did not converge: estimate " << value << " +/- " << err;
    throw AccuracyError(os.str(), value, err);
  }
  return {value, err};
}

QuadratureResult integrate_piecewise(const std::function<double(double)>& f, std::span<const double> points,
                                     double rel_tol, double abs_tol) {
  QuadratureResult total;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const auto part = integrate(f, points[i], points[i + 1], rel_tol, abs_tol);
    total.value += part.value;
    total.error += part.error;
  }
  return total;
}

double algebraic_tail(double coeff, double a, double q, double s, double r_cut) {
  // coeff r^(a-2q) (1 + s^2/r^2)^(-q) = coeff sum_k binom(-q, k) s^(2k) r^(a-2q-2k)
  const double eps = (s * s) / (r_cut * r_cut);
  double binom = 1.0;
  double sum = 0.0;
  for (int k = 0; k < 60; ++k) {
    const double p = 2.0 * q + 2.0 * k - a - 1.0;  // integral of r^(a-2q-2k) from r_cut = r_cut^(-p) / p
    const double term = binom * std::pow(eps, k) / p;
    sum += term;
    if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
    binom *= -(q + k) / (k + 1.0);
  }
  return coeff * std::pow(r_cut, a - 2.0 * q + 1.0) * sum;
}

QuadratureResult integrate_algebraic_radial(double coeff, double a, double q, double s, double rel_tol) {
  if (!(a - 2.0 * q < -1.0)) throw DomainError("integrate_algebraic_radial: integrand is not integrable at infinity");
  if (!(s > 0.0)) throw DomainError("integrate_algebraic_radial: scale must be positive");
  const double s2 = s * s;
  auto f = [=](double r) { return coeff * std::pow(r, a) * std::pow(r * r + s2, -q); };
  const double r_cut = 1e3 * s;
  const std::vector<double> pts{0.0, 0.1 * s, s, 3.0 * s, 10.0 * s, 30.0 * s, 100.0 * s, 300.0 * s, r_cut};
  auto body = integrate_piecewise(f, pts, rel_tol);
  body.value += algebraic_tail(coeff, a, q, s, r_cut);
  return body;
}

}  // namespace solitonlab
