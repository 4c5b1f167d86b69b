#include "solitonlab/ode.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "solitonlab/errors.hpp"
#include "solitonlab/interpolation.hpp"

namespace solitonlab {

namespace {

// Dormand-Prince tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

std::vector<double> OdeResult::eval(double t) const {
  if (samples.empty()) throw RangeError("OdeResult::eval: no samples");
  if (t < samples.front().t || t > samples.back().t) throw RangeError("OdeResult::eval: time outside solution");
  auto it = std::lower_bound(samples.begin(), samples.end(), t, [](const OdeSample& s, double v) { return s.t < v; });
  if (it != samples.end() && it->t == t) return it->y;
  const OdeSample& b = *it;
  const OdeSample& a = *(it - 1);
  std::vector<double> y(a.y.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    y[i] = hermite_cubic(a.t, b.t, a.y[i], b.y[i], a.dydt[i], b.dydt[i], t).value;
  return y;
}

std::vector<const OdeSample*> OdeResult::at(std::span<const double> times) const {
  std::vector<const OdeSample*> out;
  out.reserve(times.size());
  for (double t : times) {
    auto it = std::lower_bound(samples.begin(), samples.end(), t, [](const OdeSample& s, double v) { return s.t < v; });
    if (it == samples.end() || it->t != t) throw RangeError("OdeResult::at: time is not a recorded sample");
    out.push_back(&*it);
  }
  return out;
}

DormandPrince::DormandPrince(OdeRhs rhs, OdeOptions options) : rhs_(std::move(rhs)), opt_(std::move(options)) {
  if (!(opt_.abs_tol > 0.0) && !(opt_.rel_tol > 0.0)) throw DomainError("DormandPrince: tolerance must be positive");
  if (!std::is_sorted(opt_.outputs.begin(), opt_.outputs.end()))
    throw DomainError("DormandPrince: output times must be increasing");
}

double DormandPrince::error_norm(std::span<const double> err, std::span<const double> y0,
                                 std::span<const double> y1) const {
  double worst = 0.0;
  for (std::size_t i = 0; i < err.size(); ++i) {
    const double sc = opt_.abs_tol + opt_.rel_tol * std::fmax(std::fabs(y0[i]), std::fabs(y1[i]));
    worst = std::fmax(worst, std::fabs(err[i]) / sc);
  }
  return worst;
}

double DormandPrince::initial_step(double t0, std::span<const double> y0, std::span<const double> f0,
                                   double span) const {
  if (opt_.initial_step > 0.0) return std::min({opt_.initial_step, opt_.max_step, span});
  const std::size_t n = y0.size();
  double d0 = 0, d1 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sc = opt_.abs_tol + opt_.rel_tol * std::fabs(y0[i]);
    d0 = std::fmax(d0, std::fabs(y0[i]) / sc);
    d1 = std::fmax(d1, std::fabs(f0[i]) / sc);
  }
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  h0 = std::min(h0, span);
  std::vector<double> y1(n), f1(n);
  for (std::size_t i = 0; i < n; ++i) y1[i] = y0[i] + h0 * f0[i];
  rhs_(t0 + h0, y1, f1);
  double d2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sc = opt_.abs_tol + opt_.rel_tol * std::fabs(y0[i]);
    d2 = std::fmax(d2, std::fabs(f1[i] - f0[i]) / sc / h0);
  }
  const double h1 = std::fmax(d1, d2) <= 1e-15 ? std::fmax(1e-6, h0 * 1e-3) : std::pow(0.01 / std::fmax(d1, d2), 0.2);
  return std::min({100 * h0, h1, opt_.max_step, span});
}

const OdeResult& DormandPrince::integrate(double t0, double t1, std::vector<double> y0) {
  if (!(t1 > t0)) throw DomainError("DormandPrince: integration end must exceed start");
  const std::size_t n = y0.size();
  result_ = OdeResult{};

  std::vector<double> y = std::move(y0), f(n);
  rhs_(t0, y, f);
  result_.samples.push_back({t0, y, f});

  auto next_out = std::upper_bound(opt_.outputs.begin(), opt_.outputs.end(), t0);
  std::vector<double> k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), ynew(n), err(n);

  double t = t0;
  double h = initial_step(t0, y, f, t1 - t0);
  while (t < t1) {
    if (result_.steps + result_.rejected >= opt_.max_steps) {
      std::ostringstream os;
      os << "DormandPrince: step budget exhausted at t=" << t;
      throw IntegrationError(os.str(), t);
    }
    const double stop = (next_out != opt_.outputs.end() && *next_out < t1) ? *next_out : t1;
    const double h_try = h;
    bool lands = false;
    if (t + h >= stop || (stop - t - h) < 1e-12 * std::fmax(1.0, std::fabs(stop))) {
      h = stop - t;
      lands = true;
    }
    if (h < opt_.min_step * std::fmax(1.0, std::fabs(t))) {
      std::ostringstream os;
      os << "DormandPrince: step size underflow at t=" << t;
      throw IntegrationError(os.str(), t);
    }

    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * a21 * f[i];
    rhs_(t + c2 * h, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a31 * f[i] + a32 * k2[i]);
    rhs_(t + c3 * h, tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a41 * f[i] + a42 * k2[i] + a43 * k3[i]);
    rhs_(t + c4 * h, tmp, k4);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a51 * f[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    rhs_(t + c5 * h, tmp, k5);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a61 * f[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    rhs_(t + h, tmp, k6);
    for (std::size_t i = 0; i < n; ++i)
      ynew[i] = y[i] + h * (b1 * f[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    const double tnew = lands ? stop : t + h;
    rhs_(tnew, ynew, k7);
    for (std::size_t i = 0; i < n; ++i)
      err[i] = h * (e1 * f[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);

    const double en = error_norm(err, y, ynew);
    if (!std::isfinite(en)) {
      ++result_.rejected;
      h *= 0.2;
      continue;
    }
    if (en > 1.0) {
      ++result_.rejected;
      h *= std::fmax(0.2, 0.9 * std::pow(en, -0.2));
      continue;
    }

    ++result_.steps;
    double abs_err = 0;
    for (double e : err) abs_err = std::fmax(abs_err, std::fabs(e));
    result_.max_local_error = std::fmax(result_.max_local_error, abs_err);
    t = tnew;
    y.swap(ynew);
    f.swap(k7);
    for (double v : y) {
      if (!(std::fabs(v) <= opt_.blowup)) {
        std::ostringstream os;
        os << "DormandPrince: solution diverged at t=" << t;
        throw DivergenceError(os.str(), result_.samples.back().t);
      }
    }
    const bool is_output = lands && next_out != opt_.outputs.end() && stop == *next_out;
    if (opt_.record_steps || is_output || t >= t1) result_.samples.push_back({t, y, f});
    if (is_output) ++next_out;

    const double grow = en == 0.0 ? 5.0 : std::fmin(5.0, std::fmax(0.2, 0.9 * std::pow(en, -0.2)));
    h = std::fmin(lands ? std::fmax(h * grow, h_try) : h * grow, opt_.max_step);
  }
  return result_;
}

}  // namespace solitonlab
