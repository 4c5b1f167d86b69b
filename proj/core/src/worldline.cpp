#include "solitonlab/worldline.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <sstream>

#include "solitonlab/errors.hpp"
#include "solitonlab/interpolation.hpp"
#include "solitonlab/quadrature.hpp"

namespace solitonlab {

namespace {

using Vec3 = CoordinateTimeWorldline::Vec3;

double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

FourVector four(double t, const Vec3& v) { return {t, v[0], v[1], v[2]}; }

// Solve g(s) = target on [a, b] for increasing g by Newton with a bisection safeguard.
template <typename G, typename DG>
double solve_increasing(G g, DG dg, double a, double b, double target) {
  double lo = a, hi = b;
  double s = 0.5 * (a + b);
  const double ga = g(a), gb = g(b);
  if (gb != ga) s = a + (b - a) * (target - ga) / (gb - ga);
  for (int it = 0; it < 100; ++it) {
    const double r = g(s) - target;
    if (r == 0.0) return s;
    if (r < 0.0) lo = s;
    else hi = s;
    const double d = dg(s);
    double next = d > 0.0 ? s - r / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - s) <= 1e-15 * std::fmax(1.0, std::fabs(s))) return next;
    s = next;
  }
  return s;
}

}  // namespace

FourVector Worldline::velocity(double s) const {
  const FourVector u = tangent(s);
  const double n2 = minkowski_dot(u, u);
  if (!(n2 > 0.0)) throw CausalityError("worldline tangent is not timelike");
  return u / std::sqrt(n2);
}

double Worldline::parameter_at_coordinate_time(double t) const {
  double a = parameter_min(), b = parameter_max();
  if (!std::isfinite(a) || !std::isfinite(b))
    throw DomainError("parameter_at_coordinate_time: unbounded worldline must override");
  if (t <= position(a).t) return a;
  if (t >= position(b).t) return b;
  return solve_increasing([&](double s) { return position(s).t; }, [&](double s) { return tangent(s).t; }, a, b, t);
}

UniformWorldline::UniformWorldline(const FourVector& origin, double vx, double vy, double vz)
    : origin_(origin), u_(four_velocity(vx, vy, vz)) {}

Kinematics UniformWorldline::kinematics(double s) const {
  return {position(s), u_, {}, {}, s};
}

CoordinateTimeWorldline::CoordinateTimeWorldline(Motion motion, double t_min, double t_max)
    : m_(std::move(motion)), t_min_(t_min), t_max_(t_max) {
  if (!(t_max_ > t_min_)) throw DomainError("CoordinateTimeWorldline: empty time range");
}

FourVector CoordinateTimeWorldline::position(double t) const { return four(t, m_.position(t)); }

FourVector CoordinateTimeWorldline::tangent(double t) const { return four(1.0, m_.velocity(t)); }

double CoordinateTimeWorldline::proper_time(double t) const {
  if (t == 0.0) return 0.0;
  auto rate = [this](double s) {
    const Vec3 v = m_.velocity(s);
    return std::sqrt(1.0 - dot3(v, v));
  };
  // Unit-length panels: a single adaptive pass over long spans stalls on its depth limit.
  const double a = std::fmin(0.0, t), b = std::fmax(0.0, t);
  std::vector<double> pts{a};
  for (double s = std::floor(a) + 1.0; s < b; s += 1.0)
    if (s > a) pts.push_back(s);
  pts.push_back(b);
  const double tau = integrate_piecewise(rate, pts, 1e-14, 1e-15 * (b - a)).value;
  return t > 0.0 ? tau : -tau;
}

double CoordinateTimeWorldline::parameter_at_proper_time(double tau) const {
  double t = tau;
  for (int it = 0; it < 200; ++it) {
    const Vec3 v = m_.velocity(t);
    const double rate = std::sqrt(1.0 - dot3(v, v));
    const double dt = (proper_time(t) - tau) / rate;
    t -= dt;
    if (std::fabs(dt) <= 1e-14 * std::fmax(1.0, std::fabs(t))) break;
  }
  return t;
}

double CoordinateTimeWorldline::parameter_at_coordinate_time(double t) const {
  return std::fmin(std::fmax(t, t_min_), t_max_);
}

Kinematics CoordinateTimeWorldline::kinematics(double t) const {
  const Vec3 v = m_.velocity(t), a = m_.acceleration(t), j = m_.jerk(t);
  const double va = dot3(v, a);
  const double gamma = 1.0 / std::sqrt(1.0 - dot3(v, v));
  const double g2 = gamma * gamma, g3 = g2 * gamma;
  const double gp = g3 * va;
  const double gpp = 3.0 * g3 * g2 * va * va + g3 * (dot3(a, a) + dot3(v, j));
  const FourVector f = four(1.0, v), fp = four(0.0, a), fpp = four(0.0, j);
  const FourVector w = gp * f + gamma * fp;
  const FourVector wp = gpp * f + 2.0 * gp * fp + gamma * fpp;
  Kinematics k;
  k.position = position(t);
  k.velocity = gamma * f;
  k.acceleration = gamma * w;
  k.jerk = gamma * (gp * w + gamma * wp);
  k.proper_time = proper_time(t);
  return k;
}

std::shared_ptr<CoordinateTimeWorldline> hyperbolic_worldline(double x0, double v0) {
  if (!(x0 > 0.0)) throw DomainError("hyperbolic_worldline: x0 must be positive");
  if (!(std::fabs(v0) < 1.0)) throw DomainError("hyperbolic_worldline: superluminal asymptotic velocity");
  const double a2 = x0 * x0, b2 = v0 * v0;
  CoordinateTimeWorldline::Motion m;
  m.position = [=](double t) { return Vec3{-std::sqrt(a2 + b2 * t * t), 0.0, 0.0}; };
  m.velocity = [=](double t) { return Vec3{-b2 * t / std::sqrt(a2 + b2 * t * t), 0.0, 0.0}; };
  m.acceleration = [=](double t) {
    const double X = std::sqrt(a2 + b2 * t * t);
    return Vec3{-b2 * a2 / (X * X * X), 0.0, 0.0};
  };
  m.jerk = [=](double t) {
    const double X = std::sqrt(a2 + b2 * t * t);
    return Vec3{3.0 * b2 * b2 * a2 * t / std::pow(X, 5), 0.0, 0.0};
  };
  return std::make_shared<CoordinateTimeWorldline>(std::move(m));
}

std::shared_ptr<CoordinateTimeWorldline> circular_worldline(double radius, double omega) {
  if (!(std::fabs(radius * omega) < 1.0)) throw DomainError("circular_worldline: superluminal orbit");
  const double R = radius, w = omega;
  CoordinateTimeWorldline::Motion m;
  m.position = [=](double t) { return Vec3{R * std::cos(w * t), R * std::sin(w * t), 0.0}; };
  m.velocity = [=](double t) { return Vec3{-R * w * std::sin(w * t), R * w * std::cos(w * t), 0.0}; };
  m.acceleration = [=](double t) {
    return Vec3{-R * w * w * std::cos(w * t), -R * w * w * std::sin(w * t), 0.0};
  };
  m.jerk = [=](double t) { return Vec3{R * w * w * w * std::sin(w * t), -R * w * w * w * std::cos(w * t), 0.0}; };
  return std::make_shared<CoordinateTimeWorldline>(std::move(m));
}

SampledWorldline::SampledWorldline(const Trajectory& traj) : s_(traj.lambdas()), z_(traj.positions()) {
  dz_ = nodal_derivatives<FourVector>(s_, z_);
  const std::size_t n = s_.size();
  if (traj.parameterization() == Parameterization::proper_time) {
    tau_ = s_;
    dtau_.assign(n, 1.0);
  } else {
    dtau_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double q = minkowski_dot(dz_[k], dz_[k]);
      if (!(q > 0.0)) throw CausalityError("SampledWorldline: non-timelike tangent at a sample");
      dtau_[k] = std::sqrt(q);
    }
    auto rate = [this](std::size_t k, double s) {
      const auto h = hermite_cubic(s_[k], s_[k + 1], z_[k], z_[k + 1], dz_[k], dz_[k + 1], s);
      return std::sqrt(std::fmax(minkowski_dot(h.slope, h.slope), 0.0));
    };
    using GL = boost::math::quadrature::gauss<double, 10>;
    tau_.assign(n, 0.0);
    for (std::size_t k = 0; k + 1 < n; ++k)
      tau_[k + 1] = tau_[k] + GL::integrate([&](double s) { return rate(k, s); }, s_[k], s_[k + 1]);
    if (s_.front() < 0.0 && s_.back() > 0.0) {
      const std::size_t k = locate_interval(s_, 0.0);
      const double shift = tau_[k] + GL::integrate([&](double s) { return rate(k, s); }, s_[k], 0.0);
      for (double& t : tau_) t -= shift;
    }
  }
  finish();
}

SampledWorldline::SampledWorldline(std::vector<double> s, std::vector<FourVector> z, std::vector<FourVector> dz,
                                   std::vector<double> tau, std::vector<double> dtau)
    : s_(std::move(s)), z_(std::move(z)), dz_(std::move(dz)), tau_(std::move(tau)), dtau_(std::move(dtau)) {
  const std::size_t n = s_.size();
  if (n < 2) throw InsufficientDataError("SampledWorldline: need at least two nodes");
  if (z_.size() != n || dz_.size() != n || tau_.size() != n || dtau_.size() != n)
    throw DomainError("SampledWorldline: node arrays differ in length");
  for (std::size_t k = 0; k + 1 < n; ++k)
    if (!(s_[k + 1] > s_[k]) || !(tau_[k + 1] > tau_[k]))
      throw DomainError("SampledWorldline: parameters must increase strictly");
  finish();
}

void SampledWorldline::finish() {
  const std::size_t n = s_.size();
  u_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double q = minkowski_dot(dz_[k], dz_[k]);
    if (!(q > 0.0)) throw CausalityError("SampledWorldline: non-timelike tangent at a sample");
    u_[k] = dz_[k] / std::sqrt(q);
  }
  du_ = nodal_derivatives<FourVector>(s_, u_);
}

namespace {

double clamp_param(double s, double lo, double hi) {
  const double slack = 1e-12 * std::fmax(1.0, std::fmax(std::fabs(lo), std::fabs(hi)));
  if (s < lo - slack || s > hi + slack) {
    std::ostringstream os;
    os << "parameter " << s << " outside sampled range [" << lo << ", " << hi << "]";
    throw RangeError(os.str());
  }
  return std::fmin(std::fmax(s, lo), hi);
}

}  // namespace

FourVector SampledWorldline::position(double s) const {
  s = clamp_param(s, s_.front(), s_.back());
  const std::size_t k = locate_interval(s_, s);
  return hermite_cubic(s_[k], s_[k + 1], z_[k], z_[k + 1], dz_[k], dz_[k + 1], s).value;
}

FourVector SampledWorldline::tangent(double s) const {
  s = clamp_param(s, s_.front(), s_.back());
  const std::size_t k = locate_interval(s_, s);
  return hermite_cubic(s_[k], s_[k + 1], z_[k], z_[k + 1], dz_[k], dz_[k + 1], s).slope;
}

double SampledWorldline::proper_time(double s) const {
  s = clamp_param(s, s_.front(), s_.back());
  const std::size_t k = locate_interval(s_, s);
  return hermite_cubic(s_[k], s_[k + 1], tau_[k], tau_[k + 1], dtau_[k], dtau_[k + 1], s).value;
}

double SampledWorldline::dtau_ds(double s) const {
  const std::size_t k = locate_interval(s_, s);
  return hermite_cubic(s_[k], s_[k + 1], tau_[k], tau_[k + 1], dtau_[k], dtau_[k + 1], s).slope;
}

double SampledWorldline::parameter_at_proper_time(double tau) const {
  tau = clamp_param(tau, tau_.front(), tau_.back());
  const std::size_t k = locate_interval(tau_, tau);
  if (tau == tau_[k]) return s_[k];
  if (tau == tau_[k + 1]) return s_[k + 1];
  return solve_increasing([&](double s) { return proper_time(s); }, [&](double s) { return dtau_ds(s); }, s_[k],
                          s_[k + 1], tau);
}

double SampledWorldline::parameter_at_coordinate_time(double t) const {
  if (t <= z_.front().t) return s_.front();
  if (t >= z_.back().t) return s_.back();
  std::size_t lo = 0, hi = z_.size() - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    (z_[mid].t <= t ? lo : hi) = mid;
  }
  return solve_increasing([&](double s) { return position(s).t; }, [&](double s) { return tangent(s).t; }, s_[lo],
                          s_[hi], t);
}

FourVector SampledWorldline::unit_velocity_slope(double s) const {
  const std::size_t k = locate_interval(s_, s);
  return hermite_cubic(s_[k], s_[k + 1], u_[k], u_[k + 1], du_[k], du_[k + 1], s).slope;
}

Kinematics SampledWorldline::kinematics(double s) const {
  s = clamp_param(s, s_.front(), s_.back());
  Kinematics k;
  k.position = position(s);
  k.velocity = velocity(s);
  k.proper_time = proper_time(s);
  auto accel = [&](double p, const FourVector& u) {
    FourVector a = unit_velocity_slope(p) / dtau_ds(p);
    return a - u * minkowski_dot(a, u);
  };
  k.acceleration = accel(s, k.velocity);
  const std::size_t i = locate_interval(s_, s);
  const double h = 1e-3 * (s_[i + 1] - s_[i]);
  const double sp = std::fmin(s + h, s_.back()), sm = std::fmax(s - h, s_.front());
  k.jerk = (accel(sp, velocity(sp)) - accel(sm, velocity(sm))) / ((sp - sm) * dtau_ds(s));
  return k;
}

Kinematics kinematics_at(const Trajectory& traj, double lambda) {
  if (traj.size() < 5) throw InsufficientDataError("kinematics_at: need at least five samples");
  if (lambda < traj.lambda_min() || lambda > traj.lambda_max()) {
    std::ostringstream os;
    os << "kinematics_at: lambda=" << lambda << " outside [" << traj.lambda_min() << ", " << traj.lambda_max() << "]";
    throw RangeError(os.str());
  }
  return SampledWorldline(traj).kinematics(lambda);
}

Trajectory resample_proper_time(const Trajectory& traj, std::size_t n) {
  if (n < 2) throw DomainError("resample_proper_time: need n >= 2");
  const SampledWorldline w(traj);
  const double s0 = w.parameter_min(), s1 = w.parameter_max();
  const double tau0 = w.proper_time(s0), tau1 = w.proper_time(s1);
  std::vector<TrajectorySample> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double tau = tau0 + (tau1 - tau0) * static_cast<double>(j) / static_cast<double>(n - 1);
    const double s = j == 0 ? s0 : j + 1 == n ? s1 : w.parameter_at_proper_time(tau);
    out[j] = {j + 1 == n ? tau1 : tau, w.position(s)};
  }
  return Trajectory(std::move(out), Parameterization::proper_time);
}

double total_proper_time(const Trajectory& traj) {
  const SampledWorldline w(traj);
  return w.proper_time(w.parameter_max()) - w.proper_time(w.parameter_min());
}

}  // namespace solitonlab
