#include "solitonlab/energetics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "solitonlab/errors.hpp"
#include "solitonlab/kernels.hpp"
#include "solitonlab/profile.hpp"
#include "solitonlab/quadrature.hpp"

namespace solitonlab {

namespace {

// Core decades first, then quarter periods of cos^2 out to R.
std::vector<double> radial_breakpoints(double r0, double omega, double R) {
  std::vector<double> pts{0.0};
  const double first = omega > 0.0 ? std::fmin(R, 0.5 * kPi / omega) : R;
  for (double f : {0.1, 0.3, 1.0, 3.0, 10.0, 30.0, 100.0, 300.0, 1000.0})
    if (f * r0 < first) pts.push_back(f * r0);
  if (omega > 0.0) {
    const double step = 0.5 * kPi / omega;
    for (double r = step; r < R; r += step)
      if (r > pts.back()) pts.push_back(r);
  }
  if (R > pts.back()) pts.push_back(R);
  return pts;
}

double coupling(const SolitonParams& p) { return p.g * p.g / (4.0 * kPi); }

}  // namespace

double energy_closed_form(const SolitonParams& params, double R) {
  const double w = params.omega0;
  const double c = std::cos(w * R);
  return static_energy_closed_form(params) + coupling(params) * (w * w * R - c * c / R);
}

double norm_closed_form(const SolitonParams& params, double R) {
  const double w = params.omega0;
  return coupling(params) * (w * R + 0.5 * std::sin(2.0 * w * R));
}

double energy_per_norm_asymptote(const SolitonParams& params, double R) {
  const double lambda0 = 2.0 * kPi / params.omega0;
  return params.omega0 * (1.0 + lambda0 * lambda0 / (32.0 * kPi * params.r0 * R));
}

EnergyReport energy_vs_radius(const SolitonParams& params, double R) {
  params.validate();
  if (!(R > 0.0)) throw DomainError("energy_vs_radius: R must be positive");
  const double w = params.omega0, r0 = params.r0, A = params.g / (4.0 * kPi);
  const Nonlinearity nl = Nonlinearity::lane_emden(params);
  auto f = [&](double r) { return interpolated_far_profile(params, w, r); };

  EnergyReport rep;
  rep.R = R;
  if (!(R > 10.0 * r0)) {
    std::ostringstream os;
    os << "R = " << R << " is not in the far field (R > 10 r0 = " << 10.0 * r0 << ")";
    rep.warnings.push_back(os.str());
  }
  if (auto warn = far_profile_regime_warning(params, w); !warn.empty()) rep.warnings.push_back(warn);

  const auto pts = radial_breakpoints(r0, w, R);
  rep.E_numeric = integrate_piecewise(
                      [&](double r) {
                        const double y = f(r) * f(r);
                        return 4.0 * kPi * r * r * (nl.U(y) - y * nl.N(y) + 2.0 * w * w * y);
                      },
                      pts, 1e-10)
                      .value;
  rep.Q_numeric =
      integrate_piecewise([&](double r) { return 4.0 * kPi * r * r * 2.0 * w * f(r) * f(r); }, pts, 1e-10).value;
  const double q = R * R + r0 * r0;
  const double df = A * (-w * std::sin(w * R) / std::sqrt(q) - std::cos(w * R) * R / (q * std::sqrt(q)));
  rep.surface = 4.0 * kPi * R * R * f(R) * df;
  rep.E_numeric += rep.surface;
  rep.E_closed = energy_closed_form(params, R);
  rep.Q_closed = norm_closed_form(params, R);
  rep.ratio = rep.E_numeric / rep.Q_numeric;
  rep.E_s = static_energy(LaneEmdenProfile(params)).value;
  return rep;
}

std::vector<EnergyReport> energy_sweep(const SolitonParams& params, std::span<const double> radii, unsigned threads) {
  std::vector<EnergyReport> out(radii.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(radii.size(), 1)));
  std::vector<std::exception_ptr> errors(threads);
  auto work = [&](unsigned t) {
    try {
      for (std::size_t k = t; k < radii.size(); k += threads) out[k] = energy_vs_radius(params, radii[k]);
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  if (threads <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

double fit_decay_exponent(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw InsufficientDataError("fit_decay_exponent: need two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw DomainError("fit_decay_exponent: values must be positive");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return -(n * sxy - sx * sy) / (n * sxx - sx * sx);
}

CavityField cavity_field(const SolitonParams& params, double omega, double R_cav, double r, double t) {
  if (!(R_cav > 0.0)) throw DomainError("cavity_field: cavity radius must be positive");
  if (!(r > 0.0 && r <= R_cav)) throw DomainError("cavity_field: r must lie in (0, R_cav]");
  const double s = std::sin(omega * R_cav);
  if (std::fabs(s) < 1e-6) {
    std::ostringstream os;
    os << "cavity resonance: omega R = " << omega * R_cav << " is a multiple of pi; the field blows up";
    throw ResonanceError(os.str());
  }
  const double cot = std::cos(omega * R_cav) / s;
  const double A = params.g / (4.0 * kPi * r);
  CavityField c;
  c.f_direct = A * std::cos(omega * r);
  c.f_reflected = cot * A * std::sin(omega * r);
  c.u = (c.f_direct - c.f_reflected) * std::exp(std::complex<double>(0.0, -omega * t));
  c.ratio = std::fabs(c.f_reflected / c.f_direct);
  c.near_resonance = std::fabs(s) < 0.05;
  return c;
}

ComplexField monopole_field(const SolitonParams& params, double vx) {
  if (!(std::fabs(vx) < 1.0)) throw DomainError("monopole_field: superluminal velocity");
  return [params, vx](const FourVector& x) { return uniform_motion_field(params, vx, x, FieldKind::sym); };
}

StressTensor stress_tensor(const SolitonParams& params, const ComplexField& u, const FourVector& x, double h,
                           const ExternalPotential& potential) {
  if (!(h > 0.0)) throw DomainError("stress_tensor: step must be positive");
  struct Local {
    double rho, M;
    FourVector W;  // d^mu phi + e A^mu
  };
  const double d = 0.1 * h;
  auto local = [&](const FourVector& y) {
    const auto u0 = u(y);
    const double rho = std::norm(u0);
    double neighbour = 0.0;
    FourVector dphi;
    for (int mu = 0; mu < 4; ++mu) {
      FourVector e{};
      e[mu] = d;
      const auto p1 = u(y + e), m1 = u(y - e), p2 = u(y + 2.0 * e), m2 = u(y - 2.0 * e);
      neighbour = std::fmax(neighbour, std::fmax(std::abs(p1), std::abs(m1)));
      const auto du = (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * d);
      dphi[mu] = (std::conj(u0) * du).imag() / rho;
    }
    if (!(std::sqrt(rho) > 1e-8 * neighbour)) throw NodeError("stress_tensor: node of the field");
    Local l;
    l.rho = rho;
    l.W = lower(dphi) + params.e * potential.value(y);
    const double W2 = minkowski_dot(l.W, l.W);
    if (!(W2 > 0.0)) throw TachyonError("stress_tensor: spacelike phase gradient");
    l.M = std::sqrt(W2);
    return l;
  };
  auto tensor = [](const Local& l) {
    StressTensor::Matrix T{};
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n) T[m][n] = 2.0 * l.rho * l.W[m] * l.W[n];
    return T;
  };

  StressTensor s;
  const Local c = local(x);
  s.T = tensor(c);
  FourVector dM;
  for (int mu = 0; mu < 4; ++mu) {
    FourVector e{};
    e[mu] = h;
    const Local lp = local(x + e), lm = local(x - e);
    const auto Tp = tensor(lp), Tm = tensor(lm);
    for (int nu = 0; nu < 4; ++nu) s.divergence[nu] += (Tp[mu][nu] - Tm[mu][nu]) / (2.0 * h);
    dM[mu] = (lp.M - lm.M) / (2.0 * h);
  }
  const FourVector v = -c.W / c.M;
  s.force = 2.0 * c.rho * c.M * (lower(dM) + params.e * contract_field(potential.field_tensor(x), v));
  s.residual = s.divergence - s.force;
  s.max_residual = max_abs(s.residual);
  for (const auto& row : s.T)
    for (double t : row) s.scale = std::fmax(s.scale, std::fabs(t) / h);
  return s;
}

DiamondEnergy diamond_energy(const SolitonParams& params, double T_life, double t_eval) {
  params.validate();
  if (!(T_life > 0.0)) throw DomainError("diamond_energy: lifetime must be positive");
  if (t_eval < 0.0) t_eval = 0.5 * T_life;
  if (t_eval > T_life) throw DomainError("diamond_energy: evaluation time outside the lifetime");
  const double w = params.omega0, r0 = params.r0;
  DiamondEnergy d;
  if (!(w * T_life >= 100.0)) {
    std::ostringstream os;
    os << "omega0 T = " << w * T_life << " is not large; the bookkeeping neglects transients at the tips";
    d.warnings.push_back(os.str());
  }
  const Nonlinearity nl = Nonlinearity::lane_emden(params);
  // A lone retarded or advanced wave carries half the symmetric amplitude.
  auto half_wave = [&](double r) {
    const double a = params.g / (8.0 * kPi * std::sqrt(r * r + r0 * r0));
    return 4.0 * kPi * r * r * 2.0 * w * w * a * a;
  };
  auto overlap = [&](double r) {
    const double y = std::pow(interpolated_far_profile(params, w, r), 2);
    return 4.0 * kPi * r * r * (nl.U(y) - y * nl.N(y) + 2.0 * w * w * y);
  };
  auto shell = [&](double a, double b) {
    std::vector<double> pts{a};
    for (double f : {1.0, 10.0, 100.0})
      if (a + f * r0 < b && a + f * r0 > pts.back()) pts.push_back(a + f * r0);
    pts.push_back(b);
    return integrate_piecewise(half_wave, pts, 1e-10).value;
  };
  // Shell [T/2, 3T/2] after the end; by time reflection the same before the start.
  d.E_after = shell(0.5 * T_life, 1.5 * T_life);
  d.E_before = d.E_after;
  const double m = std::fmin(t_eval, T_life - t_eval), M = std::fmax(t_eval, T_life - t_eval);
  double inside = m > 0.0 ? integrate_piecewise(overlap, radial_breakpoints(r0, w, m), 1e-10).value : 0.0;
  if (M > m) inside += shell(m, M);
  d.E_during = inside;
  d.bulk_closed = coupling(params) * w * w * T_life / 2.0;
  d.E_s = static_energy_closed_form(params);
  return d;
}

double darkmatter_ratio(double r0, double lambda0, double R) {
  if (!(r0 > 0.0) || !(lambda0 > 0.0) || !(R >= 0.0)) throw DomainError("darkmatter_ratio: inputs must be positive");
  return 32.0 * kPi * (r0 / lambda0) * (R / lambda0);
}

}  // namespace solitonlab
