#include "solitonlab/pilot_wave.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "solitonlab/interpolation.hpp"
#include "solitonlab/ode.hpp"
#include "solitonlab/worldline.hpp"

namespace solitonlab {

namespace {

constexpr Complex I(0.0, 1.0);

void check_mass_shell(const FourVector& k, double omega0) {
  const double kk = minkowski_dot(k, k);
  const double scale = std::fmax(1.0, std::fmax(omega0 * omega0, k.t * k.t));
  if (std::fabs(kk - omega0 * omega0) > 1e-12 * scale) {
    std::ostringstream os;
    os << "wavevector " << k << " is off the mass shell: k.k = " << kk << ", omega0^2 = " << omega0 * omega0;
    throw DomainError(os.str());
  }
}

double inverse_frequency(const std::vector<PsiModel::Term>& terms, double omega0) {
  double f = omega0;
  for (const auto& t : terms) f = std::fmax(f, max_abs(t.k));
  return f > 0.0 ? 1.0 / f : 1.0;
}

}  // namespace

PsiModel PsiModel::plane_wave(const SolitonParams& params, const FourVector& k, ExternalPotential potential) {
  return superposition(params, {{Complex(1.0, 0.0), k}}, potential).as_kind(Kind::plane_wave);
}

PsiModel PsiModel::plane_wave_velocity(const SolitonParams& params, double vx, double vy, double vz,
                                       ExternalPotential potential) {
  return plane_wave(params, four_velocity(vx, vy, vz) * params.omega0, potential);
}

PsiModel PsiModel::superposition(const SolitonParams& params, std::vector<Term> terms, ExternalPotential potential) {
  params.validate();
  if (terms.empty()) throw DomainError("superposition: no terms");
  PsiModel m;
  m.kind_ = Kind::superposition;
  m.params_ = params;
  m.potential_ = potential;
  m.scale_ = 0.0;
  for (auto& t : terms) {
    check_mass_shell(t.k, params.omega0);
    m.scale_ += std::abs(t.weight);
  }
  m.length_ = inverse_frequency(terms, params.omega0);
  const FourVector eA = potential.value() * params.e;
  for (auto& t : terms) t.k += eA;
  m.terms_ = std::move(terms);
  return m;
}

PsiModel PsiModel::cavity_mode(const SolitonParams& params, int n, double R) {
  params.validate();
  if (n < 1) throw DomainError("cavity_mode: n must be >= 1");
  if (!(R > 0.0)) throw DomainError("cavity_mode: R must be positive");
  PsiModel m;
  m.kind_ = Kind::cavity_mode;
  m.params_ = params;
  m.R_ = R;
  m.k_n_ = n * kPi / R;
  m.omega_n_ = std::sqrt(params.omega0 * params.omega0 + m.k_n_ * m.k_n_);
  m.scale_ = m.k_n_;  // sup of sin(kr)/r
  m.length_ = 1.0 / m.omega_n_;
  return m;
}

PsiModel PsiModel::custom(const SolitonParams& params, Function psi, double amplitude_scale, double wavelength,
                          ExternalPotential potential) {
  params.validate();
  if (!psi) throw DomainError("custom: empty function");
  if (!(amplitude_scale > 0.0) || !(wavelength > 0.0)) throw DomainError("custom: scales must be positive");
  PsiModel m;
  m.kind_ = Kind::custom;
  m.params_ = params;
  m.potential_ = potential;
  m.fn_ = std::move(psi);
  m.scale_ = amplitude_scale;
  m.length_ = wavelength;
  return m;
}

PsiModel PsiModel::as_kind(Kind k) && {
  kind_ = k;
  return std::move(*this);
}

Complex PsiModel::value(const FourVector& x) const {
  switch (kind_) {
    case Kind::plane_wave:
    case Kind::superposition: {
      Complex s = 0.0;
      for (const auto& t : terms_) s += t.weight * std::exp(-I * minkowski_dot(t.k, x));
      return s;
    }
    case Kind::cavity_mode: {
      const double r = spatial_norm(x);
      const double chi = r < 1e-8 / k_n_ ? k_n_ * (1.0 - k_n_ * k_n_ * r * r / 6.0) : std::sin(k_n_ * r) / r;
      return chi * std::exp(-I * omega_n_ * x.t);
    }
    case Kind::custom:
      return fn_(x);
  }
  return 0.0;
}

PsiDerivatives PsiModel::derivatives(const FourVector& x) const {
  PsiDerivatives d;
  switch (kind_) {
    case Kind::plane_wave:
    case Kind::superposition: {
      for (const auto& t : terms_) {
        const Complex e = t.weight * std::exp(-I * minkowski_dot(t.k, x));
        const FourVector kl = lower(t.k);
        d.value += e;
        for (int mu = 0; mu < 4; ++mu) d.grad[mu] += -I * kl[mu] * e;
        d.box += -minkowski_dot(t.k, t.k) * e;
      }
      return d;
    }
    case Kind::cavity_mode: {
      const double r = spatial_norm(x), k = k_n_;
      double chi, dchi_over_r;  // chi and chi'/r, regular at the centre
      if (k * r < 1e-4) {
        const double kr2 = k * k * r * r;
        chi = k * (1.0 - kr2 / 6.0);
        dchi_over_r = -k * k * k / 3.0 * (1.0 - kr2 / 10.0);
      } else {
        chi = std::sin(k * r) / r;
        dchi_over_r = (k * r * std::cos(k * r) - std::sin(k * r)) / (r * r * r);
      }
      const Complex phase = std::exp(-I * omega_n_ * x.t);
      d.value = chi * phase;
      d.grad[0] = -I * omega_n_ * d.value;
      d.grad[1] = dchi_over_r * x.x * phase;
      d.grad[2] = dchi_over_r * x.y * phase;
      d.grad[3] = dchi_over_r * x.z * phase;
      // (d_t^2 - lap) Psi = (-omega_n^2 + k^2) Psi
      d.box = -params_.omega0 * params_.omega0 * d.value;
      return d;
    }
    case Kind::custom: {
      const double h = 1e-4 * length_;
      d.value = fn_(x);
      for (int mu = 0; mu < 4; ++mu) {
        FourVector e{};
        e[mu] = h;
        const Complex fp1 = fn_(x + e), fm1 = fn_(x - e), fp2 = fn_(x + 2.0 * e), fm2 = fn_(x - 2.0 * e);
        d.grad[mu] = (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h);
        const Complex second = (-fp2 + 16.0 * fp1 - 30.0 * d.value + 16.0 * fm1 - fm2) / (12.0 * h * h);
        d.box += mu == 0 ? second : -second;
      }
      return d;
    }
  }
  return d;
}

HydroFields hydro_from_derivatives(const PsiDerivatives& d, double omega0, double e, const FourVector& A,
                                   double node_scale) {
  const double rho = std::norm(d.value);
  const double a = std::sqrt(rho);
  if (!(a >= 1e-12 * node_scale)) {
    std::ostringstream os;
    os << "node of the pilot wave: |Psi| = " << a << " (scale " << node_scale << ")";
    throw NodeError(os.str());
  }
  FourVector dS_cov, drho_cov;
  double grad_grad = 0.0;  // eta^{mu nu} d_mu Psi* d_nu Psi
  for (int mu = 0; mu < 4; ++mu) {
    const Complex c = std::conj(d.value) * d.grad[mu];
    dS_cov[mu] = c.imag() / rho;
    drho_cov[mu] = 2.0 * c.real();
    grad_grad += (mu == 0 ? 1.0 : -1.0) * std::norm(d.grad[mu]);
  }
  const double box_rho = 2.0 * (grad_grad + (std::conj(d.value) * d.box).real());
  // Lowering and raising are the same sign flip, so a dot of covariant components works.
  const double drho2 = minkowski_dot(drho_cov, drho_cov);
  const double box_a = box_rho / (2.0 * a) - drho2 / (4.0 * a * a * a);

  HydroFields h;
  h.amplitude = a;
  h.phase = std::arg(d.value);
  h.phase_gradient = lower(dS_cov);  // raise
  h.quantum_potential = box_a / a;
  h.mass_squared = omega0 * omega0 + h.quantum_potential;
  if (!(h.mass_squared > 0.0)) {
    std::ostringstream os;
    os << "tachyonic point: M^2 = " << h.mass_squared;
    throw TachyonError(os.str());
  }
  h.mass = std::sqrt(h.mass_squared);
  h.velocity = -(h.phase_gradient + e * A) / h.mass;
  return h;
}

HydroFields hydro_decompose(const PsiModel& psi, const FourVector& x) {
  return hydro_from_derivatives(psi.derivatives(x), psi.params().omega0, psi.params().e, psi.potential().value(x),
                                psi.amplitude_scale());
}

Trajectory integrate_guidance(const PsiModel& psi, const FourVector& z0, double tau0, double tau1,
                              const GuidanceOptions& options) {
  if (!(tau1 > tau0)) throw DomainError("integrate_guidance: empty proper-time span");
  if (options.samples < 2) throw DomainError("integrate_guidance: need at least two samples");
  OdeOptions opt;
  opt.abs_tol = options.tol;
  opt.record_steps = false;
  const std::size_t n = options.samples;
  for (std::size_t j = 1; j < n; ++j)
    opt.outputs.push_back(j + 1 == n ? tau1 : tau0 + (tau1 - tau0) * static_cast<double>(j) / static_cast<double>(n - 1));
  auto rhs = [&psi](double, std::span<const double> y, std::span<double> dy) {
    const auto v = hydro_decompose(psi, {y[0], y[1], y[2], y[3]}).velocity;
    for (int mu = 0; mu < 4; ++mu) dy[mu] = v[mu];
  };
  DormandPrince dp(rhs, opt);
  auto to_samples = [](const OdeResult& r) {
    std::vector<TrajectorySample> s;
    for (const auto& p : r.samples) s.push_back({p.t, {p.y[0], p.y[1], p.y[2], p.y[3]}});
    return s;
  };
  try {
    dp.integrate(tau0, tau1, {z0.t, z0.x, z0.y, z0.z});
  } catch (const NodeError& e) {
    throw DynamicsError(std::string("guidance stopped: ") + e.what(), to_samples(dp.result()));
  } catch (const TachyonError& e) {
    throw DynamicsError(std::string("guidance stopped: ") + e.what(), to_samples(dp.result()));
  }
  return Trajectory(to_samples(dp.result()), Parameterization::proper_time);
}

std::vector<CollectiveSample> collective_from_masses(const std::vector<double>& taus,
                                                     const std::vector<double>& masses) {
  if (taus.size() != masses.size() || taus.size() < 2)
    throw InsufficientDataError("collective coordinates: need at least two matching samples");
  const auto dM = nodal_derivatives<double>(taus, masses, 3);
  std::vector<CollectiveSample> out(taus.size());
  const double M0 = masses.front();
  for (std::size_t k = 0; k < taus.size(); ++k) {
    const double ratio = masses[k] / M0;
    out[k] = {taus[k], masses[k], std::sqrt(ratio), 0.5 * dM[k], std::pow(ratio, 0.25)};
  }
  return out;
}

std::vector<CollectiveSample> collective_coordinates(const PsiModel& psi, const Trajectory& traj) {
  std::vector<double> taus, masses;
  for (const auto& s : traj.samples()) {
    taus.push_back(s.lambda);
    masses.push_back(hydro_decompose(psi, s.z).mass);
  }
  return collective_from_masses(taus, masses);
}

FourVector mass_gradient(const PsiModel& psi, const FourVector& x) {
  const double h = 1e-3 * psi.length_scale();
  FourVector g;
  for (int mu = 0; mu < 4; ++mu) {
    FourVector e{};
    e[mu] = h;
    auto M = [&](const FourVector& p) { return hydro_decompose(psi, p).mass; };
    g[mu] = (-M(x + 2.0 * e) + 8.0 * M(x + e) - 8.0 * M(x - e) + M(x - 2.0 * e)) / (12.0 * h);
  }
  return lower(g);
}

ForceLawReport force_law_residual(const PsiModel& psi, const Trajectory& traj) {
  if (traj.parameterization() != Parameterization::proper_time)
    throw DomainError("force_law_residual: trajectory must be proper-time parameterized");
  const std::size_t n = traj.size();
  if (n < 3) throw InsufficientDataError("force_law_residual: need at least three samples");
  const auto taus = traj.lambdas();
  const auto z = traj.positions();
  std::vector<double> M(n);
  for (std::size_t k = 0; k < n; ++k) M[k] = hydro_decompose(psi, z[k]).mass;
  const double e = psi.params().e;
  ForceLawReport rep;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const auto w = fornberg_weights(taus[k], std::span<const double>(taus).subspan(k - 1, 3), 2);
    FourVector zd, zdd;
    double Md = 0.0;
    for (int j = 0; j < 3; ++j) {
      zd += z[k - 1 + j] * w[1][j];
      zdd += z[k - 1 + j] * w[2][j];
      Md += M[k - 1 + j] * w[1][j];
    }
    const FourVector lhs = zd * Md + zdd * M[k];
    const FourVector rhs = mass_gradient(psi, z[k]) + e * contract_field(psi.potential().field_tensor(z[k]), zd);
    const FourVector r = lhs - rhs;
    rep.taus.push_back(taus[k]);
    rep.residuals.push_back(r);
    rep.max_residual = std::fmax(rep.max_residual, max_abs(r));
  }
  return rep;
}

double near_field_amplitude(const SolitonParams& params, double alpha, double r) {
  return std::sqrt(alpha) * params.g / (4.0 * kPi * std::sqrt(alpha * alpha * r * r + params.r0 * params.r0));
}

Complex assemble_near_field(const SolitonParams& params, const PsiModel& psi, const Trajectory& traj, double tau,
                            const FourVector& xi) {
  if (traj.parameterization() != Parameterization::proper_time)
    throw DomainError("assemble_near_field: trajectory must be proper-time parameterized");
  const SampledWorldline w(traj);
  if (tau < w.parameter_min() || tau > w.parameter_max()) throw RangeError("assemble_near_field: tau outside trajectory");
  const FourVector z = w.position(tau);
  const FourVector u = w.velocity(tau);
  if (std::fabs(minkowski_dot(xi, u)) > 1e-9 * std::fmax(1.0, max_abs(xi)))
    throw GeometryError("assemble_near_field: offset is not in the rest hyperplane of the trajectory");
  const double xi2 = minkowski_dot(xi, xi);
  const double r = std::sqrt(std::fmax(-xi2, 0.0));

  auto mass_at = [&](double t) { return hydro_decompose(psi, w.position(t)).mass; };
  const HydroFields h = hydro_decompose(psi, z);
  const double M0 = hydro_decompose(psi, traj.samples().front().z).mass;
  const double alpha = std::sqrt(h.mass / M0);

  const double lo = w.parameter_min(), hi = w.parameter_max();
  const double d = 1e-3 * std::fmin(psi.length_scale(), 0.25 * (hi - lo));
  double dM;
  if (tau - 2 * d >= lo && tau + 2 * d <= hi)
    dM = (-mass_at(tau + 2 * d) + 8 * mass_at(tau + d) - 8 * mass_at(tau - d) + mass_at(tau - 2 * d)) / (12 * d);
  else if (tau - 2 * d < lo)
    dM = (-3 * h.mass + 4 * mass_at(tau + d) - mass_at(tau + 2 * d)) / (2 * d);
  else
    dM = (3 * h.mass - 4 * mass_at(tau - d) + mass_at(tau - 2 * d)) / (2 * d);
  const double B = 0.5 * dM;

  const double phi = h.phase - params.e * minkowski_dot(psi.potential().value(z), xi) + 0.5 * B * xi2;
  return near_field_amplitude(params, alpha, r) * std::exp(Complex(0.0, phi));
}

}  // namespace solitonlab
