#include "solitonlab/profile.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "solitonlab/errors.hpp"

namespace solitonlab {

LaneEmdenProfile::LaneEmdenProfile(SolitonParams p) : p_(p) { p_.validate(); }

double LaneEmdenProfile::operator()(double r) const {
  return amplitude() / std::sqrt(r * r + p_.r0 * p_.r0);
}

double LaneEmdenProfile::derivative(double r) const {
  const double q = r * r + p_.r0 * p_.r0;
  return -amplitude() * r / (q * std::sqrt(q));
}

double LaneEmdenProfile::second_derivative(double r) const {
  const double q = r * r + p_.r0 * p_.r0;
  return amplitude() * (2.0 * r * r - p_.r0 * p_.r0) / (q * q * std::sqrt(q));
}

double LaneEmdenProfile::laplacian(double r) const {
  const double q = r * r + p_.r0 * p_.r0;
  // F'' + 2F'/r = -3 A r0^2 / q^(5/2)
  return -3.0 * amplitude() * p_.r0 * p_.r0 / (q * q * std::sqrt(q));
}

double profile_eval(const LaneEmdenProfile& prof, double r) {
  if (r < 0.0) throw DomainError("profile_eval: negative radius");
  return prof(r);
}

LaneEmdenProfile dilate(const LaneEmdenProfile& prof, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("dilate: alpha must be positive");
  SolitonParams q = prof.params();
  q.r0 /= alpha;
  q.g /= std::sqrt(alpha);
  return LaneEmdenProfile(q);
}

double Nonlinearity::N(double y) const { return -gamma * std::pow(y, p); }

double Nonlinearity::U(double y) const { return -gamma * std::pow(y, p + 1.0) / (p + 1.0); }

QuadratureResult charge_integral(const LaneEmdenProfile& prof) {
  // gamma f^5 over all space
  const double A = prof.amplitude();
  const double coeff = 4.0 * kPi * prof.gamma() * std::pow(A, 5);
  return integrate_algebraic_radial(coeff, 2.0, 2.5, prof.params().r0);
}

QuadratureResult static_energy(const LaneEmdenProfile& prof) {
  // U - N f^2 = (2 gamma / 3) f^6 for p = 2
  const double A = prof.amplitude();
  const double coeff = 4.0 * kPi * (2.0 * prof.gamma() / 3.0) * std::pow(A, 6);
  return integrate_algebraic_radial(coeff, 2.0, 3.0, prof.params().r0);
}

double static_energy_closed_form(const SolitonParams& params) {
  return params.g * params.g / (32.0 * params.r0);
}

namespace {

struct Integrals {
  double I_k, I_p;
};

// I_k and I_p of the profile A / sqrt(r^2 + s^2).
Integrals profile_integrals(double A, double s, double p, double gamma) {
  const double I_k = integrate_algebraic_radial(4.0 * kPi * A * A, 4.0, 3.0, s).value;
  const double I_p =
      integrate_algebraic_radial(4.0 * kPi * gamma / (p + 1.0) * std::pow(A, 2.0 * (p + 1.0)), 2.0, p + 1.0, s).value;
  return {I_k, I_p};
}

// beta A / sqrt(alpha^2 r^2 + r0^2) = (beta A / alpha) / sqrt(r^2 + (r0/alpha)^2)
double transformed_energy(double A, double r0, double p, double gamma, double alpha, double beta) {
  const auto in = profile_integrals(beta * A / alpha, r0 / alpha, p, gamma);
  return in.I_k - in.I_p;
}

struct Derivs {
  double d1, d2;
};

template <typename E>
Derivs richardson_derivatives(E energy) {
  constexpr double h = 1e-3;
  const double e0 = energy(1.0);
  auto first = [&](double k) { return (energy(1.0 + k) - energy(1.0 - k)) / (2.0 * k); };
  auto second = [&](double k) { return (energy(1.0 + k) - 2.0 * e0 + energy(1.0 - k)) / (k * k); };
  return {(4.0 * first(h / 2) - first(h)) / 3.0, (4.0 * second(h / 2) - second(h)) / 3.0};
}

}  // namespace

DerrickScan derrick_scan(const LaneEmdenProfile& prof, double p, std::span<const double> alphas,
                         std::optional<double> gamma) {
  if (p == 0.0) throw DomainError("derrick_scan: p must be non-zero");
  if (!(p > 0.5)) throw AccuracyError("derrick_scan: I_p diverges for p <= 1/2 with a 1/r tail", 0.0, 0.0);
  if (p != 2.0 && !gamma) throw DomainError("derrick_scan: gamma must be supplied for p != 2");
  DerrickScan out;
  out.p = p;
  out.gamma = gamma.value_or(prof.gamma());
  const double A = prof.amplitude(), r0 = prof.params().r0;
  const auto base = profile_integrals(A, r0, p, out.gamma);
  out.I_k = base.I_k;
  out.I_p = base.I_p;
  out.boundary = 1e3 * r0;
  out.surface_term = 4.0 * kPi * out.boundary * out.boundary * std::fabs(prof(out.boundary) * prof.derivative(out.boundary));

  for (double a : alphas) {
    if (!(a > 0.0)) throw DomainError("derrick_scan: alpha must be positive");
    DerrickRow row;
    row.alpha = a;
    row.beta = std::pow(a, 1.0 / p);
    row.energy = transformed_energy(A, r0, p, out.gamma, a, row.beta);
    row.energy_formula = row.beta * row.beta / a * out.I_k - std::pow(row.beta, 2.0 * (p + 1.0)) / (a * a * a) * out.I_p;
    out.rows.push_back(row);
  }
  const auto constrained =
      richardson_derivatives([&](double a) { return transformed_energy(A, r0, p, out.gamma, a, std::pow(a, 1.0 / p)); });
  out.dE = constrained.d1;
  out.d2E = constrained.d2;
  const auto free = richardson_derivatives([&](double a) { return transformed_energy(A, r0, p, out.gamma, a, 1.0); });
  out.dE_unconstrained = free.d1;
  out.d2E_unconstrained = free.d2;
  return out;
}

void write_derrick_csv(std::ostream& os, const DerrickScan& scan) {
  os << "alpha,E_s,beta\n" << std::setprecision(17);
  for (const auto& r : scan.rows) os << r.alpha << ',' << r.energy << ',' << r.beta << '\n';
  os << "# p," << scan.p << '\n'
     << "# I_k," << scan.I_k << '\n'
     << "# I_p," << scan.I_p << '\n'
     << "# surface_term," << scan.surface_term << '\n'
     << "# dE_dalpha," << scan.dE << '\n'
     << "# d2E_dalpha2," << scan.d2E << '\n'
     << "# dE_dalpha_unconstrained," << scan.dE_unconstrained << '\n'
     << "# d2E_dalpha2_unconstrained," << scan.d2E_unconstrained << '\n';
}

double interpolated_far_profile(const SolitonParams& params, double M, double r) {
  return params.g / (4.0 * kPi) * std::cos(M * r) / std::sqrt(r * r + params.r0 * params.r0);
}

std::string far_profile_regime_warning(const SolitonParams& params, double M) {
  if (M * params.r0 <= 0.1) return {};
  std::ostringstream os;
  os << "M r0 = " << M * params.r0 << " is not small; the interpolated profile is outside its regime";
  return os.str();
}

ResidualTerms radial_equation_residual(const SolitonParams& params, double M, double r) {
  const double A = params.g / (4.0 * kPi);
  const double r0 = params.r0;
  const double gamma = params.quintic_coefficient();
  const double q = r * r + r0 * r0, rho = std::sqrt(q);
  const double P = 1.0 / rho, dP = -r / (q * rho), d2P = (2.0 * r * r - r0 * r0) / (q * q * rho);
  const double c = std::cos(M * r), s = std::sin(M * r);
  const double F = A * c * P;
  const double dF = A * (-M * s * P + c * dP);
  const double d2F = A * (-M * M * c * P - 2.0 * M * s * dP + c * d2P);
  const double t1 = d2F, t2 = 2.0 * dF / r, t3 = gamma * std::pow(F, 5), t4 = M * M * F;
  // Closed form of the same sum, free of the cancellation between t1, t2 and t3.
  const double residual = gamma * std::pow(A * P, 5) * c * (std::pow(c, 4) - 1.0) - 2.0 * A * M * s * r0 * r0 / (r * q * rho);
  return {residual, std::fabs(t1) + std::fabs(t2) + std::fabs(t3) + std::fabs(t4)};
}

double g_equation_residual(double x, double offset) {
  if (!(x > 0.0)) throw DomainError("g_equation_residual: x must be positive");
  const double q = 1.0 + x * x;
  const double G = x / std::sqrt(q) + offset;
  const double d2G = -3.0 * x / (q * q * std::sqrt(q));
  return d2G + 3.0 * std::pow(G, 5) / std::pow(x, 4);
}

}  // namespace solitonlab
