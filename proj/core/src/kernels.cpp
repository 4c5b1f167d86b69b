#include "solitonlab/kernels.hpp"

#include <cmath>
#include <sstream>

#include "solitonlab/errors.hpp"
#include "solitonlab/pilot_wave.hpp"

namespace solitonlab {

namespace {

constexpr double kFourPi = 4.0 * kPi;

double interval(const FourVector& x, const FourVector& z) {
  const FourVector d = x - z;
  return minkowski_dot(d, d);
}

double root_scale(const FourVector& x) { return std::fmax(1.0, spatial_dot(x, x) + x.t * x.t); }

// Safeguarded Newton on a sign-changing bracket of f(s) = (x - z(s))^2.
double refine_root(const Worldline& w, const FourVector& x, double a, double b, double fa, double scale) {
  double s = 0.5 * (a + b);
  for (int it = 0; it < 200; ++it) {
    const FourVector z = w.position(s);
    const double f = interval(x, z);
    if (std::fabs(f) <= 1e-15 * scale) return s;
    if ((f > 0.0) == (fa > 0.0)) {
      a = s;
      fa = f;
    } else {
      b = s;
    }
    const double fp = -2.0 * minkowski_dot(x - z, w.tangent(s));
    double next = s - f / fp;
    if (!(next > std::fmin(a, b) && next < std::fmax(a, b))) next = 0.5 * (a + b);
    if (std::fabs(next - s) <= 4e-16 * std::fmax(1.0, std::fabs(s))) return next;
    s = next;
  }
  return s;
}

LightConeRoot make_root(const Worldline& w, const FourVector& x, double s, double scale) {
  LightConeRoot r;
  r.s = s;
  r.position = w.position(s);
  r.velocity = w.velocity(s);
  r.tau = w.proper_time(s);
  r.residual = interval(x, r.position);
  r.rho = std::fabs(minkowski_dot(x - r.position, r.velocity));
  if (!(r.rho > 1e-12 * std::sqrt(scale))) throw CausticError("light-cone root with vanishing rho");
  return r;
}

LightConeRoot find_root(const Worldline& w, const FourVector& x, double sx, double fx, double d0, double scale,
                        HorizonError::Root which) {
  const bool past = which == HorizonError::Root::retarded;
  const char* name = past ? "retarded" : "advanced";
  auto horizon = [&] {
    std::ostringstream os;
    os << "the " << (past ? "backward" : "forward") << " light cone of " << x << " leaves the worldline range ("
       << name << " root)";
    return HorizonError(os.str(), which);
  };
  const double edge = past ? w.parameter_min() : w.parameter_max();
  const FourVector zx = w.position(sx);
  if (fx > 0.0 || (sx == edge && (past ? zx.t > x.t : zx.t < x.t))) throw horizon();
  double near = sx;
  double dt = 2.0 * std::fmax(d0, 1e-8 * std::sqrt(scale));
  for (int i = 0; i < 200; ++i, dt *= 2.0) {
    if (near == edge) throw horizon();
    const double far = w.parameter_at_coordinate_time(past ? x.t - dt : x.t + dt);
    const double ff = interval(x, w.position(far));
    if (ff > 0.0) return make_root(w, x, refine_root(w, x, far, near, ff, scale), scale);
    near = far;
  }
  throw horizon();
}

double unwrap_near(double v, double ref) { return ref + std::remainder(v - ref, 2.0 * kPi); }

}  // namespace

std::string to_string(FieldKind k) {
  switch (k) {
    case FieldKind::ret: return "ret";
    case FieldKind::adv: return "adv";
    case FieldKind::sym: return "sym";
  }
  return "?";
}

FieldKind parse_field_kind(const std::string& s) {
  if (s == "ret") return FieldKind::ret;
  if (s == "adv") return FieldKind::adv;
  if (s == "sym") return FieldKind::sym;
  throw DomainError("unknown field kind '" + s + "' (expected ret, adv or sym)");
}

LightConeRoots solve_light_cone(const Worldline& w, const FourVector& x) {
  const double scale = root_scale(x);
  LightConeRoots roots;
  roots.s_x = w.parameter_at_coordinate_time(x.t);
  const FourVector zx = w.position(roots.s_x);
  const double fx = interval(x, zx);
  const double d0 = spatial_norm(x - zx);
  if (d0 < 1e-12 * std::sqrt(scale) && std::fabs(x.t - zx.t) < 1e-12 * std::sqrt(scale))
    throw CausticError("field point lies on the worldline");
  roots.ret = find_root(w, x, roots.s_x, fx, d0, scale, HorizonError::Root::retarded);
  roots.adv = find_root(w, x, roots.s_x, fx, d0, scale, HorizonError::Root::advanced);
  return roots;
}

PathData PathData::classical(double omega0) {
  PathData p;
  p.phase = [omega0](const EmissionPoint& e) { return -omega0 * e.tau; };
  return p;
}

PathData PathData::from_psi(const PsiModel& psi, double M0) {
  if (!(M0 > 0.0)) throw DomainError("PathData::from_psi: reference mass must be positive");
  PathData p;
  p.phase = [&psi](const EmissionPoint& e) { return std::arg(psi.value(e.position)); };
  p.alpha = [&psi, M0](const EmissionPoint& e) { return std::sqrt(hydro_decompose(psi, e.position).mass / M0); };
  return p;
}

Complex constant_A_kernel_phase(double e, const FourVector& A, const FourVector& x, const FourVector& xp) {
  return std::exp(Complex(0.0, -e * minkowski_dot(A, x - xp)));
}

Complex LienardValue::get(FieldKind k, bool regularized) const {
  switch (k) {
    case FieldKind::ret: return regularized ? ret : ret_bare;
    case FieldKind::adv: return regularized ? adv : adv_bare;
    case FieldKind::sym: return regularized ? sym() : sym_bare();
  }
  return {};
}

LienardValue lienard_all(const SolitonParams& params, const Worldline& w, const PathData& path, const FourVector& x,
                         const ExternalPotential& potential) {
  LienardValue v;
  v.roots = solve_light_cone(w, x);
  const FourVector A = potential.value();
  const bool gauge = params.e != 0.0 && A != FourVector{};
  auto emit = [&](const LightConeRoot& r, Complex& reg, Complex& bare) {
    const EmissionPoint ep{r.s, r.tau, r.position};
    Complex h = std::polar(params.g / kFourPi, path.phase(ep));
    if (path.alpha) {
      const double a = path.alpha(ep);
      if (a != 1.0) h /= std::sqrt(a);
    }
    if (gauge) h *= constant_A_kernel_phase(params.e, A, x, r.position);
    bare = h / r.rho;
    reg = h / std::sqrt(r.rho * r.rho + params.r0 * params.r0);
  };
  emit(v.roots.ret, v.ret, v.ret_bare);
  emit(v.roots.adv, v.adv, v.adv_bare);
  return v;
}

Complex lienard_field(const SolitonParams& params, const Worldline& w, const PathData& path, const FourVector& x,
                      FieldKind kind, const ExternalPotential& potential) {
  return lienard_all(params, w, path, x, potential).get(kind);
}

Complex uniform_motion_field(const SolitonParams& params, double vx, const FourVector& x, FieldKind kind) {
  if (!(std::fabs(vx) < 1.0)) throw DomainError("uniform_motion_field: superluminal velocity");
  const double gamma = 1.0 / std::sqrt(1.0 - vx * vx);
  const double dx = gamma * (x.x - vx * x.t);
  const double R = std::sqrt(dx * dx + x.y * x.y + x.z * x.z);
  const double theta = params.omega0 * gamma * (x.t - vx * x.x);
  const double amp = params.g / (kFourPi * std::sqrt(params.r0 * params.r0 + R * R));
  const double wR = params.omega0 * R;
  switch (kind) {
    case FieldKind::ret: return amp * std::exp(Complex(0.0, -(theta - wR)));
    case FieldKind::adv: return amp * std::exp(Complex(0.0, -(theta + wR)));
    case FieldKind::sym: return amp * std::cos(wR) * std::exp(Complex(0.0, -theta));
  }
  return {};
}

NearFieldExpansion near_field_expansion(const SolitonParams& params, const Worldline& w, const PathData& path,
                                        double tau, const FourVector& xi) {
  const double s = w.parameter_at_proper_time(tau);
  const Kinematics k = w.kinematics(s);
  if (std::fabs(minkowski_dot(xi, k.velocity)) > 1e-9 * std::fmax(1.0, max_abs(xi)))
    throw GeometryError("near_field_expansion: offset is not in the rest hyperplane");
  const double r = std::sqrt(std::fmax(-minkowski_dot(xi, xi), 0.0));
  const double a2 = minkowski_dot(k.acceleration, k.acceleration);  // <= 0
  if (!(r * std::sqrt(std::fmax(-a2, 0.0)) < 0.1)) {
    std::ostringstream os;
    os << "near_field_expansion: r |zddot| = " << r * std::sqrt(std::fmax(-a2, 0.0)) << " is not small";
    throw ValidityError(os.str());
  }
  if (!(r > 0.0)) throw GeometryError("near_field_expansion: zero offset");
  const double eps = minkowski_dot(xi, k.acceleration);
  const double eta = minkowski_dot(xi, k.jerk);

  NearFieldExpansion out;
  const double common = 1.0 + eps / 2.0 + 3.0 * eps * eps / 8.0;
  out.sigma_ret = r * (common - r * eta / 6.0 + r * r * a2 / 24.0);
  out.sigma_adv = r * (common + r * eta / 6.0 + r * r * a2 / 24.0);
  out.inv_rho_ret = (common - r * eta / 3.0 + r * r * a2 / 8.0) / r;
  out.inv_rho_adv = (common + r * eta / 3.0 + r * r * a2 / 8.0) / r;

  // g(tau) e^{iS} and its proper-time derivatives by five-point differences.
  struct Source {
    double S, lng;
  };
  auto source = [&](double t) {
    const double sp = w.parameter_at_proper_time(t);
    const EmissionPoint ep{sp, t, w.position(sp)};
    double lng = std::log(params.g);
    if (path.alpha) lng -= 0.5 * std::log(path.alpha(ep));
    return Source{path.phase(ep), lng};
  };
  const double d = 1e-3 / std::fmax(1.0, params.omega0);
  Source f[5];
  for (int j = 0; j < 5; ++j) f[j] = source(tau + (j - 2) * d);
  for (int j = 0; j < 5; ++j)
    if (j != 2) f[j].S = unwrap_near(f[j].S, f[2].S);
  auto d1 = [&](auto get) { return (get(f[0]) - 8.0 * get(f[1]) + 8.0 * get(f[3]) - get(f[4])) / (12.0 * d); };
  auto d2 = [&](auto get) {
    return (-get(f[0]) + 16.0 * get(f[1]) - 30.0 * get(f[2]) + 16.0 * get(f[3]) - get(f[4])) / (12.0 * d * d);
  };
  auto S_of = [](const Source& x) { return x.S; };
  auto lng_of = [](const Source& x) { return x.lng; };
  const double Sd = d1(S_of), Sdd = d2(S_of), Ld = d1(lng_of), Ldd = d2(lng_of);
  const Complex h = std::exp(Complex(f[2].lng, f[2].S));
  // h = exp(L + iS): hdot = h (L' + iS'), hddot = h [(L' + iS')^2 + L'' + iS''].
  const Complex w1(Ld, Sd);
  const Complex hd = h * w1;
  const Complex hdd = h * (w1 * w1 + Complex(Ldd, Sdd));

  const Complex u_ret = (h - out.sigma_ret * hd + 0.5 * out.sigma_ret * out.sigma_ret * hdd) * out.inv_rho_ret;
  const Complex u_adv = (h + out.sigma_adv * hd + 0.5 * out.sigma_adv * out.sigma_adv * hdd) * out.inv_rho_adv;
  out.u_expanded = (u_ret + u_adv) / (8.0 * kPi);

  // gdot/g = L', d2 ln g = L''.
  const Complex bracket = 1.0 + eps / 2.0 + 0.5 * r * r * (Complex(0.0, Sdd) - std::pow(Complex(Sd, -Ld), 2)) +
                          r * r * Ldd + 3.0 * eps * eps / 8.0 + 5.0 / 24.0 * r * r * a2;
  out.u_printed = h / (kFourPi * r) * bracket;
  return out;
}

FarFieldGuidance guidance_from_far_field(const SolitonParams& params, const Worldline& w, const PathData& path,
                                         double tau, const std::array<FourVector, 3>& stencil,
                                         const ExternalPotential& potential) {
  const double s = w.parameter_at_proper_time(tau);
  const Kinematics k = w.kinematics(s);
  const double r = std::sqrt(std::fmax(-minkowski_dot(stencil[0], stencil[0]), 0.0));
  if (!(r > 0.0)) throw GeometryError("guidance_from_far_field: degenerate stencil");
  const double tol = 1e-9 * r * r;
  for (int i = 0; i < 3; ++i) {
    if (std::fabs(minkowski_dot(stencil[i], k.velocity)) > 1e-9 * r)
      throw GeometryError("guidance_from_far_field: stencil leaves the rest hyperplane");
    if (std::fabs(minkowski_dot(stencil[i], stencil[i]) + r * r) > tol)
      throw GeometryError("guidance_from_far_field: stencil vectors of unequal length");
    for (int j = 0; j < i; ++j)
      if (std::fabs(minkowski_dot(stencil[i], stencil[j])) > tol)
        throw GeometryError("guidance_from_far_field: stencil vectors not orthogonal");
  }
  const double accel = std::sqrt(std::fmax(-minkowski_dot(k.acceleration, k.acceleration), 0.0));
  if (!(r * accel < 0.1)) throw ValidityError("guidance_from_far_field: r |zddot| is not small");

  auto u = [&](const FourVector& x) { return lienard_all(params, w, path, x, potential).sym_bare(); };
  const FourVector z = k.position;
  const FourVector eA = params.e * potential.value(z);
  // Directional derivatives of the phase, W(e) = e.(d phi + e A).
  double spatial2 = 0.0;
  double along = 0.0;
  FourVector W;
  for (int i = 0; i < 3; ++i) {
    const FourVector e = stencil[i] / r;
    const Complex up = u(z + stencil[i]), um = u(z - stencil[i]);
    const double Wi = std::arg(up * std::conj(um)) / (2.0 * r) + minkowski_dot(eA, e);
    spatial2 += Wi * Wi;
    W -= Wi * e;  // e.e = -1
    // Time-like derivative, averaged over the two offset lines to cancel O(r).
    for (const FourVector& c : {z + stencil[i], z - stencil[i]}) {
      const Complex fp = u(c + r * k.velocity), fm = u(c - r * k.velocity);
      along += std::arg(fp * std::conj(fm)) / (2.0 * r);
    }
  }
  along = along / 6.0 + minkowski_dot(eA, k.velocity);
  W += along * k.velocity;
  FarFieldGuidance out;
  out.angle = std::atan2(std::sqrt(spatial2), std::fabs(along));
  const double norm = std::sqrt(std::fabs(minkowski_dot(W, W)));
  out.direction = norm > 0.0 ? -W / norm : FourVector{};
  return out;
}

FarFieldGuidance guidance_from_far_field(const SolitonParams& params, const Worldline& w, const PathData& path,
                                         double tau, double r, const ExternalPotential& potential) {
  if (!(r > 0.0)) throw DomainError("guidance_from_far_field: r must be positive");
  const Kinematics k = w.kinematics(w.parameter_at_proper_time(tau));
  auto basis = hyperplane_basis(k.velocity);
  for (auto& e : basis) e *= r;
  return guidance_from_far_field(params, w, path, tau, basis, potential);
}

}  // namespace solitonlab
