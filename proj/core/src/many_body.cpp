#include "solitonlab/many_body.hpp"

#include <cmath>
#include <sstream>

#include "solitonlab/errors.hpp"
#include "solitonlab/ode.hpp"

namespace solitonlab {

ManyPsiModel ManyPsiModel::product(std::vector<PsiModel> factors) {
  return superposition({{Complex(1.0, 0.0), std::move(factors)}});
}

ManyPsiModel ManyPsiModel::superposition(std::vector<Term> terms) {
  if (terms.empty()) throw DomainError("many-body model: no terms");
  ManyPsiModel m;
  m.n_ = terms.front().factors.size();
  if (m.n_ == 0) throw DomainError("many-body model: no particles");
  m.scale_ = 0.0;
  for (const auto& t : terms) {
    if (t.factors.size() != m.n_) throw DomainError("many-body model: terms with different particle counts");
    double s = std::abs(t.weight);
    for (std::size_t i = 0; i < m.n_; ++i) {
      const auto& a = t.factors[i].params();
      const auto& b = terms.front().factors[i].params();
      if (a.omega0 != b.omega0 || a.e != b.e || a.g != b.g || a.r0 != b.r0)
        throw DomainError("many-body model: particle parameters differ between terms");
      if (t.factors[i].potential().value() != terms.front().factors[i].potential().value())
        throw DomainError("many-body model: particle potential differs between terms");
      s *= t.factors[i].amplitude_scale();
    }
    m.scale_ += s;
  }
  m.terms_ = std::move(terms);
  return m;
}

ManyPsiModel ManyPsiModel::symmetrized_pair(const PsiModel& a, const PsiModel& b, Complex weight) {
  return superposition({{weight, {a, b}}, {weight, {b, a}}});
}

void ManyPsiModel::check(const Configuration& X) const {
  if (X.size() != n_) throw DomainError("many-body model: configuration has the wrong particle count");
}

Complex ManyPsiModel::value(const Configuration& X) const {
  check(X);
  Complex sum;
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    Complex p = terms_[t].weight;
    for (std::size_t i = 0; i < n_; ++i) p *= terms_[t].factors[i].value(X[i]);
    sum = t == 0 ? p : sum + p;
  }
  return sum;
}

PsiDerivatives ManyPsiModel::derivatives(const Configuration& X, std::size_t i) const {
  check(X);
  if (i >= n_) throw RangeError("many-body model: particle index out of range");
  PsiDerivatives d;
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    Complex others = terms_[t].weight;
    for (std::size_t j = 0; j < n_; ++j)
      if (j != i) others *= terms_[t].factors[j].value(X[j]);
    const PsiDerivatives di = terms_[t].factors[i].derivatives(X[i]);
    PsiDerivatives c;
    c.value = others * di.value;
    for (int mu = 0; mu < 4; ++mu) c.grad[mu] = others * di.grad[mu];
    c.box = others * di.box;
    if (t == 0) {
      d = c;
    } else {
      d.value += c.value;
      for (int mu = 0; mu < 4; ++mu) d.grad[mu] += c.grad[mu];
      d.box += c.box;
    }
  }
  return d;
}

HydroFields ManyPsiModel::hydro(const Configuration& X, std::size_t i) const {
  const auto& p = params(i);
  return hydro_from_derivatives(derivatives(X, i), p.omega0, p.e, potential(i).value(X[i]), scale_);
}

Foliation Foliation::boosted(double v) {
  if (!(std::fabs(v) < 1.0)) throw DomainError("foliation: superluminal velocity");
  return {Kind::boosted, v};
}

FourVector Foliation::normal() const {
  if (kind == Kind::lab) return {1.0, 0.0, 0.0, 0.0};
  return four_velocity(v);
}

Trajectory ManyBodyPath::trajectory(std::size_t i) const {
  std::vector<TrajectorySample> s;
  for (std::size_t k = 0; k < lambda.size(); ++k) s.push_back({tau[i][k], z[i][k]});
  return Trajectory(std::move(s), Parameterization::proper_time);
}

std::shared_ptr<SampledWorldline> ManyBodyPath::worldline(std::size_t i) const {
  return std::make_shared<SampledWorldline>(lambda, z[i], dz[i], tau[i], dtau[i]);
}

ManyBodyPath integrate_many_guidance(const ManyPsiModel& model, const Foliation& fol, const Configuration& Z0,
                                     double lambda1, const ManyGuidanceOptions& options) {
  const std::size_t N = model.size();
  if (Z0.size() != N) throw DomainError("integrate_many_guidance: wrong number of initial positions");
  if (options.samples < 2) throw DomainError("integrate_many_guidance: need at least two samples");
  const FourVector n = fol.normal();
  const double lambda0 = fol.leaf(Z0[0]);
  for (const auto& z : Z0) {
    if (std::fabs(fol.leaf(z) - lambda0) > 1e-9 * std::fmax(1.0, std::fabs(lambda0))) {
      std::ostringstream os;
      os << "initial positions are not on a common leaf (" << fol.leaf(z) << " vs " << lambda0 << ")";
      throw GeometryError(os.str());
    }
  }
  if (!(lambda1 > lambda0)) throw DomainError("integrate_many_guidance: empty leaf span");

  OdeOptions opt;
  opt.abs_tol = options.tol;
  opt.record_steps = false;
  const std::size_t ns = options.samples;
  for (std::size_t j = 1; j < ns; ++j)
    opt.outputs.push_back(j + 1 == ns ? lambda1
                                      : lambda0 + (lambda1 - lambda0) * static_cast<double>(j) /
                                                      static_cast<double>(ns - 1));
  auto rhs = [&](double, std::span<const double> y, std::span<double> dy) {
    Configuration X(N);
    for (std::size_t i = 0; i < N; ++i) X[i] = {y[4 * i], y[4 * i + 1], y[4 * i + 2], y[4 * i + 3]};
    for (std::size_t i = 0; i < N; ++i) {
      const FourVector v = model.hydro(X, i).velocity;
      const double nv = minkowski_dot(n, v);
      if (!(nv > 1e-12)) throw GeometryError("velocity tangent to the foliation leaf");
      for (int mu = 0; mu < 4; ++mu) dy[4 * i + mu] = v[mu] / nv;
      dy[4 * N + i] = 1.0 / nv;
    }
  };
  std::vector<double> y0(5 * N, 0.0);
  for (std::size_t i = 0; i < N; ++i)
    for (int mu = 0; mu < 4; ++mu) y0[4 * i + mu] = Z0[i][mu];
  DormandPrince dp(rhs, opt);
  try {
    dp.integrate(lambda0, lambda1, y0);
  } catch (const NodeError& e) {
    throw DynamicsError(std::string("joint guidance stopped: ") + e.what(), {});
  } catch (const TachyonError& e) {
    throw DynamicsError(std::string("joint guidance stopped: ") + e.what(), {});
  }

  ManyBodyPath out;
  out.foliation = fol;
  out.z.resize(N);
  out.dz.resize(N);
  out.tau.resize(N);
  out.dtau.resize(N);
  for (const auto& s : dp.result().samples) {
    out.lambda.push_back(s.t);
    for (std::size_t i = 0; i < N; ++i) {
      out.z[i].push_back({s.y[4 * i], s.y[4 * i + 1], s.y[4 * i + 2], s.y[4 * i + 3]});
      out.dz[i].push_back({s.dydt[4 * i], s.dydt[4 * i + 1], s.dydt[4 * i + 2], s.dydt[4 * i + 3]});
      out.tau[i].push_back(s.y[4 * N + i]);
      out.dtau[i].push_back(s.dydt[4 * N + i]);
    }
  }
  return out;
}

Complex ManyBodyField::get(FieldKind k, bool regularized) const {
  switch (k) {
    case FieldKind::ret: return regularized ? ret : ret_bare;
    case FieldKind::adv: return regularized ? adv : adv_bare;
    case FieldKind::sym: return regularized ? sym() : 0.5 * (ret_bare + adv_bare);
  }
  return {};
}

ManyBodyEvaluator::ManyBodyEvaluator(const ManyPsiModel& model, const ManyBodyPath& path)
    : model_(model), path_(path) {
  const std::size_t N = model.size();
  if (path.particles() != N) throw DomainError("ManyBodyEvaluator: path and model disagree on particle count");
  if (path.lambda.size() < 2) throw InsufficientDataError("ManyBodyEvaluator: path has fewer than two leaves");
  Configuration Z0(N);
  for (std::size_t i = 0; i < N; ++i) {
    worldlines_.push_back(path.worldline(i));
    Z0[i] = path.z[i].front();
  }
  for (std::size_t i = 0; i < N; ++i) M0_.push_back(model.hydro(Z0, i).mass);
  for (std::size_t i = 0; i < N; ++i) {
    PathData p;
    p.phase = [this](const EmissionPoint& e) { return std::arg(model_.value(configuration(e.s))); };
    p.alpha = [this, i](const EmissionPoint& e) { return alpha(i, e.s); };
    paths_.push_back(std::move(p));
  }
}

Configuration ManyBodyEvaluator::configuration(double lambda) const {
  Configuration X(worldlines_.size());
  for (std::size_t j = 0; j < X.size(); ++j) {
    X[j] = worldlines_[j]->position(lambda);
    if (std::fabs(path_.foliation.leaf(X[j]) - lambda) > 1e-8 * std::fmax(1.0, std::fabs(lambda)))
      throw GeometryError("partner position is not on the emission leaf");
  }
  return X;
}

double ManyBodyEvaluator::mass(std::size_t i, double lambda) const { return model_.hydro(configuration(lambda), i).mass; }

double ManyBodyEvaluator::alpha(std::size_t i, double lambda) const { return std::sqrt(mass(i, lambda) / M0_[i]); }

ManyBodyField ManyBodyEvaluator::field(const FourVector& x) const {
  ManyBodyField f;
  for (std::size_t i = 0; i < worldlines_.size(); ++i) {
    f.parts.push_back(lienard_all(model_.params(i), *worldlines_[i], paths_[i], x, model_.potential(i)));
    const auto& p = f.parts.back();
    if (i == 0) {
      f.ret = p.ret;
      f.adv = p.adv;
      f.ret_bare = p.ret_bare;
      f.adv_bare = p.adv_bare;
    } else {
      f.ret += p.ret;
      f.adv += p.adv;
      f.ret_bare += p.ret_bare;
      f.adv_bare += p.adv_bare;
    }
  }
  return f;
}

Complex ManyBodyEvaluator::near_field(std::size_t i, double lambda, const FourVector& xi) const {
  if (i >= worldlines_.size()) throw RangeError("near_field: particle index out of range");
  const auto& w = *worldlines_[i];
  if (lambda < w.parameter_min() || lambda > w.parameter_max()) throw RangeError("near_field: leaf outside the path");
  const FourVector u = w.velocity(lambda);
  if (std::fabs(minkowski_dot(xi, u)) > 1e-9 * std::fmax(1.0, max_abs(xi)))
    throw GeometryError("near_field: offset is not in the rest hyperplane of the particle");
  const double xi2 = minkowski_dot(xi, xi);
  const double r = std::sqrt(std::fmax(-xi2, 0.0));
  const auto& params = model_.params(i);
  const Configuration X = configuration(lambda);
  const double M = model_.hydro(X, i).mass;

  const double lo = w.parameter_min(), hi = w.parameter_max();
  const double d = 1e-3 * std::fmin(model_.terms().front().factors[i].length_scale(), 0.25 * (hi - lo));
  auto Mat = [&](double l) { return mass(i, l); };
  double dM;
  if (lambda - 2 * d >= lo && lambda + 2 * d <= hi)
    dM = (-Mat(lambda + 2 * d) + 8 * Mat(lambda + d) - 8 * Mat(lambda - d) + Mat(lambda - 2 * d)) / (12 * d);
  else if (lambda - 2 * d < lo)
    dM = (-3 * M + 4 * Mat(lambda + d) - Mat(lambda + 2 * d)) / (2 * d);
  else
    dM = (3 * M - 4 * Mat(lambda - d) + Mat(lambda - 2 * d)) / (2 * d);
  const FourVector tangent = w.tangent(lambda);
  const double dtau = std::sqrt(minkowski_dot(tangent, tangent));
  const double B = 0.5 * dM / dtau;

  const double phi = std::arg(model_.value(X)) - params.e * minkowski_dot(model_.potential(i).value(X[i]), xi) +
                     0.5 * B * xi2;
  return near_field_amplitude(params, std::sqrt(M / M0_[i]), r) * std::exp(Complex(0.0, phi));
}

}  // namespace solitonlab
