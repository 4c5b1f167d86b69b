#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

#include "solitonlab/kernels.hpp"
#include "solitonlab/pilot_wave.hpp"
#include "solitonlab/worldline.hpp"

namespace solitonlab {

using Configuration = std::vector<FourVector>;

/// Psi_N(x_1..x_N) = sum_t w_t prod_i psi_{t,i}(x_i). Particle i takes its
/// parameters and external potential from the factor models in slot i.
class ManyPsiModel {
 public:
  struct Term {
    Complex weight;
    std::vector<PsiModel> factors;
  };

  static ManyPsiModel product(std::vector<PsiModel> factors);
  static ManyPsiModel superposition(std::vector<Term> terms);
  /// w [psi_a(x1) psi_b(x2) + psi_b(x1) psi_a(x2)].
  static ManyPsiModel symmetrized_pair(const PsiModel& a, const PsiModel& b, Complex weight = 1.0);

  std::size_t size() const { return n_; }
  bool is_product() const { return terms_.size() == 1; }
  const std::vector<Term>& terms() const { return terms_; }
  const SolitonParams& params(std::size_t i) const { return terms_.front().factors[i].params(); }
  const ExternalPotential& potential(std::size_t i) const { return terms_.front().factors[i].potential(); }
  double amplitude_scale() const { return scale_; }

  Complex value(const Configuration& X) const;
  /// Psi_N and its derivatives with respect to the coordinates of particle i.
  PsiDerivatives derivatives(const Configuration& X, std::size_t i) const;
  HydroFields hydro(const Configuration& X, std::size_t i) const;

 private:
  ManyPsiModel() = default;
  void check(const Configuration& X) const;
  std::vector<Term> terms_;
  std::size_t n_ = 0;
  double scale_ = 1.0;
};

/// Synchronization leaves n.x = lambda.
struct Foliation {
  enum class Kind { lab, boosted };
  Kind kind = Kind::lab;
  double v = 0.0;  // boost velocity along x

  static Foliation lab() { return {}; }
  static Foliation boosted(double v);
  FourVector normal() const;
  double leaf(const FourVector& x) const { return minkowski_dot(normal(), x); }
};

struct ManyGuidanceOptions {
  double tol = 1e-10;
  std::size_t samples = 201;  // uniform in lambda, endpoints included
};

/// Joint solution sampled on common leaves.
struct ManyBodyPath {
  Foliation foliation;
  std::vector<double> lambda;
  std::vector<std::vector<FourVector>> z;    // [particle][sample]
  std::vector<std::vector<FourVector>> dz;   // dz/dlambda
  std::vector<std::vector<double>> tau;      // proper time of each particle, 0 at the first leaf
  std::vector<std::vector<double>> dtau;     // dtau/dlambda

  std::size_t particles() const { return z.size(); }
  /// Proper-time parameterized trajectory of particle i.
  Trajectory trajectory(std::size_t i) const;
  /// Worldline of particle i over the leaf parameter.
  std::shared_ptr<SampledWorldline> worldline(std::size_t i) const;
};

/// dz_i/dlambda = v_i / (n.v_i), dtau_i/dlambda = 1 / (n.v_i) from the leaf of Z0
/// to lambda1. GeometryError unless Z0 lies on one leaf; DynamicsError (with an
/// empty partial path) at nodes or tachyonic configurations.
ManyBodyPath integrate_many_guidance(const ManyPsiModel& model, const Foliation& fol, const Configuration& Z0,
                                     double lambda1, const ManyGuidanceOptions& options = {});

/// Sum of per-particle Lienard fields, each emitted with the joint phase S_N and
/// alpha_i evaluated on the emission leaf.
struct ManyBodyField {
  std::vector<LienardValue> parts;
  Complex ret, adv;
  Complex ret_bare, adv_bare;
  Complex sym() const { return 0.5 * (ret + adv); }
  Complex get(FieldKind k, bool regularized = true) const;
};

class ManyBodyEvaluator {
 public:
  /// Keeps references to both arguments.
  ManyBodyEvaluator(const ManyPsiModel& model, const ManyBodyPath& path);
  ManyBodyEvaluator(const ManyBodyEvaluator&) = delete;
  ManyBodyEvaluator& operator=(const ManyBodyEvaluator&) = delete;

  ManyBodyField field(const FourVector& x) const;
  /// Near field of particle i at leaf lambda: F(r) exp(i[S_N - eA.xi + B_i xi^2 / 2]).
  Complex near_field(std::size_t i, double lambda, const FourVector& xi) const;

  /// Partner configuration read from the common leaf.
  Configuration configuration(double lambda) const;
  double alpha(std::size_t i, double lambda) const;
  double mass(std::size_t i, double lambda) const;
  double initial_mass(std::size_t i) const { return M0_[i]; }
  const PathData& path_data(std::size_t i) const { return paths_[i]; }
  const Worldline& worldline(std::size_t i) const { return *worldlines_[i]; }

 private:
  const ManyPsiModel& model_;
  const ManyBodyPath& path_;
  std::vector<std::shared_ptr<SampledWorldline>> worldlines_;
  std::vector<double> M0_;
  std::vector<PathData> paths_;
};

}  // namespace solitonlab
