#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace solitonlab {

/// dy/dt = f(t, y); the callback writes into dydt.
using OdeRhs = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

struct OdeOptions {
  double abs_tol = 1e-9;
  double rel_tol = 0.0;
  double initial_step = 0.0;  // 0: automatic
  double max_step = std::numeric_limits<double>::infinity();
  double min_step = 1e-13;    // relative to max(1, |t|)
  std::size_t max_steps = 2'000'000;
  double blowup = std::numeric_limits<double>::infinity();  // |y_i| above this -> DivergenceError
  bool record_steps = true;   // keep every accepted step (needed for dense output)
  std::vector<double> outputs;  // increasing; the integrator lands on each exactly
};

struct OdeSample {
  double t = 0.0;
  std::vector<double> y;
  std::vector<double> dydt;
};

struct OdeResult {
  std::vector<OdeSample> samples;  // t0, every accepted step and/or every output point
  std::size_t steps = 0;
  std::size_t rejected = 0;
  double max_local_error = 0.0;    // largest accepted absolute local error estimate

  const OdeSample& back() const { return samples.back(); }
  /// Cubic Hermite dense output between recorded samples.
  std::vector<double> eval(double t) const;
  /// Samples whose time equals one of `times` (exact landing makes this a lookup).
  std::vector<const OdeSample*> at(std::span<const double> times) const;
};

/// Dormand-Prince 5(4) with local extrapolation and FSAL. The error norm is the
/// max over components of |err_i| / (abs_tol + rel_tol |y_i|), so with rel_tol = 0
/// every accepted step has absolute local error <= abs_tol.
class DormandPrince {
 public:
  DormandPrince(OdeRhs rhs, OdeOptions options);

  /// Integrate from (t0, y0) to t1 > t0. On failure the partial result stays
  /// available through result().
  const OdeResult& integrate(double t0, double t1, std::vector<double> y0);
  const OdeResult& result() const { return result_; }

 private:
  double initial_step(double t0, std::span<const double> y0, std::span<const double> f0, double span) const;
  double error_norm(std::span<const double> err, std::span<const double> y0, std::span<const double> y1) const;

  OdeRhs rhs_;
  OdeOptions opt_;
  OdeResult result_;
};

}  // namespace solitonlab
