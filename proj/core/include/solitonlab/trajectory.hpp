#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "solitonlab/four_vector.hpp"

namespace solitonlab {

enum class Parameterization { proper_time, coordinate_time };

std::string to_string(Parameterization p);

struct TrajectorySample {
  double lambda = 0.0;
  FourVector z;
};

/// Sampled worldline. Construction validates: at least two samples, strictly
/// increasing lambda, timelike chords (CausalityError otherwise) and, for
/// proper-time data, chords of unit Minkowski length per unit lambda.
class Trajectory {
 public:
  Trajectory(std::vector<TrajectorySample> samples, Parameterization p);

  const std::vector<TrajectorySample>& samples() const { return samples_; }
  Parameterization parameterization() const { return param_; }
  std::size_t size() const { return samples_.size(); }
  double lambda_min() const { return samples_.front().lambda; }
  double lambda_max() const { return samples_.back().lambda; }
  std::vector<double> lambdas() const;
  std::vector<FourVector> positions() const;

 private:
  std::vector<TrajectorySample> samples_;
  Parameterization param_;
};

/// CSV with header `lambda,t,x,y,z`. The parameterization is declared by the caller.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
void write_trajectory_csv(const std::string& path, const Trajectory& traj);
Trajectory read_trajectory_csv(std::istream& is, Parameterization p);
Trajectory read_trajectory_csv(const std::string& path, Parameterization p);

}  // namespace solitonlab
