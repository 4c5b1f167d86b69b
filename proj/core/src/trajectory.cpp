#include "solitonlab/trajectory.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "solitonlab/errors.hpp"

namespace solitonlab {

std::string to_string(Parameterization p) {
  return p == Parameterization::proper_time ? "proper-time" : "coordinate-time";
}

Trajectory::Trajectory(std::vector<TrajectorySample> samples, Parameterization p)
    : samples_(std::move(samples)), param_(p) {
  if (samples_.size() < 2) throw InsufficientDataError("Trajectory: need at least two samples");
  for (std::size_t k = 0; k + 1 < samples_.size(); ++k) {
    const auto& a = samples_[k];
    const auto& b = samples_[k + 1];
    const double dl = b.lambda - a.lambda;
    if (!(dl > 0.0)) {
      std::ostringstream os;
      os << "Trajectory: lambda not strictly increasing at sample " << k + 1;
      throw DomainError(os.str());
    }
    const FourVector dz = b.z - a.z;
    const double chord2 = minkowski_dot(dz, dz);
    if (!(chord2 > 0.0) || !(dz.t > 0.0)) {
      std::ostringstream os;
      os << "Trajectory: segment " << k << " is not future timelike ((dz)^2 = " << chord2 << ")";
      throw CausalityError(os.str());
    }
    if (p == Parameterization::proper_time) {
      // A timelike chord is never shorter than the arc's proper time (reverse triangle
      // inequality); acceleration lengthens it only at second order in the step.
      const double ratio = std::sqrt(chord2) / dl;
      if (ratio < 1.0 - 1e-6 || ratio > 1.05) {
        std::ostringstream os;
        os << "Trajectory: samples are not proper-time parameterized near lambda=" << a.lambda
           << " (chord/dlambda = " << ratio << ")";
        throw DomainError(os.str());
      }
    }
  }
}

std::vector<double> Trajectory::lambdas() const {
  std::vector<double> out;
  out.reserve(samples_.size());
  for (const auto& s : samples_) out.push_back(s.lambda);
  return out;
}

std::vector<FourVector> Trajectory::positions() const {
  std::vector<FourVector> out;
  out.reserve(samples_.size());
  for (const auto& s : samples_) out.push_back(s.z);
  return out;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << "lambda,t,x,y,z\n" << std::setprecision(17);
  for (const auto& s : traj.samples())
    os << s.lambda << ',' << s.z.t << ',' << s.z.x << ',' << s.z.y << ',' << s.z.z << '\n';
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write_trajectory_csv(out, traj);
  if (!out) throw IoError("write failed: " + path);
}

Trajectory read_trajectory_csv(std::istream& is, Parameterization p) {
  std::string line;
  if (!std::getline(is, line)) throw IoError("trajectory CSV: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "lambda,t,x,y,z") throw IoError("trajectory CSV: expected header 'lambda,t,x,y,z', got '" + line + "'");
  std::vector<TrajectorySample> samples;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    std::istringstream ls(line);
    double v[5];
    char comma = 0;
    bool ok = static_cast<bool>(ls >> v[0]);
    for (int i = 1; i < 5 && ok; ++i) ok = (ls >> comma) && comma == ',' && (ls >> v[i]);
    if (!ok) throw IoError("trajectory CSV: malformed row at line " + std::to_string(lineno));
    samples.push_back({v[0], {v[1], v[2], v[3], v[4]}});
  }
  return Trajectory(std::move(samples), p);
}

Trajectory read_trajectory_csv(const std::string& path, Parameterization p) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return read_trajectory_csv(in, p);
}

}  // namespace solitonlab
