#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace solitonlab {

std::string library_version();

/// One verified quantity. `relation` is one of "abs" (|measured - target| <= tolerance),
/// "max" (measured <= target), "min" (measured >= target), "flag" (measured == target)
/// or "info" (recorded only, always passes).
struct Check {
  std::string name;
  double measured = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  std::string relation = "abs";
  bool pass = false;
  std::string note;
};

/// Machine-readable outcome of a scenario. Carries nothing run-dependent (no
/// thread count, timing or host), so reruns compare byte for byte.
struct RunReport {
  std::string scenario;
  std::string version = library_version();
  std::vector<Check> checks;
  std::vector<std::string> outputs;  // file names relative to the output directory
  std::vector<std::string> warnings;

  Check& near(std::string name, double measured, double target, double tolerance, std::string note = {});
  Check& at_most(std::string name, double measured, double bound, std::string note = {});
  Check& at_least(std::string name, double measured, double bound, std::string note = {});
  Check& flag(std::string name, bool value, bool expected = true, std::string note = {});
  Check& info(std::string name, double value, std::string note = {});

  bool passed() const;
  std::size_t failures() const;

  nlohmann::json to_json() const;
  std::string to_text() const;
  void write(const std::filesystem::path& dir, const std::string& prefix) const;
};

}  // namespace solitonlab
