#include "solitonlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "solitonlab/errors.hpp"

#ifndef SOLITONLAB_VERSION
#define SOLITONLAB_VERSION "unknown"
#endif

namespace solitonlab {

std::string library_version() { return SOLITONLAB_VERSION; }

namespace {

Check& push(std::vector<Check>& v, Check c) {
  v.push_back(std::move(c));
  return v.back();
}

// NaN and infinities are not JSON; write them as strings.
nlohmann::json number(double x) {
  if (std::isfinite(x)) return x;
  return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

Check& RunReport::near(std::string name, double measured, double target, double tolerance, std::string note) {
  return push(checks, {std::move(name), measured, target, tolerance, "abs",
                       std::fabs(measured - target) <= tolerance, std::move(note)});
}

Check& RunReport::at_most(std::string name, double measured, double bound, std::string note) {
  return push(checks, {std::move(name), measured, bound, 0.0, "max", measured <= bound, std::move(note)});
}

Check& RunReport::at_least(std::string name, double measured, double bound, std::string note) {
  return push(checks, {std::move(name), measured, bound, 0.0, "min", measured >= bound, std::move(note)});
}

Check& RunReport::flag(std::string name, bool value, bool expected, std::string note) {
  return push(checks, {std::move(name), value ? 1.0 : 0.0, expected ? 1.0 : 0.0, 0.0, "flag", value == expected,
                       std::move(note)});
}

Check& RunReport::info(std::string name, double value, std::string note) {
  return push(checks, {std::move(name), value, 0.0, 0.0, "info", true, std::move(note)});
}

bool RunReport::passed() const { return failures() == 0; }

std::size_t RunReport::failures() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += !c.pass;
  return n;
}

nlohmann::json RunReport::to_json() const {
  nlohmann::json j;
  j["scenario"] = scenario;
  j["version"] = version;
  j["determinism"] = "no random inputs; outputs are independent of the worker count";
  j["passed"] = passed();
  auto& arr = j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json e{{"name", c.name},       {"measured", number(c.measured)}, {"target", number(c.target)},
                     {"tolerance", number(c.tolerance)}, {"relation", c.relation}, {"pass", c.pass}};
    if (!c.note.empty()) e["note"] = c.note;
    arr.push_back(e);
  }
  j["outputs"] = outputs;
  j["warnings"] = warnings;
  return j;
}

std::string RunReport::to_text() const {
  std::ostringstream os;
  os << "scenario " << scenario << " (solitonlab " << version << ")\n";
  for (const auto& c : checks) {
    os << (c.relation == "info" ? "  INFO  " : c.pass ? "  PASS  " : "  FAIL  ") << c.name << ": " << fmt(c.measured);
    if (c.relation == "abs") os << " vs " << fmt(c.target) << " +- " << fmt(c.tolerance);
    else if (c.relation == "max") os << " <= " << fmt(c.target);
    else if (c.relation == "min") os << " >= " << fmt(c.target);
    else if (c.relation == "flag") os << " expected " << fmt(c.target);
    if (!c.note.empty()) os << "  [" << c.note << "]";
    os << '\n';
  }
  for (const auto& w : warnings) os << "  warning: " << w << '\n';
  os << (passed() ? "all checks passed" : std::to_string(failures()) + " check(s) failed") << '\n';
  return os.str();
}

void RunReport::write(const std::filesystem::path& dir, const std::string& prefix) const {
  const auto json_path = dir / (prefix + "_report.json");
  const auto text_path = dir / (prefix + "_report.txt");
  std::ofstream js(json_path), tx(text_path);
  if (!js || !tx) throw IoError("cannot write report into '" + dir.string() + "'");
  js << to_json().dump(2) << '\n';
  tx << to_text();
}

}  // namespace solitonlab
