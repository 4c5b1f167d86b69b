#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "solitonlab/field_grid.hpp"
#include "solitonlab/kernels.hpp"
#include "solitonlab/many_body.hpp"
#include "solitonlab/params.hpp"
#include "solitonlab/radial.hpp"

namespace solitonlab {

inline constexpr int kSchemaVersion = 1;

enum class ScenarioKind { uniform, hyperbolic, cavity, two_body, diamond, radial, derrick, energy };

std::string to_string(ScenarioKind k);
ScenarioKind parse_scenario_kind(const std::string& s);

enum class GridFormat { csv, bin };

std::string to_string(GridFormat f);
GridFormat parse_grid_format(const std::string& s);

/// Source worldline for the uniform and hyperbolic scenarios.
struct MotionSpec {
  double v_x = 0.0;            // uniform
  double x0 = 1.0, v0 = 0.5;   // hyperbolic: x(t) = -sqrt(x0^2 + v0^2 t^2)
  bool sampled = false;        // evaluate on a sampled copy of the analytic worldline
  double sample_step = 0.05;   // coordinate-time spacing of the samples
};

/// Line along axis1 of the grid plane at axis2 = axis2_value.
struct CrosscutSpec {
  double axis2_value = 0.0;
  std::size_t n = 401;
};

struct RadialSpec {
  RadialProblem problem{.A = 0.1, .r_max = 100.0};
  std::pair<double, double> fit_window{50.0, 100.0};
};

struct EnergySpec {
  std::vector<double> radii{20, 30, 50, 80, 120, 200};
};

struct DerrickSpec {
  double p = 2.0;
  std::vector<double> alphas{0.5, 0.8, 1.25, 2.0};
};

struct CavitySpec {
  double omega = 1.3;
  double R_cav = 10.0;
  std::size_t samples = 201;
};

struct DiamondSpec {
  double T_life = 1e4;
  std::vector<double> times;  // evaluation times inside the lifetime; empty means T/2
};

struct TwoBodySpec {
  enum class Model { product, superposition, symmetrized };
  struct Term {
    Complex weight = 1.0;
    std::array<double, 2> v{0.0, 0.0};  // plane-wave velocities along x for particles 1 and 2
  };
  Model model = Model::product;
  std::vector<Term> terms;
  Configuration initial;
  double lambda_end = 5.0;
  Foliation foliation;
  std::size_t samples = 201;
};

struct OutputSpec {
  std::filesystem::path dir = ".";
  GridFormat format = GridFormat::csv;
  std::string prefix;  // defaults to the scenario name
};

/// Validated scenario description. Only the section matching `scenario` is
/// meaningful; the others keep their defaults.
struct ScenarioConfig {
  int schema_version = kSchemaVersion;
  ScenarioKind scenario = ScenarioKind::uniform;
  SolitonParams params{.g = 4.0 * kPi, .r0 = 1.0, .omega0 = 1.0, .e = 0.0};
  ExternalPotential potential;
  MotionSpec motion;
  std::optional<SliceSpec> grid;
  std::optional<CrosscutSpec> crosscut;
  std::vector<FieldKind> kinds{FieldKind::sym};
  double tolerance = 1e-9;
  unsigned threads = 1;
  OutputSpec output;

  RadialSpec radial;
  EnergySpec energy;
  DerrickSpec derrick;
  CavitySpec cavity;
  DiamondSpec diamond;
  TwoBodySpec two_body;

  std::string prefix() const;
};

/// Parse and schema-check a JSON config. Throws ConfigError with line/column for
/// malformed JSON, naming the offending key for schema or regime violations.
ScenarioConfig validate_config(std::string_view text);
ScenarioConfig load_config(const std::filesystem::path& path);

}  // namespace solitonlab
