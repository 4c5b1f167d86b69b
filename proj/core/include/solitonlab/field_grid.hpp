#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "solitonlab/four_vector.hpp"
#include "solitonlab/kernels.hpp"

namespace solitonlab {

/// A rectangular 2-D slice of spacetime: two varying coordinates (0=t, 1=x, 2=y,
/// 3=z), the rest fixed by `base`.
struct SliceSpec {
  int axis1 = 1, axis2 = 2;
  double min1 = -1.0, max1 = 1.0, min2 = -1.0, max2 = 1.0;
  std::size_t n1 = 64, n2 = 64;
  FourVector base;

  void validate() const;
  double coord1(std::size_t i) const;
  double coord2(std::size_t j) const;
  FourVector point(std::size_t i, std::size_t j) const;
  /// e.g. "x-y" or "x-t".
  std::string plane_name() const;
};

/// "x-y", "t-x", ... to an axis pair.
std::array<int, 2> parse_plane(const std::string& plane);

/// Complex samples, row-major with axis2 as the row index: value(i, j) = values[j * n1 + i].
struct FieldGrid {
  SliceSpec slice;
  FieldKind kind = FieldKind::sym;
  std::vector<Complex> values;
  std::size_t failures = 0;  // points whose evaluation threw; stored as NaN
  std::map<std::string, std::string> metadata;

  Complex& at(std::size_t i, std::size_t j) { return values[j * slice.n1 + i]; }
  const Complex& at(std::size_t i, std::size_t j) const { return values[j * slice.n1 + i]; }
};

/// Retarded and advanced values at one point.
using PairEvaluator = std::function<std::array<Complex, 2>(const FourVector&)>;

struct GridSet {
  FieldGrid ret, adv, sym;
  const FieldGrid& get(FieldKind k) const;
};

/// Evaluates every point on `threads` workers (0 = hardware concurrency). The
/// symmetric grid is the elementwise average of the other two. Results do not
/// depend on the worker count.
GridSet fill_grids(const SliceSpec& slice, const PairEvaluator& eval, unsigned threads = 1);

void write_grid_csv(const FieldGrid& g, std::ostream& os);
void write_grid_csv(const FieldGrid& g, const std::filesystem::path& path);

/// 64-byte space-padded ASCII header "SLGRID <n1> <n2> <min1> <max1> <min2> <max2>\n"
/// followed by n1*n2 (re, im) pairs of little-endian float64, row-major.
void write_grid_binary(const FieldGrid& g, std::ostream& os);
void write_grid_binary(const FieldGrid& g, const std::filesystem::path& path);

/// Reads the binary layout back; extents come from the header (6 significant digits).
FieldGrid read_grid_binary(std::istream& is);
FieldGrid read_grid_binary(const std::filesystem::path& path);

}  // namespace solitonlab
