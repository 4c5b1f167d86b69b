#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

namespace solitonlab {

/// Fornberg's recursion: weights w[m][j] such that f^(m)(x0) ~ sum_j w[m][j] f(nodes[j]),
/// for m = 0..max_order. Nodes may be arbitrarily spaced.
std::vector<std::vector<double>> fornberg_weights(double x0, std::span<const double> nodes, int max_order);

/// Indices [first, first + width) of the stencil of `width` consecutive nodes centred
/// as well as possible on node i.
inline std::size_t stencil_start(std::size_t i, std::size_t n, std::size_t width) {
  width = std::min(width, n);
  const std::size_t half = width / 2;
  std::size_t first = i > half ? i - half : 0;
  if (first + width > n) first = n - width;
  return first;
}

/// First derivative at every node by a `width`-point finite-difference stencil.
/// Works for any type with + and scalar *.
template <typename T>
std::vector<T> nodal_derivatives(std::span<const double> s, std::span<const T> values, std::size_t width = 5) {
  const std::size_t n = s.size();
  std::vector<T> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t first = stencil_start(i, n, width);
    const std::size_t w = std::min(width, n);
    const auto weights = fornberg_weights(s[i], s.subspan(first, w), 1);
    T acc = values[first] * weights[1][0];
    for (std::size_t j = 1; j < w; ++j) acc += values[first + j] * weights[1][j];
    out[i] = acc;
  }
  return out;
}

/// Cubic Hermite interpolation on [s0, s1] from end values and end slopes.
template <typename T>
struct HermiteValue {
  T value;
  T slope;
};

template <typename T>
HermiteValue<T> hermite_cubic(double s0, double s1, const T& y0, const T& y1, const T& d0, const T& d1, double s) {
  const double h = s1 - s0;
  const double u = (s - s0) / h;
  const double u2 = u * u, u3 = u2 * u;
  const double h00 = 2 * u3 - 3 * u2 + 1;
  const double h10 = u3 - 2 * u2 + u;
  const double h01 = -2 * u3 + 3 * u2;
  const double h11 = u3 - u2;
  const double dh00 = (6 * u2 - 6 * u) / h;
  const double dh10 = 3 * u2 - 4 * u + 1;
  const double dh01 = (-6 * u2 + 6 * u) / h;
  const double dh11 = 3 * u2 - 2 * u;
  HermiteValue<T> r{y0 * h00, y0 * dh00};
  r.value += d0 * (h10 * h);
  r.value += y1 * h01;
  r.value += d1 * (h11 * h);
  r.slope += d0 * dh10;
  r.slope += y1 * dh01;
  r.slope += d1 * dh11;
  return r;
}

/// Index k of the interval [s[k], s[k+1]] containing x (clamped to the ends).
inline std::size_t locate_interval(std::span<const double> s, double x) {
  if (x <= s.front()) return 0;
  if (x >= s.back()) return s.size() - 2;
  const auto it = std::upper_bound(s.begin(), s.end(), x);
  return static_cast<std::size_t>(it - s.begin()) - 1;
}

}  // namespace solitonlab
