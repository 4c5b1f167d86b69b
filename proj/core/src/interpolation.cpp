#include "solitonlab/interpolation.hpp"

#include "solitonlab/errors.hpp"

namespace solitonlab {

std::vector<std::vector<double>> fornberg_weights(double x0, std::span<const double> nodes, int max_order) {
  const std::size_t n = nodes.size();
  if (n == 0 || max_order < 0) throw DomainError("fornberg_weights: empty stencil");
  const std::size_t m = static_cast<std::size_t>(max_order);
  std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
  c[0][0] = 1.0;
  double c1 = 1.0, c4 = nodes[0] - x0;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      if (c3 == 0.0) throw DomainError("fornberg_weights: repeated node");
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<std::vector<double>> w(m + 1, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k <= m; ++k) w[k][i] = c[i][k];
  return w;
}

}  // namespace solitonlab
