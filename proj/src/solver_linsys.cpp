#include "equinorm/solver/linsys.hpp"

#include <cmath>

#include "equinorm/errors.hpp"

namespace equinorm::solver {

std::optional<std::vector<double>> solve_square_system(std::vector<std::vector<double>> m,
                                                       std::vector<double> v) {
  const std::size_t n = v.size();
  if (m.size() != n) throw ValidationError("solve_square_system: matrix/vector size mismatch");
  for (const auto& row : m)
    if (row.size() != n) throw ValidationError("solve_square_system: matrix not square");

  double scale = 0.0;
  for (const auto& row : m)
    for (double x : row) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return std::nullopt;
  const std::vector<std::vector<double>> m0 = m;
  const std::vector<double> v0 = v;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    if (std::abs(m[piv][col]) < 1e-11 * scale) return std::nullopt;
    std::swap(m[piv], m[col]);
    std::swap(v[piv], v[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = m[r][col] / m[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      v[r] -= f * v[col];
    }
  }
  std::vector<double> z(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double acc = v[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= m[i][c] * z[c];
    z[i] = acc / m[i][i];
  }

  double vnorm = 0.0, rnorm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = -v0[i];
    for (std::size_t c = 0; c < n; ++c) r += m0[i][c] * z[c];
    rnorm = std::max(rnorm, std::abs(r));
    vnorm = std::max(vnorm, std::abs(v0[i]));
  }
  if (rnorm > 1e-8 * (1.0 + vnorm)) return std::nullopt;
  return z;
}

}  // namespace equinorm::solver
