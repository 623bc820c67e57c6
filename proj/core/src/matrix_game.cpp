#include "dynkin/matrix_game.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

namespace dynkin {
namespace {

using Row = std::array<double, 3>;

// Solves the 3x3 system a * p = b with partial pivoting.
std::optional<Row> solve3(std::array<Row, 3> a, Row b) {
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    if (std::abs(a[piv][col]) < 1e-13) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (int r = col + 1; r < 3; ++r) {
      const double f = a[r][col] / a[col][col];
      for (int k = col; k < 3; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  Row x{};
  for (int r = 2; r >= 0; --r) {
    double s = b[r];
    for (int k = r + 1; k < 3; ++k) s -= a[r][k] * x[k];
    x[r] = s / a[r][r];
  }
  return x;
}

}  // namespace

double guarantee(const StageMatrix& m, const std::array<double, 3>& mix) {
  double best = 0.0;
  for (int j = 0; j < 4; ++j) {
    const double v = mix[0] * m[0][j] + mix[1] * m[1][j] + mix[2] * m[2][j];
    best = (j == 0) ? v : std::min(best, v);
  }
  return best;
}

MaxminSolution solve_maxmin(const StageMatrix& m, double tie_eps) {
  // Constraint normals: p_k = 0 for each row, and equal payoff against a
  // pair of columns. Row scale is normalised so the singularity test is
  // meaningful independently of payoff magnitude.
  std::vector<Row> normals;
  for (int k = 0; k < 3; ++k) {
    Row e{};
    e[k] = 1.0;
    normals.push_back(e);
  }
  for (int j = 0; j < 4; ++j) {
    for (int l = j + 1; l < 4; ++l) {
      Row d{m[0][j] - m[0][l], m[1][j] - m[1][l], m[2][j] - m[2][l]};
      const double norm = std::max({std::abs(d[0]), std::abs(d[1]), std::abs(d[2])});
      if (norm == 0.0) continue;
      for (double& v : d) v /= norm;
      normals.push_back(d);
    }
  }

  MaxminSolution best;
  bool have = false;
  auto consider = [&](Row p) {
    for (double& v : p) {
      if (v < -1e-12) return;
      v = std::max(v, 0.0);
    }
    const double s = p[0] + p[1] + p[2];
    if (s <= 0.0) return;
    for (double& v : p) v /= s;
    const double g = guarantee(m, p);
    if (!have || g > best.value + tie_eps) {
      best = {g, p};
      have = true;
    }
  };

  for (int k = 0; k < 3; ++k) {
    Row e{};
    e[k] = 1.0;
    consider(e);
  }
  const Row ones{1.0, 1.0, 1.0};
  for (std::size_t a = 0; a < normals.size(); ++a) {
    for (std::size_t b = a + 1; b < normals.size(); ++b) {
      if (a < 3 && b < 3) continue;  // simplex vertices, already tried
      if (auto p = solve3({normals[a], normals[b], ones}, {0.0, 0.0, 1.0})) consider(*p);
    }
  }
  return best;
}

}  // namespace dynkin
