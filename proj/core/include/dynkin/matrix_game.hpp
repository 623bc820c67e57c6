#pragma once

#include <array>

namespace dynkin {

/// Payoff matrix of a stage game: three mixing rows (Atom, Uniform, Wait)
/// against four pure columns.
using StageMatrix = std::array<std::array<double, 4>, 3>;

struct MaxminSolution {
  double value = 0.0;
  std::array<double, 3> mix{};
};

/// Exact max over row mixtures of the min over columns, by enumerating the
/// vertices of the lower envelope on the 2-simplex. Deterministic: a
/// candidate replaces the incumbent only if it is better by more than
/// `tie_eps`, and pure rows are tried first in row order.
MaxminSolution solve_maxmin(const StageMatrix& m, double tie_eps);

/// Row-mixture guarantee min_j (mix . column j).
double guarantee(const StageMatrix& m, const std::array<double, 3>& mix);

}  // namespace dynkin
