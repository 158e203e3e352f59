#pragma once

#include <cstddef>
#include <vector>

namespace llp {

/// Approximate solution of a finite zero-sum game.
struct GameSolution {
  std::vector<double> row_strategy;     // minimizer's mixture (bag weights)
  std::vector<double> column_strategy;  // maximizer's mixture (menu)
  double upper = 0.0;  // max_c payoff(row_strategy, c) >= game value
  double lower = 0.0;  // min_j payoff(j, column_strategy) <= game value
  std::size_t best_column = 0;  // maximizer's best response to row_strategy
  std::size_t rounds = 0;

  [[nodiscard]] double gap() const { return upper - lower; }
};

/// Fictitious play on payoff[c][j] (column c = menu item, row j = bag).
/// The row player minimizes, the column player maximizes. Both averaged
/// strategies are tracked; the best certified bounds seen are returned.
/// Play runs for `rounds` rounds, then continues while the gap exceeds
/// `target_gap`, up to `max_rounds` in total.
GameSolution solve_matrix_game(const std::vector<std::vector<double>>& payoff, std::size_t rounds = 10000,
                               double target_gap = 0.0, std::size_t max_rounds = 0);

}  // namespace llp
