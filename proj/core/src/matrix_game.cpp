#include "llp/matrix_game.hpp"

#include <algorithm>
#include <limits>

#include "llp/errors.hpp"

namespace llp {

GameSolution solve_matrix_game(const std::vector<std::vector<double>>& payoff, std::size_t rounds, double target_gap,
                               std::size_t max_rounds) {
  if (payoff.empty() || payoff.front().empty()) {
    throw ParameterError("solve_matrix_game: empty payoff matrix");
  }
  if (rounds == 0) throw ParameterError("solve_matrix_game: rounds must be positive");
  const std::size_t columns = payoff.size();
  const std::size_t rows = payoff.front().size();
  for (const auto& col : payoff) {
    if (col.size() != rows) throw ParameterError("solve_matrix_game: ragged payoff matrix");
  }

  std::vector<double> row_counts(rows, 0.0);
  std::vector<double> column_counts(columns, 0.0);
  // Cumulative payoff of each column against the rows played so far, and of
  // each row against the columns played so far.
  std::vector<double> column_totals(columns, 0.0);
  std::vector<double> row_totals(rows, 0.0);
  for (std::size_t c = 0; c < columns; ++c) {
    for (std::size_t j = 0; j < rows; ++j) column_totals[c] += payoff[c][j];
  }

  GameSolution best;
  best.upper = std::numeric_limits<double>::infinity();
  best.lower = -std::numeric_limits<double>::infinity();
  best.row_strategy.assign(rows, 1.0 / static_cast<double>(rows));

  const std::size_t cap = std::max(rounds, max_rounds);
  for (std::size_t round = 1; round <= cap; ++round) {
    if (round > rounds && best.upper - best.lower <= target_gap) break;
    const auto col = static_cast<std::size_t>(
        std::max_element(column_totals.begin(), column_totals.end()) - column_totals.begin());
    column_counts[col] += 1.0;
    for (std::size_t j = 0; j < rows; ++j) row_totals[j] += payoff[col][j];

    const auto row =
        static_cast<std::size_t>(std::min_element(row_totals.begin(), row_totals.end()) - row_totals.begin());
    const double lower = row_totals[row] / static_cast<double>(round);
    if (lower > best.lower) {
      best.lower = lower;
      best.column_strategy = column_counts;
      for (double& p : best.column_strategy) p /= static_cast<double>(round);
    }

    if (round == 1) std::fill(column_totals.begin(), column_totals.end(), 0.0);
    row_counts[row] += 1.0;
    for (std::size_t c = 0; c < columns; ++c) column_totals[c] += payoff[c][row];
    const auto reply = static_cast<std::size_t>(
        std::max_element(column_totals.begin(), column_totals.end()) - column_totals.begin());
    const double upper = column_totals[reply] / static_cast<double>(round);
    if (upper < best.upper) {
      best.upper = upper;
      best.best_column = reply;
      best.row_strategy = row_counts;
      for (double& w : best.row_strategy) w /= static_cast<double>(round);
    }
    best.rounds = round;
  }
  return best;
}

}  // namespace llp
