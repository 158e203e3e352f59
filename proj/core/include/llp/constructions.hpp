#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "llp/bag.hpp"
#include "llp/classifier.hpp"
#include "llp/matrix_game.hpp"
#include "llp/oracle.hpp"
#include "llp/rng.hpp"

namespace llp {

// ---------------------------------------------------------------------------
// LLP construction: 2-sized bags with label 1 on edges of a sphere graph whose
// endpoints sit at an angle in [alpha pi, (alpha + epsilon) pi].

struct MaxCutLLPConfig {
  double alpha = 0.75;    // theta / pi, in [1/2, 1)
  double epsilon = 0.1;   // band width as a fraction of pi; alpha + epsilon < 1
  std::size_t d = 3;      // ambient dimension of the sphere S^{d-1}
  std::size_t n_pairs = 8;
  /// Vertex pool size. Bags are drawn among pool pairs in the angle band, so
  /// vertices are shared between bags. 0 picks the smallest pool whose
  /// expected number of band pairs is at least 2 n_pairs.
  std::size_t n_points = 0;
  std::uint64_t seed = 0;
  std::size_t max_attempts = 1000;
};

/// Probability that two independent uniform points of S^{d-1} subtend an
/// angle in [lo, hi] (radians).
double band_probability(std::size_t d, double lo, double hi);

/// Pool size used when MaxCutLLPConfig::n_points is 0.
std::size_t default_pool_size(const MaxCutLLPConfig& cfg);

BagCollection gen_llp_maxcut_bags(const MaxCutLLPConfig& cfg);

struct NoStrongEstimate {
  double value = 0.0;
  bool exact = false;  // false: local-search value, a lower bound on the optimum
  std::size_t distinct_instances = 0;
};

/// Exact optimum for n <= 24 distinct instances; otherwise the best of
/// `budget` random-restart single-flip hill climbs.
NoStrongEstimate verify_llp_no_strong(const BagCollection& coll, std::size_t budget, Rng& rng);

/// Local search only (exposed so it can be compared against the exact value).
double local_search_best_accuracy(const BagCollection& coll, std::size_t restarts, Rng& rng);

// ---------------------------------------------------------------------------
// MIL construction on the circle, discretized into 2T aligned arcs.

struct CircleMILConfig {
  long alpha_num = 3;  // alpha = alpha_num / alpha_den in (1/2, 1)
  long alpha_den = 4;
  long T = 8;

  [[nodiscard]] double alpha() const { return static_cast<double>(alpha_num) / static_cast<double>(alpha_den); }
  [[nodiscard]] double delta() const { return 1.0 / static_cast<double>(T); }
  /// Arc offset between the endpoints of a 1-bag (alpha T).
  [[nodiscard]] long one_offset() const;
  /// Arc offset between the endpoints of a 0-bag ((1 - alpha) T).
  [[nodiscard]] long zero_offset() const;
};

/// Throws ParameterError unless alpha in (1/2, 1), T >= 1 and alpha T is
/// integral with both arc offsets distinct and non-zero modulo 2T.
void validate(const CircleMILConfig& cfg);

/// Instances are the 2T arc midpoints (i + 1/2) pi / T on S^1. Bag {i, i + alpha T}
/// has label 1 and bag {i, i + (1 - alpha) T} has label 0, for every arc i;
/// all 4T bags carry weight 1 / (4T).
BagCollection gen_mil_circle_bags(const CircleMILConfig& cfg);

/// Largest number of arcs verify_mil_no_strong accepts.
inline constexpr long kMaxCircleArcs = 24;

/// Exact optimum over all 2^{2T} arc labelings.
OracleResult verify_mil_no_strong(const BagCollection& coll);

struct WeakExistsReport {
  OracleResult best;
  double bound = 0.0;  // 2/3 - (1 - alpha)/2 - 2 delta
  bool holds = false;
};

double mil_weak_bound(double alpha, double delta);

/// Best of constant-0, constant-1 and `n_dirs` homogeneous halfspaces on the
/// collection reweighted by `weights`, checked against mil_weak_bound.
WeakExistsReport verify_mil_weak_exists(const BagCollection& coll, const std::vector<double>& weights,
                                        const CircleMILConfig& cfg, std::size_t n_dirs = 720);

// ---------------------------------------------------------------------------
// Adversarial reweighting against a finite classifier menu.

struct WeightingResult {
  std::vector<double> weights;
  double value = 0.0;        // best menu accuracy under `weights`
  std::size_t witness = 0;   // menu index attaining it
  double duality_gap = 0.0;  // value minus the certified lower bound
  std::size_t rounds = 0;
};

/// satisfaction[c][j] = 1 if menu item c satisfies bag j.
std::vector<std::vector<double>> satisfaction_matrix(const std::vector<Classifier>& menu, const BagCollection& coll);

inline constexpr double kDefaultGapTarget = 1e-3;
inline constexpr std::size_t kMaxGameRounds = 1000000;

/// Bag weighting minimizing the best menu accuracy (fictitious play). At least
/// `rounds` rounds; more while the duality gap exceeds `target_gap`.
WeightingResult adversarial_weights(const std::vector<std::vector<double>>& satisfaction, std::size_t rounds = 10000,
                                    double target_gap = kDefaultGapTarget, std::size_t max_rounds = kMaxGameRounds);

/// Uniform random point of the probability simplex.
std::vector<double> random_simplex_weights(std::size_t m, Rng& rng);

/// constant-0, constant-1 and n_dirs evenly spaced homogeneous halfspaces in 2-D.
std::vector<Classifier> halfspace_menu_2d(std::size_t n_dirs);

}  // namespace llp
