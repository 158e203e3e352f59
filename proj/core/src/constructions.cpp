#include "llp/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <utility>

#include "llp/errors.hpp"
#include "llp/metrics.hpp"

namespace llp {
namespace {

std::vector<double> random_unit_vector(std::size_t d, Rng& rng) {
  std::vector<double> v(d);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (double& c : v) {
      c = rng.normal();
      norm += c * c;
    }
  } while (norm == 0.0);
  norm = std::sqrt(norm);
  for (double& c : v) c /= norm;
  return v;
}

double angle_between(std::span<const double> a, std::span<const double> b) {
  const double dot = std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
  return std::acos(std::clamp(dot, -1.0, 1.0));
}

}  // namespace

double band_probability(std::size_t d, double lo, double hi) {
  // The angle between two uniform points has density proportional to sin^{d-2}.
  const double power = static_cast<double>(d) - 2.0;
  auto integral = [power](double a, double b) {
    constexpr int kSteps = 4000;
    const double h = (b - a) / kSteps;
    double total = 0.0;
    for (int i = 0; i <= kSteps; ++i) {
      const double w = (i == 0 || i == kSteps) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      total += w * std::pow(std::sin(a + i * h), power);
    }
    return total * h / 3.0;
  };
  if (d == 2) return (hi - lo) / std::numbers::pi;
  return integral(lo, hi) / integral(0.0, std::numbers::pi);
}

std::size_t default_pool_size(const MaxCutLLPConfig& cfg) {
  const double lo = cfg.alpha * std::numbers::pi;
  const double p = band_probability(cfg.d, lo, lo + cfg.epsilon * std::numbers::pi);
  const double target = 2.0 * static_cast<double>(cfg.n_pairs);
  std::size_t n = 2;
  while (0.5 * static_cast<double>(n) * static_cast<double>(n - 1) * p < target) ++n;
  return n;
}

BagCollection gen_llp_maxcut_bags(const MaxCutLLPConfig& cfg) {
  if (!(cfg.alpha >= 0.5 && cfg.alpha < 1.0)) {
    throw ParameterError("gen_llp_maxcut_bags: alpha must lie in [1/2, 1)");
  }
  if (!(cfg.epsilon > 0.0) || !(cfg.alpha + cfg.epsilon < 1.0)) {
    throw ParameterError("gen_llp_maxcut_bags: need epsilon > 0 and alpha + epsilon < 1");
  }
  if (cfg.d < 2) throw ParameterError("gen_llp_maxcut_bags: d must be at least 2");
  if (cfg.n_pairs == 0) throw ParameterError("gen_llp_maxcut_bags: n_pairs must be positive");

  const double lo = cfg.alpha * std::numbers::pi;
  const double hi = (cfg.alpha + cfg.epsilon) * std::numbers::pi;
  const std::size_t pool = cfg.n_points ? cfg.n_points : default_pool_size(cfg);
  Rng rng(cfg.seed);

  for (std::size_t attempt = 0; attempt < cfg.max_attempts; ++attempt) {
    std::vector<std::vector<double>> points;
    points.reserve(pool);
    for (std::size_t i = 0; i < pool; ++i) points.push_back(random_unit_vector(cfg.d, rng));
    std::vector<std::pair<std::size_t, std::size_t>> band;
    for (std::size_t a = 0; a < pool; ++a) {
      for (std::size_t b = a + 1; b < pool; ++b) {
        const double angle = angle_between(points[a], points[b]);
        if (angle >= lo && angle <= hi) band.emplace_back(a, b);
      }
    }
    if (band.size() < cfg.n_pairs) continue;
    // Partial Fisher-Yates: first n_pairs entries form a uniform sample.
    for (std::size_t i = 0; i < cfg.n_pairs; ++i) {
      std::swap(band[i], band[i + rng.uniform_index(band.size() - i)]);
    }
    band.resize(cfg.n_pairs);

    // Keep only vertices that appear in a bag, renumbered in first-use order.
    std::vector<std::size_t> remap(pool, pool);
    auto table = std::make_shared<InstanceTable>(cfg.d);
    auto id_of = [&](std::size_t v) {
      if (remap[v] == pool) remap[v] = table->add(points[v]);
      return remap[v];
    };
    std::vector<Bag> bags;
    bags.reserve(band.size());
    for (const auto& [a, b] : band) bags.push_back(Bag::llp({id_of(a), id_of(b)}, 1));
    return BagCollection(Mode::kLLP, std::move(table), std::move(bags));
  }
  throw GenerationError("gen_llp_maxcut_bags: fewer than " + std::to_string(cfg.n_pairs) +
                        " band pairs in a pool of " + std::to_string(pool) + " points after " +
                        std::to_string(cfg.max_attempts) + " attempts");
}

double local_search_best_accuracy(const BagCollection& coll, std::size_t restarts, Rng& rng) {
  const std::vector<std::size_t> ids = coll.distinct_instances();
  const std::size_t n_table = coll.table().size();
  std::vector<std::vector<std::size_t>> bags_of(n_table);
  for (std::size_t j = 0; j < coll.size(); ++j) {
    for (std::size_t id : coll.bag(j).members) {
      auto& list = bags_of[id];
      if (list.empty() || list.back() != j) list.push_back(j);
    }
  }
  double best = 0.0;
  Labels labels(n_table, 0);
  for (std::size_t r = 0; r < std::max<std::size_t>(restarts, 1); ++r) {
    for (std::size_t id : ids) labels[id] = rng.coin() ? 1 : 0;
    std::vector<char> sat(coll.size());
    double current = 0.0;
    for (std::size_t j = 0; j < coll.size(); ++j) {
      sat[j] = is_satisfied(std::span<const std::int8_t>(labels), coll.bag(j));
      if (sat[j]) current += coll.weight(j);
    }
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t id : ids) {
        labels[id] ^= 1;
        double delta = 0.0;
        for (std::size_t j : bags_of[id]) {
          const bool now = is_satisfied(std::span<const std::int8_t>(labels), coll.bag(j));
          if (now != static_cast<bool>(sat[j])) delta += now ? coll.weight(j) : -coll.weight(j);
        }
        if (delta > 1e-15) {
          current += delta;
          for (std::size_t j : bags_of[id]) sat[j] = is_satisfied(std::span<const std::int8_t>(labels), coll.bag(j));
          improved = true;
        } else {
          labels[id] ^= 1;
        }
      }
    }
    best = std::max(best, current);
  }
  return best;
}

NoStrongEstimate verify_llp_no_strong(const BagCollection& coll, std::size_t budget, Rng& rng) {
  NoStrongEstimate out;
  out.distinct_instances = coll.distinct_instances().size();
  if (out.distinct_instances <= kBruteForceLimit) {
    out.value = brute_force_best_labeling(coll).achieved_accuracy;
    out.exact = true;
  } else {
    out.value = local_search_best_accuracy(coll, budget, rng);
    out.exact = false;
  }
  return out;
}

long CircleMILConfig::one_offset() const { return alpha_num * T / alpha_den; }

long CircleMILConfig::zero_offset() const { return (alpha_den - alpha_num) * T / alpha_den; }

void validate(const CircleMILConfig& cfg) {
  if (cfg.alpha_den <= 0 || cfg.T < 1) {
    throw ParameterError("CircleMILConfig: alpha denominator and T must be positive");
  }
  if (!(2 * cfg.alpha_num > cfg.alpha_den && cfg.alpha_num < cfg.alpha_den)) {
    throw ParameterError("CircleMILConfig: alpha must lie in (1/2, 1)");
  }
  if ((cfg.alpha_num * cfg.T) % cfg.alpha_den != 0) {
    throw ParameterError("CircleMILConfig: alpha * T must be an integer (alpha = " + std::to_string(cfg.alpha_num) +
                         "/" + std::to_string(cfg.alpha_den) + ", T = " + std::to_string(cfg.T) + ")");
  }
  const long arcs = 2 * cfg.T;
  const long a = cfg.one_offset();
  const long b = cfg.zero_offset();
  // (i) no bag inside one arc; (ii) no arc pair hosts both a 0-bag and a 1-bag.
  if (a % arcs == 0 || b % arcs == 0 || a == b || a == arcs - b) {
    throw ParameterError("CircleMILConfig: arc offsets violate the separation properties");
  }
}

BagCollection gen_mil_circle_bags(const CircleMILConfig& cfg) {
  validate(cfg);
  const long arcs = 2 * cfg.T;
  auto table = std::make_shared<InstanceTable>(2);
  for (long i = 0; i < arcs; ++i) {
    const double angle = (static_cast<double>(i) + 0.5) * std::numbers::pi / static_cast<double>(cfg.T);
    table->add(std::vector<double>{std::cos(angle), std::sin(angle)});
  }
  std::vector<Bag> bags;
  auto add_family = [&](long offset, long sigma) {
    for (long i = 0; i < arcs; ++i) {
      bags.push_back(Bag::mil({static_cast<std::size_t>(i), static_cast<std::size_t>((i + offset) % arcs)}, sigma));
    }
  };
  add_family(cfg.one_offset(), 1);
  add_family(cfg.zero_offset(), 0);
  std::vector<double> weights(bags.size(), 1.0 / static_cast<double>(bags.size()));
  return BagCollection(Mode::kMIL, std::move(table), std::move(bags), std::move(weights));
}

OracleResult verify_mil_no_strong(const BagCollection& coll) {
  if (static_cast<long>(coll.distinct_instances().size()) > kMaxCircleArcs) {
    throw SizeError("verify_mil_no_strong: more than " + std::to_string(kMaxCircleArcs) + " arcs");
  }
  return brute_force_best_labeling(coll);
}

double mil_weak_bound(double alpha, double delta) { return 2.0 / 3.0 - (1.0 - alpha) / 2.0 - 2.0 * delta; }

WeakExistsReport verify_mil_weak_exists(const BagCollection& coll, const std::vector<double>& weights,
                                        const CircleMILConfig& cfg, std::size_t n_dirs) {
  const BagCollection weighted = coll.reweighted(weights);
  WeakExistsReport report{best_halfspace_2d(weighted, n_dirs), mil_weak_bound(cfg.alpha(), cfg.delta()), false};
  report.holds = report.best.achieved_accuracy >= report.bound;
  report.best.met_contract = report.holds;
  return report;
}

std::vector<std::vector<double>> satisfaction_matrix(const std::vector<Classifier>& menu, const BagCollection& coll) {
  std::vector<std::vector<double>> out;
  out.reserve(menu.size());
  for (const Classifier& h : menu) {
    const Labels labels = h.predict_all(coll.table());
    std::vector<double> row(coll.size());
    for (std::size_t j = 0; j < coll.size(); ++j) {
      row[j] = is_satisfied(std::span<const std::int8_t>(labels), coll.bag(j)) ? 1.0 : 0.0;
    }
    out.push_back(std::move(row));
  }
  return out;
}

WeightingResult adversarial_weights(const std::vector<std::vector<double>>& satisfaction, std::size_t rounds,
                                    double target_gap, std::size_t max_rounds) {
  if (satisfaction.empty()) throw ParameterError("adversarial_weights: menu is empty");
  const GameSolution game = solve_matrix_game(satisfaction, rounds, target_gap, max_rounds);
  return WeightingResult{game.row_strategy, game.upper, game.best_column, game.gap(), game.rounds};
}

std::vector<double> random_simplex_weights(std::size_t m, Rng& rng) {
  std::vector<double> w(m);
  double total = 0.0;
  for (double& x : w) {
    x = -std::log1p(-rng.uniform01());
    total += x;
  }
  for (double& x : w) x /= total;
  return w;
}

std::vector<Classifier> halfspace_menu_2d(std::size_t n_dirs) {
  std::vector<Classifier> menu{Classifier::constant(2, 0), Classifier::constant(2, 1)};
  for (std::size_t k = 0; k < n_dirs; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_dirs);
    menu.push_back(Classifier::homogeneous_halfspace({std::cos(angle), std::sin(angle)}));
  }
  return menu;
}

}  // namespace llp
