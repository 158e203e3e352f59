#include "llp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <unordered_map>

#include "llp/errors.hpp"
#include "llp/metrics.hpp"

namespace llp {

double bag_loss(const LinearModel& model, const InstanceTable& table, const Bag& bag) {
  double total = 0.0;
  for (std::size_t id : bag.members) {
    const auto x = table.coords(id);
    total += sigmoid(std::inner_product(x.begin(), x.end(), model.weights.begin(), model.bias));
  }
  const double gap = static_cast<double>(bag.sigma) - total;
  return gap * gap;
}

double bag_loss_gradient(const LinearModel& model, const InstanceTable& table, const Bag& bag,
                         std::span<double> grad_weights, double& grad_bias) {
  const std::size_t d = model.weights.size();
  std::fill(grad_weights.begin(), grad_weights.end(), 0.0);
  grad_bias = 0.0;
  double total = 0.0;
  for (std::size_t id : bag.members) {
    const auto x = table.coords(id);
    const double margin = std::inner_product(x.begin(), x.end(), model.weights.begin(), model.bias);
    // An overflowed margin saturates the sigmoid and would hide divergence.
    if (!std::isfinite(margin)) return std::numeric_limits<double>::quiet_NaN();
    const double g = sigmoid(margin);
    total += g;
    const double slope = g * (1.0 - g);
    for (std::size_t c = 0; c < d; ++c) grad_weights[c] += slope * x[c];
    grad_bias += slope;
  }
  const double gap = static_cast<double>(bag.sigma) - total;
  const double scale = -2.0 * gap;
  for (double& g : grad_weights) g *= scale;
  grad_bias *= scale;
  return gap * gap;
}

OracleResult train_linear_sigmoid(const BagCollection& coll, const TrainConfig& cfg, double alpha) {
  if (coll.mode() != Mode::kLLP) {
    throw PreconditionError("train_linear_sigmoid: collection must be LLP");
  }
  if (coll.empty()) {
    throw PreconditionError("train_linear_sigmoid: collection is empty");
  }
  if (!(cfg.learning_rate > 0.0) || cfg.batch_size == 0 || cfg.epochs == 0) {
    throw ParameterError("train_linear_sigmoid: learning_rate, batch_size and epochs must be positive");
  }
  const InstanceTable& table = coll.table();
  const std::size_t d = table.dim();
  const std::size_t m = coll.size();

  Rng rng(cfg.seed);
  LinearModel model;
  model.weights.resize(d);
  for (double& w : model.weights) w = (2.0 * rng.uniform01() - 1.0) * cfg.init_scale;

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::optional<std::discrete_distribution<std::size_t>> by_weight;
  if (coll.is_weighted()) by_weight.emplace(coll.weights()->begin(), coll.weights()->end());

  std::vector<double> grad_w(d);
  std::vector<double> batch_grad_w(d);
  double grad_b = 0.0;

  LinearModel best_model = model;
  double best_test = -1.0;
  std::size_t since_best = 0;

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    if (by_weight) {
      for (auto& j : order) j = (*by_weight)(rng);
    } else {
      std::shuffle(order.begin(), order.end(), rng);
    }
    for (std::size_t start = 0; start < m; start += cfg.batch_size) {
      const std::size_t stop = std::min(m, start + cfg.batch_size);
      std::fill(batch_grad_w.begin(), batch_grad_w.end(), 0.0);
      double batch_grad_b = 0.0;
      double batch_loss = 0.0;
      for (std::size_t i = start; i < stop; ++i) {
        batch_loss += bag_loss_gradient(model, table, coll.bag(order[i]), grad_w, grad_b);
        for (std::size_t c = 0; c < d; ++c) batch_grad_w[c] += grad_w[c];
        batch_grad_b += grad_b;
      }
      const double inv = 1.0 / static_cast<double>(stop - start);
      if (!std::isfinite(batch_loss)) {
        std::ostringstream msg;
        msg << "training diverged at epoch " << epoch << ", batch starting at " << start
            << ": batch loss " << batch_loss << " (learning rate " << cfg.learning_rate << ")";
        throw TrainingError(msg.str());
      }
      for (std::size_t c = 0; c < d; ++c) model.weights[c] -= cfg.learning_rate * batch_grad_w[c] * inv;
      model.bias -= cfg.learning_rate * batch_grad_b * inv;
    }
    if (cfg.diagnostic_early_stop && cfg.diagnostic_early_stop->test) {
      const double test_acc = instance_accuracy(model.to_classifier(), *cfg.diagnostic_early_stop->test);
      if (test_acc > best_test) {
        best_test = test_acc;
        best_model = model;
        since_best = 0;
      } else if (++since_best >= cfg.diagnostic_early_stop->patience) {
        break;
      }
    }
  }
  if (cfg.diagnostic_early_stop && cfg.diagnostic_early_stop->test) model = best_model;
  for (double w : model.weights) {
    if (!std::isfinite(w)) throw TrainingError("training produced non-finite weights");
  }

  OracleResult result{model.to_classifier(), 0.0, false};
  result.achieved_accuracy = accuracy(result.classifier, coll);
  result.met_contract = result.achieved_accuracy >= alpha;
  return result;
}

OracleResult brute_force_best_labeling(const BagCollection& coll, double alpha) {
  const std::vector<std::size_t> ids = coll.distinct_instances();
  const std::size_t n = ids.size();
  if (n > kBruteForceLimit) {
    throw SizeError("brute_force_best_labeling: " + std::to_string(n) + " distinct instances exceed the limit of " +
                    std::to_string(kBruteForceLimit));
  }
  std::unordered_map<std::size_t, unsigned> bit_of;
  for (unsigned b = 0; b < n; ++b) bit_of[ids[b]] = b;

  struct Term {
    unsigned bit;
    long count;
  };
  struct Packed {
    std::vector<Term> terms;
    std::uint32_t mask = 0;
    long sigma = 0;
    double weight = 0.0;
  };
  std::vector<Packed> packed(coll.size());
  for (std::size_t j = 0; j < coll.size(); ++j) {
    const Bag& bag = coll.bag(j);
    Packed& p = packed[j];
    p.sigma = bag.sigma;
    p.weight = coll.weight(j);
    for (std::size_t id : bag.members) {
      const unsigned bit = bit_of.at(id);
      p.mask |= std::uint32_t{1} << bit;
      auto it = std::find_if(p.terms.begin(), p.terms.end(), [&](const Term& t) { return t.bit == bit; });
      if (it == p.terms.end()) {
        p.terms.push_back({bit, 1});
      } else {
        ++it->count;
      }
    }
  }
  const bool llp = coll.mode() == Mode::kLLP;
  auto score = [&](std::uint32_t labeling) {
    double total = 0.0;
    for (const Packed& p : packed) {
      bool sat = false;
      if (llp) {
        long sum = 0;
        for (const Term& t : p.terms) sum += ((labeling >> t.bit) & 1U) * t.count;
        sat = sum == p.sigma;
      } else {
        sat = ((labeling & p.mask) != 0) == (p.sigma == 1);
      }
      if (sat) total += p.weight;
    }
    return total;
  };

  const std::uint64_t count = std::uint64_t{1} << n;
  const unsigned hw = std::max(1U, std::thread::hardware_concurrency());
  const std::uint64_t shards = count < (1U << 14) ? 1 : std::min<std::uint64_t>(hw, 16);
  std::vector<std::pair<double, std::uint64_t>> best(shards, {-1.0, 0});
  auto run_shard = [&](std::uint64_t s) {
    const std::uint64_t lo = count * s / shards;
    const std::uint64_t hi = count * (s + 1) / shards;
    for (std::uint64_t labeling = lo; labeling < hi; ++labeling) {
      const double v = score(static_cast<std::uint32_t>(labeling));
      if (v > best[s].first) best[s] = {v, labeling};
    }
  };
  if (shards == 1) {
    run_shard(0);
  } else {
    std::vector<std::thread> workers;
    for (std::uint64_t s = 0; s < shards; ++s) workers.emplace_back(run_shard, s);
    for (auto& w : workers) w.join();
  }
  // Shards cover increasing labeling ranges, so strict > keeps the lowest maximizer.
  auto winner = best.front();
  for (const auto& b : best) {
    if (b.first > winner.first) winner = b;
  }

  Labels labels(coll.table().size(), -1);
  for (unsigned b = 0; b < n; ++b) labels[ids[b]] = static_cast<std::int8_t>((winner.second >> b) & 1U);
  OracleResult result{Classifier::explicit_labeling(std::move(labels)), 0.0, false};
  result.achieved_accuracy = accuracy(result.classifier, coll);
  result.met_contract = result.achieved_accuracy >= alpha;
  return result;
}

Classifier random_homogeneous_halfspace(std::size_t d, Rng& rng) {
  if (d < 2) {
    throw ParameterError("random_homogeneous_halfspace: dimension must be at least 2");
  }
  std::vector<double> r(d);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (double& c : r) {
      c = rng.normal();
      norm += c * c;
    }
  } while (norm == 0.0);
  norm = std::sqrt(norm);
  for (double& c : r) c /= norm;
  return Classifier::homogeneous_halfspace(std::move(r));
}

OracleResult best_halfspace_2d(const BagCollection& coll, std::size_t n_dirs, double alpha) {
  if (coll.table().dim() != 2) {
    throw PreconditionError("best_halfspace_2d: collection must be 2-dimensional");
  }
  if (n_dirs == 0) {
    throw ParameterError("best_halfspace_2d: n_dirs must be positive");
  }
  std::optional<OracleResult> best;
  auto consider = [&](Classifier h) {
    const double acc = accuracy(h, coll);
    if (!best || acc > best->achieved_accuracy) best = OracleResult{std::move(h), acc, false};
  };
  consider(Classifier::constant(2, 0));
  consider(Classifier::constant(2, 1));
  for (std::size_t k = 0; k < n_dirs; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_dirs);
    consider(Classifier::homogeneous_halfspace({std::cos(angle), std::sin(angle)}));
  }
  best->met_contract = best->achieved_accuracy >= alpha;
  return *best;
}

Oracle make_sgd_oracle(TrainConfig cfg) {
  return [cfg](const BagCollection& coll, double alpha) { return train_linear_sigmoid(coll, cfg, alpha); };
}

Oracle make_brute_force_oracle() {
  return [](const BagCollection& coll, double alpha) { return brute_force_best_labeling(coll, alpha); };
}

}  // namespace llp
