#include "llp/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "llp/errors.hpp"

namespace llp {
namespace {

int label_at(std::span<const std::int8_t> labels, std::size_t id) {
  if (id >= labels.size() || labels[id] < 0) {
    throw DataError("no prediction for instance id " + std::to_string(id));
  }
  return labels[id];
}

// Golden-section maximization of a concave function on [lo, hi].
template <typename F>
std::pair<double, double> golden_max(F&& f, double lo, double hi, double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    } else {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    }
  }
  double best_x = 0.5 * (a + b);
  double best = f(best_x);
  for (double x : {lo, hi, c, d}) {
    const double v = f(x);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  return {best_x, best};
}

}  // namespace

long residual(std::span<const std::int8_t> labels, const Bag& bag) {
  if (bag.mode != Mode::kLLP) {
    throw PreconditionError("residual is defined for LLP bags only");
  }
  long sum = 0;
  for (std::size_t id : bag.members) sum += label_at(labels, id);
  return sum - bag.sigma;
}

long residual(const Classifier& h, const Bag& bag, const InstanceTable& table) {
  if (bag.mode != Mode::kLLP) {
    throw PreconditionError("residual is defined for LLP bags only");
  }
  long sum = 0;
  for (std::size_t id : bag.members) sum += h.predict(table, id);
  return sum - bag.sigma;
}

bool is_satisfied(std::span<const std::int8_t> labels, const Bag& bag) {
  if (bag.mode == Mode::kLLP) return residual(labels, bag) == 0;
  int any = 0;
  for (std::size_t id : bag.members) any |= label_at(labels, id);
  return any == bag.sigma;
}

bool is_satisfied(const Classifier& h, const Bag& bag, const InstanceTable& table) {
  if (bag.mode == Mode::kLLP) return residual(h, bag, table) == 0;
  int any = 0;
  for (std::size_t id : bag.members) any |= h.predict(table, id);
  return any == bag.sigma;
}

double accuracy(std::span<const std::int8_t> labels, const BagCollection& coll) {
  double total = 0.0;
  for (std::size_t j = 0; j < coll.size(); ++j) {
    if (is_satisfied(labels, coll.bag(j))) total += coll.weight(j);
  }
  return total;
}

double accuracy(const Classifier& h, const BagCollection& coll) {
  if (h.kind() == ClassifierKind::kExplicitLabeling) {
    return accuracy(std::span<const std::int8_t>(h.labels()), coll);
  }
  const Labels labels = h.predict_all(coll.table());
  return accuracy(std::span<const std::int8_t>(labels), coll);
}

double instance_accuracy(const Classifier& h, const InstanceTable& table) {
  std::size_t labeled = 0;
  std::size_t correct = 0;
  for (std::size_t id = 0; id < table.size(); ++id) {
    const auto y = table.label(id);
    if (!y) continue;
    ++labeled;
    if (h.predict(table, id) == *y) ++correct;
  }
  if (labeled == 0) {
    throw DataError("instance_accuracy: table has no labeled rows");
  }
  return static_cast<double>(correct) / static_cast<double>(labeled);
}

double random_classifier_satisfaction_prob(const Bag& bag) {
  std::map<std::size_t, long> multiplicity;
  for (std::size_t id : bag.members) ++multiplicity[id];
  const auto distinct = static_cast<double>(multiplicity.size());

  if (bag.mode == Mode::kMIL) {
    const double all_zero = std::exp2(-distinct);
    return bag.sigma == 0 ? all_zero : 1.0 - all_zero;
  }
  // Distribution of sum_i c_i X_i over fair coins X_i, by convolution.
  std::vector<double> dist(bag.members.size() + 1, 0.0);
  dist[0] = 1.0;
  long reach = 0;
  for (const auto& [id, count] : multiplicity) {
    for (long s = reach; s >= 0; --s) {
      const double p = dist[static_cast<std::size_t>(s)];
      if (p == 0.0) continue;
      dist[static_cast<std::size_t>(s)] = 0.5 * p;
      dist[static_cast<std::size_t>(s + count)] += 0.5 * p;
    }
    reach += count;
  }
  if (bag.sigma < 0 || bag.sigma > reach) return 0.0;
  return dist[static_cast<std::size_t>(bag.sigma)];
}

double trivial_accuracy(const BagCollection& coll) {
  if (coll.empty()) {
    throw PreconditionError("trivial_accuracy: collection is empty");
  }
  // Bags with identical payoff columns are interchangeable for the min.
  std::vector<std::array<double, 3>> columns;
  {
    std::map<std::tuple<double, int, int>, bool> seen;
    const Labels zeros(coll.table().size(), 0);
    const Labels ones(coll.table().size(), 1);
    for (const Bag& bag : coll.bags()) {
      const double v_random = random_classifier_satisfaction_prob(bag);
      const int v_zero = is_satisfied(std::span<const std::int8_t>(zeros), bag) ? 1 : 0;
      const int v_one = is_satisfied(std::span<const std::int8_t>(ones), bag) ? 1 : 0;
      if (seen.emplace(std::make_tuple(v_random, v_zero, v_one), true).second) {
        columns.push_back({v_random, static_cast<double>(v_zero), static_cast<double>(v_one)});
      }
    }
  }
  // min over bags of the mixture's expected satisfaction.
  auto guaranteed = [&](double p_random, double p_zero) {
    const double p_one = std::max(0.0, 1.0 - p_random - p_zero);
    double worst = 1.0;
    for (const auto& v : columns) {
      worst = std::min(worst, p_random * v[0] + p_zero * v[1] + p_one * v[2]);
    }
    return worst;
  };
  constexpr double kTol = 1e-6;
  auto inner = [&](double p_random) {
    return golden_max([&](double p_zero) { return guaranteed(p_random, p_zero); }, 0.0,
                      1.0 - p_random, kTol)
        .second;
  };
  const double value = golden_max(inner, 0.0, 1.0, kTol).second;
  return std::clamp(value, 0.0, 1.0);
}

BagCollection weighted_to_unweighted(const BagCollection& coll, long T) {
  if (T < 2) {
    throw ParameterError("weighted_to_unweighted: T must be at least 2, got " + std::to_string(T));
  }
  if (!coll.is_weighted()) {
    throw ParameterError("weighted_to_unweighted: input collection is unweighted");
  }
  const auto m = static_cast<double>(coll.size());
  std::vector<Bag> out;
  out.reserve(coll.size() * static_cast<std::size_t>(T));
  for (std::size_t i = 0; i < coll.size(); ++i) {
    const double scaled = coll.weight(i) * m * static_cast<double>(T - 1);
    // The guard absorbs rounding in w_i * m so exact multiples do not round up.
    const auto copies = static_cast<std::size_t>(std::max(0.0, std::ceil(scaled - 1e-9)));
    for (std::size_t c = 0; c < copies; ++c) out.push_back(coll.bag(i));
  }
  return BagCollection(coll.mode(), coll.table_ptr(), std::move(out));
}

}  // namespace llp
