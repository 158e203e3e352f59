#include "llp/union_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "llp/errors.hpp"
#include "llp/metrics.hpp"

namespace llp {

UnionConfig UnionConfig::derive(double epsilon, double alpha, double c0) {
  return UnionConfig{compute_t(epsilon, alpha, c0), epsilon, alpha, c0};
}

std::size_t compute_t(double epsilon, double alpha, double c0) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw ParameterError("compute_t: epsilon must lie in (0, 1], got " + std::to_string(epsilon));
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ParameterError("compute_t: alpha must lie in (0, 1], got " + std::to_string(alpha));
  }
  if (!(c0 > 0.0) || !std::isfinite(c0)) {
    throw ParameterError("compute_t: c0 must be positive");
  }
  const double ratio = c0 / alpha;
  const double raw = (32.0 / epsilon) * ratio * ratio;
  // Relative guard so exact products such as 1280 do not round up to 1281.
  const double t = std::ceil(raw * (1.0 - 1e-12));
  return std::max<std::size_t>(1, static_cast<std::size_t>(t));
}

UnionBag make_union(const BagCollection& coll, std::vector<std::size_t> sources) {
  UnionBag u;
  for (std::size_t j : sources) {
    const Bag& bag = coll.bag(j);
    u.members.insert(u.members.end(), bag.members.begin(), bag.members.end());
    u.sigma += bag.sigma;
  }
  u.provenance = std::move(sources);
  return u;
}

UnionBag sample_union(const BagCollection& coll, std::size_t t, Rng& rng) {
  if (coll.empty()) {
    throw PreconditionError("sample_union: collection is empty");
  }
  if (coll.is_weighted()) {
    throw PreconditionError("sample_union: collection must be unweighted");
  }
  if (coll.mode() != Mode::kLLP) {
    throw PreconditionError("sample_union: union bags are defined for LLP collections");
  }
  std::vector<std::size_t> picks(t);
  for (auto& p : picks) p = rng.uniform_index(coll.size());
  std::vector<std::size_t> kept;
  kept.reserve(t);
  for (std::size_t i = 0; i < t; ++i) {
    if (rng.coin()) kept.push_back(picks[i]);
  }
  return make_union(coll, std::move(kept));
}

std::vector<UnionBag> sample_unions(const BagCollection& coll, std::size_t t, std::size_t s, Rng& rng) {
  std::vector<UnionBag> out;
  out.reserve(s);
  for (std::size_t j = 0; j < s; ++j) out.push_back(sample_union(coll, t, rng));
  return out;
}

std::vector<SupportEntry> enumerate_support(const BagCollection& coll, std::size_t t) {
  if (coll.empty()) {
    throw PreconditionError("enumerate_support: collection is empty");
  }
  if (coll.is_weighted()) {
    throw PreconditionError("enumerate_support: collection must be unweighted");
  }
  const std::size_t m = coll.size();
  const double log_guard = std::log(kSupportGuard);
  if (static_cast<double>(t) * std::log(static_cast<double>(m + 1)) > log_guard + 1e-12) {
    throw SizeError("enumerate_support: (m+1)^t = " + std::to_string(m + 1) + "^" + std::to_string(t) +
                    " exceeds the exact-enumeration guard of 1e7");
  }

  const double log_m = std::log(static_cast<double>(m));
  const double log_half_t = -static_cast<double>(t) * std::log(2.0);
  auto log_choose = [](double n, double k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
  };

  std::vector<SupportEntry> out;
  std::vector<std::size_t> current;
  for (std::size_t r = 0; r <= t; ++r) {
    const double base = log_choose(static_cast<double>(t), static_cast<double>(r)) + log_half_t +
                        std::lgamma(static_cast<double>(r) + 1.0) - static_cast<double>(r) * log_m;
    // Non-decreasing index sequences of length r.
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
      if (depth == r) {
        double log_p = base;
        for (std::size_t i = 0; i < r;) {
          std::size_t j = i;
          while (j < r && current[j] == current[i]) ++j;
          log_p -= std::lgamma(static_cast<double>(j - i) + 1.0);
          i = j;
        }
        out.push_back(SupportEntry{make_union(coll, current), std::exp(log_p)});
        return;
      }
      for (std::size_t idx = start; idx < m; ++idx) {
        current.push_back(idx);
        rec(idx, depth + 1);
        current.pop_back();
      }
    };
    rec(0, 0);
  }
  return out;
}

BagCollection support_collection(const BagCollection& coll, const std::vector<SupportEntry>& support) {
  std::vector<Bag> bags;
  std::vector<double> weights;
  bags.reserve(support.size());
  weights.reserve(support.size());
  double total = 0.0;
  for (const auto& entry : support) {
    bags.push_back(entry.union_bag.as_bag());
    weights.push_back(entry.weight);
    total += entry.weight;
  }
  // Absorb floating-point drift so the result meets the collection tolerance.
  for (double& w : weights) w /= total;
  return BagCollection(Mode::kLLP, coll.table_ptr(), std::move(bags), std::move(weights));
}

BagCollection union_collection(const BagCollection& coll, const std::vector<UnionBag>& unions) {
  std::vector<Bag> bags;
  bags.reserve(unions.size());
  for (const auto& u : unions) bags.push_back(u.as_bag());
  return BagCollection(Mode::kLLP, coll.table_ptr(), std::move(bags));
}

Provenance union_provenance(const std::vector<UnionBag>& unions) {
  Provenance out;
  out.reserve(unions.size());
  for (const auto& u : unions) out.push_back(u.provenance);
  return out;
}

double amplification_bound(double c0, double zeta, std::size_t t) {
  const double zt = zeta * static_cast<double>(t);
  return c0 / std::sqrt(zt) + std::exp(-zt / 8.0);
}

AmplificationReport verify_error_amplification(const Classifier& h, const BagCollection& coll,
                                               const UnionConfig& cfg, double zeta,
                                               std::size_t n_samples, Rng& rng) {
  if (!(zeta > 0.0 && zeta < 1.0)) {
    throw ParameterError("verify_error_amplification: zeta must lie in (0, 1)");
  }
  if (n_samples == 0) {
    throw ParameterError("verify_error_amplification: n_samples must be positive");
  }
  const Labels labels = h.predict_all(coll.table());
  const std::span<const std::int8_t> view(labels);
  AmplificationReport report;
  report.small_bag_accuracy = accuracy(view, coll);
  if (!(report.small_bag_accuracy < 1.0 - zeta)) {
    throw PreconditionError("verify_error_amplification: classifier accuracy " +
                            std::to_string(report.small_bag_accuracy) + " is not below 1 - zeta = " +
                            std::to_string(1.0 - zeta));
  }
  std::size_t satisfied = 0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    const UnionBag u = sample_union(coll, cfg.t, rng);
    if (residual(view, u.as_bag()) == 0) ++satisfied;
  }
  const double n = static_cast<double>(n_samples);
  report.n_samples = n_samples;
  report.empirical_sat_rate = static_cast<double>(satisfied) / n;
  report.standard_error = std::sqrt(report.empirical_sat_rate * (1.0 - report.empirical_sat_rate) / n);
  report.bound = amplification_bound(cfg.c0, zeta, cfg.t);
  report.threshold = report.bound + 3.0 * report.standard_error;
  report.holds = report.empirical_sat_rate <= report.threshold;
  return report;
}

}  // namespace llp
