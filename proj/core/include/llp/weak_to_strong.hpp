#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "llp/bag.hpp"
#include "llp/oracle.hpp"
#include "llp/rng.hpp"
#include "llp/union_sampler.hpp"

namespace llp {

/// Number of sampled union bags needed for the randomized algorithm.
struct SampleSizePlan {
  std::size_t n = 0;
  double alpha = 0.0;
  double delta = 0.0;
  std::optional<std::size_t> vc_dim;
  std::size_t s = 0;
};

/// s such that (growth function) * exp(-alpha s / 6) <= delta:
///   unrestricted:  s = ceil((6 / alpha) (n ln 2 + ln(1 / delta)))
///   VC dim r < n:  s = ceil((6 / alpha) (r ln(e n / r) + ln(1 / delta)))
/// A VC dimension r >= n falls back to the unrestricted bound.
SampleSizePlan compute_s(std::size_t n, double alpha, double delta,
                         std::optional<std::size_t> vc_dim = std::nullopt);

/// c0 / sqrt(epsilon t) + exp(-epsilon t / 8): the largest union-satisfaction
/// probability of a classifier whose small-bag accuracy is below 1 - epsilon.
double contradiction_bound(double c0, double epsilon, std::size_t t);

struct A1Result {
  OracleResult oracle;
  std::size_t t = 0;
  std::size_t support_size = 0;
  std::size_t max_union_size = 0;
  bool contract_warning = false;  // oracle missed its accuracy contract
};

/// Deterministic algorithm: run the oracle on the exact weighted support of
/// the union distribution with t = compute_t(epsilon, alpha, c0).
A1Result algorithm_a1(const BagCollection& coll, double epsilon, double alpha, double c0,
                      const Oracle& oracle);

struct A2Params {
  double epsilon = 0.1;
  double alpha = 0.1;
  double c0 = kDefaultC0;
  double delta = 0.1;
  std::optional<std::size_t> t;  // overrides compute_t
  std::optional<std::size_t> s;  // overrides compute_s
  std::optional<std::size_t> vc_dim;
};

struct A2Result {
  OracleResult oracle;
  std::size_t t = 0;
  std::size_t s = 0;
  std::vector<UnionBag> unions;
  BagCollection large_bags;
  bool contract_warning = false;
};

/// Randomized algorithm: run the oracle on s iid union bags treated as an
/// unweighted collection.
A2Result algorithm_a2(const BagCollection& coll, const A2Params& params, const Oracle& oracle, Rng& rng);

}  // namespace llp
