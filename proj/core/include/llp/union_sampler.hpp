#pragma once

#include <cstddef>
#include <vector>

#include "llp/bag.hpp"
#include "llp/classifier.hpp"
#include "llp/rng.hpp"
#include "llp/text_format.hpp"

namespace llp {

/// Default anti-concentration constant, about sqrt(2/pi).
inline constexpr double kDefaultC0 = 0.8;

/// Parameters of the union-bag distribution.
struct UnionConfig {
  std::size_t t = 1;
  double epsilon = 0.5;
  double alpha = 1.0;
  double c0 = kDefaultC0;

  /// Config with t = compute_t(epsilon, alpha, c0).
  static UnionConfig derive(double epsilon, double alpha, double c0 = kDefaultC0);
};

/// t = ceil((32 / epsilon) * (c0 / alpha)^2). Requires epsilon, alpha in
/// (0, 1] and c0 > 0.
std::size_t compute_t(double epsilon, double alpha, double c0 = kDefaultC0);

/// One draw of the union distribution: the multiset concatenation of the
/// kept source bags and the sum of their labels. `provenance` lists the kept
/// source indices in slot order.
struct UnionBag {
  std::vector<std::size_t> members;
  long sigma = 0;
  std::vector<std::size_t> provenance;

  [[nodiscard]] Bag as_bag() const { return Bag{members, sigma, Mode::kLLP}; }
};

/// Builds the union of `sources` (indices into `coll`), concatenating members.
UnionBag make_union(const BagCollection& coll, std::vector<std::size_t> sources);

/// Draws t uniform bag indices, then t fair coins; the bags whose coin came
/// up heads are concatenated. Consumes exactly 2t draws from `rng`.
UnionBag sample_union(const BagCollection& coll, std::size_t t, Rng& rng);

/// s independent draws of sample_union.
std::vector<UnionBag> sample_unions(const BagCollection& coll, std::size_t t, std::size_t s, Rng& rng);

struct SupportEntry {
  UnionBag union_bag;  // provenance sorted ascending
  double weight = 0.0;
};

/// Largest (m + 1)^t accepted by enumerate_support.
inline constexpr double kSupportGuard = 1e7;

/// Exact support of the union distribution. A multiset of r source indices
/// with multiplicities c_1..c_u has probability
/// C(t, r) 2^-t r! / (c_1! ... c_u!) m^-r. Entries are ordered by size, then
/// lexicographically.
std::vector<SupportEntry> enumerate_support(const BagCollection& coll, std::size_t t);

/// Weighted collection holding the support entries as bags.
BagCollection support_collection(const BagCollection& coll, const std::vector<SupportEntry>& support);
/// Unweighted collection holding sampled unions as bags, plus their provenance.
BagCollection union_collection(const BagCollection& coll, const std::vector<UnionBag>& unions);
Provenance union_provenance(const std::vector<UnionBag>& unions);

struct AmplificationReport {
  double empirical_sat_rate = 0.0;
  double standard_error = 0.0;
  double bound = 0.0;      // c0 / sqrt(zeta t) + exp(-zeta t / 8)
  double threshold = 0.0;  // bound + 3 standard errors
  bool holds = false;
  double small_bag_accuracy = 0.0;
  std::size_t n_samples = 0;
};

double amplification_bound(double c0, double zeta, std::size_t t);

/// Monte-Carlo estimate of the probability that `h` satisfies a union bag,
/// compared against the amplification bound. Requires accuracy(h, coll) <
/// 1 - zeta; otherwise throws PreconditionError.
AmplificationReport verify_error_amplification(const Classifier& h, const BagCollection& coll,
                                               const UnionConfig& cfg, double zeta,
                                               std::size_t n_samples, Rng& rng);

}  // namespace llp
