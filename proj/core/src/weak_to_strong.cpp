#include "llp/weak_to_strong.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "llp/errors.hpp"

namespace llp {

// The Chernoff upper tail bounds Pr[a fixed bad classifier reaches accuracy
// alpha on s samples] by exp(-alpha s / 6); a union bound over the growth
// function Pi(n) then needs Pi(n) exp(-alpha s / 6) <= delta, i.e.
// s >= (6 / alpha) (ln Pi(n) + ln(1 / delta)) with ln Pi(n) = n ln 2 or
// r ln(e n / r).
SampleSizePlan compute_s(std::size_t n, double alpha, double delta, std::optional<std::size_t> vc_dim) {
  if (n < 1) throw ParameterError("compute_s: n must be at least 1");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ParameterError("compute_s: alpha must lie in (0, 1]");
  if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("compute_s: delta must lie in (0, 1)");
  if (vc_dim && *vc_dim == 0) throw ParameterError("compute_s: VC dimension must be positive");

  const double nn = static_cast<double>(n);
  double log_growth = nn * std::numbers::ln2;
  if (vc_dim && *vc_dim < n) {
    const double r = static_cast<double>(*vc_dim);
    log_growth = r * std::log(std::numbers::e * nn / r);
  }
  const double raw = (6.0 / alpha) * (log_growth + std::log(1.0 / delta));
  SampleSizePlan plan{n, alpha, delta, vc_dim, 0};
  plan.s = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(raw * (1.0 - 1e-12))));
  return plan;
}

double contradiction_bound(double c0, double epsilon, std::size_t t) {
  return amplification_bound(c0, epsilon, t);
}

A1Result algorithm_a1(const BagCollection& coll, double epsilon, double alpha, double c0, const Oracle& oracle) {
  if (coll.is_weighted()) {
    throw PreconditionError("algorithm_a1: collection must be unweighted (see weighted_to_unweighted)");
  }
  A1Result result{OracleResult{Classifier::constant(coll.table().dim(), 0), 0.0, false}, 0, 0, 0, false};
  result.t = compute_t(epsilon, alpha, c0);
  const auto support = enumerate_support(coll, result.t);
  const BagCollection large = support_collection(coll, support);
  result.support_size = large.size();
  result.max_union_size = large.max_bag_size();

  const double m = static_cast<double>(coll.size());
  if (static_cast<double>(result.support_size) > std::pow(m, static_cast<double>(result.t) + 1.0) + 0.5) {
    throw Error("algorithm_a1: support larger than m^(t+1)");
  }
  if (result.max_union_size > coll.max_bag_size() * result.t) {
    throw Error("algorithm_a1: union bag larger than k t");
  }
  result.oracle = oracle(large, alpha);
  result.contract_warning = !result.oracle.met_contract;
  return result;
}

A2Result algorithm_a2(const BagCollection& coll, const A2Params& params, const Oracle& oracle, Rng& rng) {
  if (coll.is_weighted()) {
    throw PreconditionError("algorithm_a2: collection must be unweighted (see weighted_to_unweighted)");
  }
  const std::size_t t = params.t ? *params.t : compute_t(params.epsilon, params.alpha, params.c0);
  if (t == 0) throw ParameterError("algorithm_a2: t must be at least 1");
  std::size_t s = 0;
  if (params.s) {
    s = *params.s;
  } else {
    s = compute_s(coll.distinct_instances().size(), params.alpha, params.delta, params.vc_dim).s;
  }
  if (s == 0) throw ParameterError("algorithm_a2: s must be at least 1");

  std::vector<UnionBag> unions = sample_unions(coll, t, s, rng);
  const std::size_t limit = coll.max_bag_size() * t;
  for (const auto& u : unions) {
    if (u.members.size() > limit) throw Error("algorithm_a2: union bag larger than k t");
  }
  BagCollection large = union_collection(coll, unions);
  OracleResult out = oracle(large, params.alpha);
  const bool warning = !out.met_contract;
  return A2Result{std::move(out), t, s, std::move(unions), std::move(large), warning};
}

}  // namespace llp
