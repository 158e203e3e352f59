#include "llp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "llp/errors.hpp"
#include "llp/metrics.hpp"

namespace llp {
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

BagCollection rotate_arcs(const BagCollection& coll, std::size_t shift) {
  const std::size_t n = coll.table().size();
  std::vector<Bag> bags;
  bags.reserve(coll.size());
  for (const Bag& bag : coll.bags()) {
    Bag moved = bag;
    for (std::size_t& id : moved.members) id = (id + shift) % n;
    bags.push_back(std::move(moved));
  }
  return BagCollection(coll.mode(), coll.table_ptr(), std::move(bags), coll.weights());
}

}  // namespace

const char* to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::kPass:
      return "pass";
    case CheckStatus::kFail:
      return "fail";
    case CheckStatus::kInfo:
      return "info";
  }
  return "info";
}

void VerificationReport::info(std::string name, std::string value) {
  lines_.push_back({std::move(name), std::move(value), CheckStatus::kInfo});
}

void VerificationReport::check(std::string name, std::string value, bool ok) {
  lines_.push_back({std::move(name), std::move(value), ok ? CheckStatus::kPass : CheckStatus::kFail});
}

const CheckLine* VerificationReport::find(const std::string& name) const {
  for (const CheckLine& line : lines_) {
    if (line.name == name) return &line;
  }
  return nullptr;
}

bool VerificationReport::passed() const {
  return std::none_of(lines_.begin(), lines_.end(), [](const CheckLine& l) { return l.status == CheckStatus::kFail; });
}

void VerificationReport::write(std::ostream& out) const {
  out << "kind: " << kind_ << '\n';
  for (const CheckLine& line : lines_) {
    out << line.name << ": " << line.value;
    if (line.status != CheckStatus::kInfo) out << " [" << to_string(line.status) << ']';
    out << '\n';
  }
  out << "result: " << (passed() ? "pass" : "fail") << '\n';
}

double mean_random_halfspace_accuracy(const BagCollection& coll, std::size_t draws, Rng& rng) {
  if (draws == 0) throw ParameterError("mean_random_halfspace_accuracy: draws must be positive");
  double total = 0.0;
  for (std::size_t k = 0; k < draws; ++k) {
    total += accuracy(random_homogeneous_halfspace(coll.table().dim(), rng), coll);
  }
  return total / static_cast<double>(draws);
}

VerificationReport verify_mil_construction(const MILVerifyParams& params) {
  const CircleMILConfig& cfg = params.construction;
  const BagCollection coll = gen_mil_circle_bags(cfg);
  const long arcs = 2 * cfg.T;
  if (arcs > kMaxCircleArcs) {
    throw SizeError("verify_mil_construction: 2T = " + std::to_string(arcs) + " exceeds " +
                    std::to_string(kMaxCircleArcs));
  }
  VerificationReport report("mil");
  report.info("alpha", num(cfg.alpha()));
  report.info("T", std::to_string(cfg.T));
  report.info("delta", num(cfg.delta()));
  report.info("arcs", std::to_string(arcs));
  report.info("one_bag_offset", std::to_string(cfg.one_offset()));
  report.info("zero_bag_offset", std::to_string(cfg.zero_offset()));
  report.info("bags", std::to_string(coll.size()));

  const long a = cfg.one_offset();
  const long b = cfg.zero_offset();
  const bool disjoint = a != b && a != arcs - b;
  report.check("offsets_disjoint", disjoint ? "true" : "false", disjoint);
  const bool pairs = std::all_of(coll.bags().begin(), coll.bags().end(), [](const Bag& bag) {
    return bag.size() == 2 && bag.members[0] != bag.members[1];
  });
  report.check("bags_have_two_distinct_arcs", pairs ? "true" : "false", pairs);
  double zero_weight = 0.0;
  for (std::size_t j = 0; j < coll.size(); ++j) {
    if (coll.bag(j).sigma == 0) zero_weight += coll.weight(j);
  }
  report.check("zero_bag_weight", num(zero_weight), near(zero_weight, 0.5, 1e-12));

  const double constant_zero = accuracy(Classifier::constant(2, 0), coll);
  report.check("constant_zero_accuracy", num(constant_zero), near(constant_zero, 0.5, 1e-12));
  const double trivial = trivial_accuracy(coll);
  report.check("trivial_accuracy", num(trivial), near(trivial, 0.5, 1e-3));

  const OracleResult optimum = verify_mil_no_strong(coll);
  report.check("no_strong_optimum", num(optimum.achieved_accuracy), optimum.achieved_accuracy <= 0.75 + 1e-12);
  const double rotated = verify_mil_no_strong(rotate_arcs(coll, 1)).achieved_accuracy;
  report.check("no_strong_rotation_invariant", num(rotated), rotated == optimum.achieved_accuracy);

  const double bound = mil_weak_bound(cfg.alpha(), cfg.delta());
  report.info("weak_bound", num(bound));
  const std::vector<double> uniform(coll.size(), 1.0 / static_cast<double>(coll.size()));
  const WeakExistsReport at_uniform = verify_mil_weak_exists(coll, uniform, cfg, params.n_dirs);
  report.check("weak_uniform_accuracy", num(at_uniform.best.achieved_accuracy), at_uniform.holds);

  Rng rng(params.seed);
  double worst_random = 1.0;
  std::size_t random_failures = 0;
  for (std::size_t k = 0; k < params.random_weightings; ++k) {
    const WeakExistsReport r = verify_mil_weak_exists(coll, random_simplex_weights(coll.size(), rng), cfg, params.n_dirs);
    worst_random = std::min(worst_random, r.best.achieved_accuracy);
    if (!r.holds) ++random_failures;
  }
  report.info("random_weightings", std::to_string(params.random_weightings));
  report.check("weak_random_min_accuracy", num(worst_random), random_failures == 0);

  const std::vector<Classifier> menu = halfspace_menu_2d(params.n_dirs);
  const WeightingResult adversarial = adversarial_weights(satisfaction_matrix(menu, coll), params.game_rounds, params.max_duality_gap);
  const WeakExistsReport at_adversarial = verify_mil_weak_exists(coll, adversarial.weights, cfg, params.n_dirs);
  report.check("weak_adversarial_accuracy", num(at_adversarial.best.achieved_accuracy), at_adversarial.holds);
  report.info("adversarial_value", num(adversarial.value));
  report.info("adversarial_rounds", std::to_string(adversarial.rounds));
  report.check("adversarial_duality_gap", num(adversarial.duality_gap),
               adversarial.duality_gap <= params.max_duality_gap);
  return report;
}

VerificationReport verify_llp_construction(const LLPVerifyParams& params) {
  const MaxCutLLPConfig& cfg = params.construction;
  const BagCollection coll = gen_llp_maxcut_bags(cfg);
  VerificationReport report("llp");
  report.info("alpha", num(cfg.alpha));
  report.info("epsilon", num(cfg.epsilon));
  report.info("d", std::to_string(cfg.d));
  report.info("bags", std::to_string(coll.size()));
  report.info("instances", std::to_string(coll.distinct_instances().size()));

  const bool shape = std::all_of(coll.bags().begin(), coll.bags().end(), [](const Bag& bag) {
    return bag.size() == 2 && bag.sigma == 1;
  });
  report.check("bags_size_two_sigma_one", shape ? "true" : "false", shape);

  const double zero = accuracy(Classifier::constant(cfg.d, 0), coll);
  const double one = accuracy(Classifier::constant(cfg.d, 1), coll);
  report.check("constant_accuracy", num(std::max(zero, one)), zero == 0.0 && one == 0.0);
  const double trivial = trivial_accuracy(coll);
  report.check("trivial_accuracy", num(trivial), near(trivial, 0.5, 1e-3));

  Rng rng(params.seed);
  Rng halfspace_rng = rng.split(1);
  const double mean_halfspace = mean_random_halfspace_accuracy(coll, params.halfspace_draws, halfspace_rng);
  report.check("random_halfspace_mean_accuracy", num(mean_halfspace), mean_halfspace >= cfg.alpha - 0.02);

  Rng search_rng = rng.split(2);
  const NoStrongEstimate estimate = verify_llp_no_strong(coll, params.search_budget, search_rng);
  report.info("no_strong_optimum", num(estimate.value));
  report.info("no_strong_method", estimate.exact ? "exact" : "local-search-lower-bound");
  report.info("no_strong_reference", num(cfg.alpha + cfg.epsilon));
  report.info("no_strong_excess", num(estimate.value - (cfg.alpha + cfg.epsilon)));

  Rng menu_rng = rng.split(3);
  std::vector<Classifier> menu{Classifier::constant(cfg.d, 0), Classifier::constant(cfg.d, 1)};
  for (std::size_t k = 0; k < params.menu_size; ++k) menu.push_back(random_homogeneous_halfspace(cfg.d, menu_rng));
  const WeightingResult adversarial = adversarial_weights(satisfaction_matrix(menu, coll), params.game_rounds, params.max_duality_gap);
  report.info("adversarial_menu_size", std::to_string(menu.size()));
  report.info("adversarial_value", num(adversarial.value));
  report.info("adversarial_rounds", std::to_string(adversarial.rounds));
  report.check("adversarial_duality_gap", num(adversarial.duality_gap),
               adversarial.duality_gap <= params.max_duality_gap);
  return report;
}

}  // namespace llp
