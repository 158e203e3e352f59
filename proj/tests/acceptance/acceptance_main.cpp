// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "llp/config.hpp"
#include "llp/constructions.hpp"
#include "llp/data_io.hpp"
#include "llp/experiment.hpp"
#include "llp/metrics.hpp"
#include "llp/oracle.hpp"
#include "llp/union_sampler.hpp"
#include "llp/weak_to_strong.hpp"

#ifndef LLP_DATA_DIR
#define LLP_DATA_DIR "data"
#endif

namespace {

using namespace llp;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

std::size_t jobs() { return std::max(1u, std::min(8u, std::thread::hardware_concurrency())); }

ExperimentReport synthetic_run(BagStyle style, std::size_t s) {
  ExperimentConfig cfg;
  cfg.synthetic.style = style;
  cfg.q = 5;
  cfg.t = 10;
  cfg.s = s;
  cfg.runs = 5;
  cfg.base_seed = 0;
  cfg.jobs = jobs();
  return run_experiment(cfg, prepare_data(cfg));
}

const ExperimentReport& random_15000() {
  static const ExperimentReport report = synthetic_run(BagStyle::kRandom, 15000);
  return report;
}

Outcome table1_random() {
  const ExperimentReport& r = random_15000();
  return {r.small.mean >= 85.0 && r.test.mean >= 94.0,
          fmt("small %.3f +- %.3f (>= 85), test %.3f +- %.3f (>= 94)", r.small.mean, r.small.stddev, r.test.mean,
              r.test.stddev)};
}

Outcome hard_vs_random() {
  const ExperimentReport hard = synthetic_run(BagStyle::kHard, 15000);
  const double gap = random_15000().small.mean - hard.small.mean;
  return {gap >= 5.0, fmt("random small %.3f, hard small %.3f, gap %.3f (>= 5)", random_15000().small.mean,
                          hard.small.mean, gap)};
}

Outcome heart() {
  ExperimentConfig cfg;
  cfg.dataset = DatasetKind::kTabular;
  cfg.tabular.path = std::string(LLP_DATA_DIR) + "/heart.csv";
  cfg.tabular.schema.target = "target";
  cfg.tabular.schema.categorical = {"cp", "restecg", "slope", "thal"};
  cfg.q = 5;
  cfg.t = 10;
  cfg.s = 10000;
  cfg.runs = 5;
  cfg.base_seed = 0;
  cfg.jobs = jobs();
  const ExperimentData data = prepare_data(cfg);
  const ExperimentReport r = run_experiment(cfg, data);
  return {r.test.mean >= 70.0, fmt("test %.3f +- %.3f over %zu test rows (>= 70)", r.test.mean, r.test.stddev,
                                   data.test.size())};
}

Outcome monotone_in_s() {
  const ExperimentReport low = synthetic_run(BagStyle::kRandom, 5000);
  const double high = random_15000().test.mean;
  return {high > low.test.mean, fmt("test s=15000 %.3f vs s=5000 %.3f", high, low.test.mean)};
}

Outcome mil_exact() {
  const auto start = std::chrono::steady_clock::now();
  const CircleMILConfig cfg;
  const BagCollection coll = gen_mil_circle_bags(cfg);
  const double optimum = verify_mil_no_strong(coll).achieved_accuracy;
  const bool equals = optimum == 0.75;
  const bool at_most = optimum <= 0.75;

  Rng rng(0);
  double worst = 1.0;
  bool all_hold = true;
  for (int k = 0; k < 100; ++k) {
    const WeakExistsReport r = verify_mil_weak_exists(coll, random_simplex_weights(coll.size(), rng), cfg);
    worst = std::min(worst, r.best.achieved_accuracy);
    all_hold = all_hold && r.holds;
  }
  const WeightingResult adv = adversarial_weights(satisfaction_matrix(halfspace_menu_2d(720), coll));
  const WeakExistsReport at_adv = verify_mil_weak_exists(coll, adv.weights, cfg);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool pass = equals && at_most && all_hold && at_adv.holds && adv.duality_gap <= 1e-3 && seconds <= 60.0;
  return {pass, fmt("optimum %.6f (== 0.75: %s, <= 0.75: %s); weak bound %.4f: random min %.4f, adversarial %.4f, "
                    "gap %.2e; %.1fs",
                    optimum, equals ? "yes" : "no", at_most ? "yes" : "no", mil_weak_bound(cfg.alpha(), cfg.delta()),
                    worst, at_adv.best.achieved_accuracy, adv.duality_gap, seconds)};
}

Outcome trivial() {
  const double llp_trv = trivial_accuracy(gen_llp_maxcut_bags(MaxCutLLPConfig{}));
  auto table = std::make_shared<InstanceTable>(1);
  for (int i = 0; i < 4; ++i) table->add(std::vector<double>{static_cast<double>(i)});
  const BagCollection mil(Mode::kMIL, table, {Bag::mil({0, 1}, 0), Bag::mil({2, 3}, 1)});
  const double mil_trv = trivial_accuracy(mil);
  const double circle_trv = trivial_accuracy(gen_mil_circle_bags(CircleMILConfig{}));
  const bool pass = std::abs(llp_trv - 0.5) <= 1e-3 && std::abs(mil_trv - 0.5) <= 1e-3;
  return {pass, fmt("LLP construction %.6f, MIL pair %.6f (circle %.6f)", llp_trv, mil_trv, circle_trv)};
}

Outcome amplification() {
  SyntheticConfig sc;
  sc.n_bags = 50;
  sc.seed = 0;
  const SyntheticData data = gen_random_bags(sc);
  const double zeta = 0.3;
  // Plant h by rotating f* towards a random direction until accuracy drops below 1 - zeta.
  Rng rng(1);
  std::vector<double> r(sc.d);
  for (double& c : r) c = rng.normal();
  const std::vector<double>& f = data.target.weights();
  double dot = 0.0;
  for (std::size_t c = 0; c < sc.d; ++c) dot += r[c] * f[c];
  double norm = 0.0;
  for (std::size_t c = 0; c < sc.d; ++c) {
    r[c] -= dot * f[c];
    norm += r[c] * r[c];
  }
  for (double& c : r) c /= std::sqrt(norm);
  std::optional<Classifier> planted;
  double acc = 1.0;
  for (int step = 1; step <= 180 && !planted; ++step) {
    const double phi = step * std::numbers::pi / 360.0;
    std::vector<double> w(sc.d);
    for (std::size_t c = 0; c < sc.d; ++c) w[c] = std::cos(phi) * f[c] + std::sin(phi) * r[c];
    Classifier h = Classifier::homogeneous_halfspace(w);
    acc = accuracy(h, data.train);
    if (acc < 1.0 - zeta) planted = h;
  }
  if (!planted) return {false, "could not plant a classifier with accuracy < 0.7"};
  UnionConfig cfg;
  cfg.t = 64;
  cfg.c0 = 0.8;
  Rng sampler(2);
  const AmplificationReport rep = verify_error_amplification(*planted, data.train, cfg, zeta, 100000, sampler);
  return {rep.holds, fmt("small-bag accuracy %.3f; union rate %.5f <= bound %.5f + 3 SE = %.5f", acc,
                         rep.empirical_sat_rate, rep.bound, rep.threshold)};
}

Outcome support() {
  auto table = std::make_shared<InstanceTable>(1);
  for (int i = 0; i < 3; ++i) table->add(std::vector<double>{static_cast<double>(i)});
  const BagCollection coll(Mode::kLLP, table, {Bag::llp({0}, 0), Bag::llp({1}, 1), Bag::llp({2}, 0)});
  const auto entries = enumerate_support(coll, 3);
  std::map<std::vector<std::size_t>, double> freq;
  Rng rng(0);
  const std::size_t n = 1000000;
  for (std::size_t k = 0; k < n; ++k) {
    auto prov = sample_union(coll, 3, rng).provenance;
    std::sort(prov.begin(), prov.end());
    freq[prov] += 1.0;
  }
  double total = 0.0;
  double worst_z = 0.0;
  for (const auto& e : entries) {
    total += e.weight;
    const double se = std::sqrt(e.weight * (1.0 - e.weight) / n);
    worst_z = std::max(worst_z, std::abs(freq[e.union_bag.provenance] / n - e.weight) / se);
  }
  const bool pass = worst_z <= 3.0 && std::abs(total - 1.0) <= 1e-9 && freq.size() == entries.size();
  return {pass, fmt("%zu entries, sum %.12f, max |z| %.3f (<= 3)", entries.size(), total, worst_z)};
}

Outcome a1_tiny() {
  auto table = std::make_shared<InstanceTable>(2);
  const double pts[6][2] = {{1, 0.2}, {-1, 0.3}, {0.5, -1}, {-0.4, -0.9}, {0.8, 0.7}, {0.9, -0.3}};
  for (const auto& p : pts) table->add(std::vector<double>{p[0], p[1]});
  const BagCollection coll(Mode::kLLP, table, {Bag::llp({0, 1}, 1), Bag::llp({2, 3}, 1), Bag::llp({4, 5}, 2)});
  const double eps = 0.3;
  const double alpha = 0.9;
  const double c0 = alpha * std::sqrt(4.0 * eps / 32.0) * 0.999;  // gives t = 4
  const A1Result a = algorithm_a1(coll, eps, alpha, c0, make_brute_force_oracle());
  const A1Result b = algorithm_a1(coll, eps, alpha, c0, make_brute_force_oracle());
  const double acc = accuracy(a.oracle.classifier, coll);
  const double best = brute_force_best_labeling(coll).achieved_accuracy;
  const bool same = a.oracle.classifier.labels() == b.oracle.classifier.labels() && a.support_size == b.support_size;
  return {a.t == 4 && acc >= 1.0 - eps && acc <= best && same,
          fmt("t=%zu, support %zu, accuracy %.3f (>= %.2f), brute-force optimum %.3f, deterministic %s", a.t,
              a.support_size, acc, 1.0 - eps, best, same ? "yes" : "no")};
}

Outcome weighted_to_unweighted_check() {
  Rng rng(0);
  std::size_t violations = 0;
  double worst_ratio = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 2 + rng.uniform_index(30);
    const std::size_t n = 20;
    auto table = std::make_shared<InstanceTable>(3);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> x(3);
      for (double& c : x) c = rng.normal();
      table->add(x);
    }
    std::vector<Bag> bags;
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t q = 1 + rng.uniform_index(5);
      std::vector<std::size_t> members;
      for (std::size_t k = 0; k < q; ++k) members.push_back(rng.uniform_index(n));
      bags.push_back(Bag::llp(std::move(members), static_cast<long>(rng.uniform_index(q + 1))));
    }
    const BagCollection coll(Mode::kLLP, table, bags, random_simplex_weights(m, rng));
    for (long T : {2L, 5L, 10L}) {
      const BagCollection out = weighted_to_unweighted(coll, T);
      const double size = static_cast<double>(out.size());
      if (size < static_cast<double>((T - 1) * static_cast<long>(m)) || size > static_cast<double>(T * static_cast<long>(m))) {
        ++violations;
      }
      for (int k = 0; k < 20; ++k) {
        const Classifier h = random_homogeneous_halfspace(3, rng);
        const double drift = std::abs(accuracy(h, out) - accuracy(h, coll));
        worst_ratio = std::max(worst_ratio, drift * static_cast<double>(T - 1));
        if (drift > 1.0 / static_cast<double>(T - 1) + 1e-12) ++violations;
      }
    }
  }
  return {violations == 0, fmt("violations %zu, worst drift / (1/(T-1)) = %.4f", violations, worst_ratio)};
}

Outcome property_suites() {
  const auto start = std::chrono::steady_clock::now();
  Rng rng(0);
  // Residual additivity.
  std::size_t additivity_failures = 0;
  {
    SyntheticConfig sc;
    sc.n_bags = 40;
    const SyntheticData data = gen_random_bags(sc);
    for (int k = 0; k < 2000; ++k) {
      const Classifier h = random_homogeneous_halfspace(sc.d, rng);
      const UnionBag u = sample_union(data.train, 1 + rng.uniform_index(16), rng);
      long parts = 0;
      for (std::size_t j : u.provenance) parts += residual(h, data.train.bag(j), data.train.table());
      additivity_failures += residual(h, u.as_bag(), data.train.table()) != parts;
    }
  }
  // Gradient against central differences.
  double worst_rel = 0.0;
  {
    SyntheticConfig sc;
    sc.n_bags = 100;
    sc.d = 4;
    const SyntheticData data = gen_random_bags(sc);
    for (const Bag& bag : data.train.bags()) {
      LinearModel model;
      for (int c = 0; c < 4; ++c) model.weights.push_back(rng.normal());
      model.bias = rng.normal();
      std::vector<double> g(4);
      double gb = 0.0;
      bag_loss_gradient(model, data.train.table(), bag, g, gb);
      g.push_back(gb);
      double diff = 0.0;
      double scale = 0.0;
      for (std::size_t c = 0; c <= 4; ++c) {
        LinearModel p = model;
        LinearModel q = model;
        (c < 4 ? p.weights[c] : p.bias) += 1e-5;
        (c < 4 ? q.weights[c] : q.bias) -= 1e-5;
        const double num = (bag_loss(p, data.train.table(), bag) - bag_loss(q, data.train.table(), bag)) / 2e-5;
        diff += (g[c] - num) * (g[c] - num);
        scale += g[c] * g[c] + num * num;
      }
      worst_rel = std::max(worst_rel, scale > 1e-20 ? std::sqrt(diff / scale) : std::sqrt(diff));
    }
  }
  // Separation probability angle / pi.
  double worst_sep_z = 0.0;
  for (double phi : {0.3, 1.2, 2.5}) {
    const std::vector<double> x{1.0, 0.0, 0.0};
    const std::vector<double> y{std::cos(phi), std::sin(phi), 0.0};
    std::size_t sep = 0;
    const std::size_t draws = 10000;
    for (std::size_t k = 0; k < draws; ++k) {
      const Classifier h = random_homogeneous_halfspace(3, rng);
      sep += h.predict(x) != h.predict(y);
    }
    const double p = phi / std::numbers::pi;
    worst_sep_z = std::max(worst_sep_z, std::abs(sep / double(draws) - p) / std::sqrt(p * (1 - p) / draws));
  }
  // Kept-count chi-squared against Binomial(t, 1/2).
  double chi2 = 0.0;
  {
    const std::size_t t = 10;
    const std::size_t n = 100000;
    auto table = std::make_shared<InstanceTable>(1);
    table->add(std::vector<double>{0.0});
    const BagCollection coll(Mode::kLLP, table, {Bag::llp({0}, 0)});
    std::vector<double> counts(t + 1, 0.0);
    for (std::size_t k = 0; k < n; ++k) counts[sample_union(coll, t, rng).provenance.size()] += 1.0;
    for (std::size_t r = 0; r <= t; ++r) {
      const double e = n * std::exp(std::lgamma(t + 1.0) - std::lgamma(r + 1.0) - std::lgamma(t - r + 1.0)) / 1024.0;
      chi2 += (counts[r] - e) * (counts[r] - e) / e;
    }
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool pass =
      additivity_failures == 0 && worst_rel <= 1e-4 && worst_sep_z <= 3.0 && chi2 < 23.209 && seconds <= 600.0;
  return {pass, fmt("additivity failures %zu, gradient rel err %.2e, separation max |z| %.2f, chi2 %.2f (< 23.21), "
                    "%.1fs",
                    additivity_failures, worst_rel, worst_sep_z, chi2, seconds)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"table1-random-bags", table1_random},
      {"hard-vs-random-ordering", hard_vs_random},
      {"heart-dataset", heart},
      {"monotonicity-in-s", monotone_in_s},
      {"mil-construction-exact", mil_exact},
      {"trivial-accuracy", trivial},
      {"error-amplification", amplification},
      {"union-support", support},
      {"a1-tiny", a1_tiny},
      {"weighted-to-unweighted", weighted_to_unweighted_check},
      {"property-suites", property_suites},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("error: ") + e.what()};
    }
    failures += !out.pass;
    std::printf("%s criterion %zu %s: %s\n", out.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
