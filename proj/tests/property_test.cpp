#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "llp/metrics.hpp"
#include "llp/oracle.hpp"
#include "llp/union_sampler.hpp"
#include "support.hpp"

namespace llp {
namespace {

TEST(Property, ResidualIsAdditiveOverUnions) {
  Rng rng(31);
  const BagCollection coll = testing::random_llp(12, 20, 3, 5, rng);
  for (int trial = 0; trial < 500; ++trial) {
    const Classifier h = random_homogeneous_halfspace(3, rng);
    const UnionBag u = sample_union(coll, 1 + rng.uniform_index(8), rng);
    long parts = 0;
    for (std::size_t j : u.provenance) parts += residual(h, coll.bag(j), coll.table());
    ASSERT_EQ(residual(h, u.as_bag(), coll.table()), parts);
    ASSERT_EQ(is_satisfied(h, u.as_bag(), coll.table()), parts == 0);
  }
}

TEST(Property, GradientMatchesCentralDifferences) {
  Rng rng(17);
  const BagCollection coll = testing::random_llp(100, 60, 4, 6, rng);
  const double h = 1e-5;
  for (const Bag& bag : coll.bags()) {
    LinearModel model;
    for (int c = 0; c < 4; ++c) model.weights.push_back(rng.normal());
    model.bias = rng.normal() * 0.5;
    std::vector<double> grad(4);
    double grad_b = 0.0;
    bag_loss_gradient(model, coll.table(), bag, grad, grad_b);
    grad.push_back(grad_b);
    std::vector<double> numeric;
    for (std::size_t c = 0; c <= 4; ++c) {
      LinearModel plus = model;
      LinearModel minus = model;
      (c < 4 ? plus.weights[c] : plus.bias) += h;
      (c < 4 ? minus.weights[c] : minus.bias) -= h;
      numeric.push_back((bag_loss(plus, coll.table(), bag) - bag_loss(minus, coll.table(), bag)) / (2 * h));
    }
    double diff = 0.0;
    double scale = 0.0;
    for (std::size_t c = 0; c <= 4; ++c) {
      diff += std::pow(grad[c] - numeric[c], 2);
      scale += std::pow(grad[c], 2) + std::pow(numeric[c], 2);
    }
    // Relative error of the gradient vector; exact zeros compare absolutely.
    const double rel = scale > 1e-20 ? std::sqrt(diff) / std::sqrt(scale) : std::sqrt(diff);
    EXPECT_LE(rel, 1e-4);
  }
}

TEST(Property, HalfspaceSeparationIsAngleOverPi) {
  Rng rng(23);
  const std::size_t draws = 10000;
  for (double phi : {0.2, 0.5 * std::numbers::pi, 2.0, 3.0}) {
    for (std::size_t d : {2u, 3u, 6u}) {
      std::vector<double> x(d, 0.0);
      std::vector<double> y(d, 0.0);
      x[0] = 1.0;
      y[0] = std::cos(phi);
      y[1] = std::sin(phi);
      std::size_t separated = 0;
      for (std::size_t k = 0; k < draws; ++k) {
        const Classifier h = random_homogeneous_halfspace(d, rng);
        separated += h.predict(x) != h.predict(y);
      }
      const double p = phi / std::numbers::pi;
      const double se = std::sqrt(p * (1 - p) / draws);
      EXPECT_NEAR(static_cast<double>(separated) / draws, p, 3 * se) << "phi=" << phi << " d=" << d;
    }
  }
}

TEST(Property, KeptCountIsBinomial) {
  std::vector<Bag> bags;
  auto table = testing::line_table(5);
  for (std::size_t i = 0; i < 5; ++i) bags.push_back(Bag::llp({i}, 0));
  const BagCollection coll(Mode::kLLP, table, bags);
  const std::size_t t = 10;
  const std::size_t n = 100000;
  std::vector<double> counts(t + 1, 0.0);
  Rng rng(41);
  for (std::size_t k = 0; k < n; ++k) counts[sample_union(coll, t, rng).provenance.size()] += 1.0;
  double chi2 = 0.0;
  for (std::size_t r = 0; r <= t; ++r) {
    const double expected = n * std::exp(std::lgamma(t + 1.0) - std::lgamma(r + 1.0) - std::lgamma(t - r + 1.0)) /
                            std::pow(2.0, static_cast<double>(t));
    chi2 += std::pow(counts[r] - expected, 2) / expected;
  }
  // Upper 1% point of chi-squared with 10 degrees of freedom.
  EXPECT_LT(chi2, 23.209);
}

TEST(Property, SupportMatchesSampling) {
  for (std::size_t m : {2u, 3u}) {
    for (std::size_t t : {2u, 4u}) {
      std::vector<Bag> bags;
      for (std::size_t i = 0; i < m; ++i) bags.push_back(Bag::llp({i}, 0));
      const BagCollection coll(Mode::kLLP, testing::line_table(m), bags);
      std::map<std::vector<std::size_t>, double> expected;
      for (const auto& e : enumerate_support(coll, t)) expected[e.union_bag.provenance] = e.weight;
      std::map<std::vector<std::size_t>, double> seen;
      Rng rng(m * 100 + t);
      const std::size_t n = 100000;
      for (std::size_t k = 0; k < n; ++k) {
        auto prov = sample_union(coll, t, rng).provenance;
        std::sort(prov.begin(), prov.end());
        seen[prov] += 1.0;
      }
      for (const auto& [key, p] : expected) {
        const double se = std::sqrt(p * (1 - p) / n);
        EXPECT_NEAR(seen[key] / n, p, 3.5 * se);
      }
      EXPECT_EQ(seen.size(), expected.size());
    }
  }
}

TEST(Property, RandomLabelingSatisfactionMatchesClosedForm) {
  Rng rng(5);
  const BagCollection llp_bags = testing::random_llp(6, 8, 2, 6, rng);
  const std::size_t trials = 100000;
  for (const Bag& bag : llp_bags.bags()) {
    const double p = random_classifier_satisfaction_prob(bag);
    std::size_t hits = 0;
    Labels labels(8);
    for (std::size_t k = 0; k < trials; ++k) {
      for (auto& l : labels) l = rng.coin() ? 1 : 0;
      hits += is_satisfied(std::span<const std::int8_t>(labels), bag);
    }
    const double se = std::sqrt(std::max(p * (1 - p), 1e-12) / trials);
    EXPECT_NEAR(static_cast<double>(hits) / trials, p, 3 * se + 1e-12);
  }
  for (long sigma : {0L, 1L}) {
    const Bag bag = Bag::mil({0, 1, 2}, sigma);
    const double p = random_classifier_satisfaction_prob(bag);
    std::size_t hits = 0;
    Labels labels(3);
    for (std::size_t k = 0; k < trials; ++k) {
      for (auto& l : labels) l = rng.coin() ? 1 : 0;
      hits += is_satisfied(std::span<const std::int8_t>(labels), bag);
    }
    EXPECT_NEAR(static_cast<double>(hits) / trials, p, 3 * std::sqrt(p * (1 - p) / trials));
  }
}

TEST(Property, WeightedToUnweightedBounds) {
  Rng rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const BagCollection base = testing::random_llp(2 + rng.uniform_index(15), 10, 2, 4, rng);
    const BagCollection weighted = base.reweighted(testing::random_weights(base.size(), rng));
    const double m = static_cast<double>(base.size());
    for (long T : {2L, 5L, 10L}) {
      const BagCollection out = weighted_to_unweighted(weighted, T);
      EXPECT_GE(static_cast<double>(out.size()), (T - 1) * m);
      EXPECT_LE(static_cast<double>(out.size()), T * m);
      for (int k = 0; k < 20; ++k) {
        const Classifier h = random_homogeneous_halfspace(2, rng);
        EXPECT_LE(std::abs(accuracy(h, out) - accuracy(h, weighted)), 1.0 / (T - 1) + 1e-12);
      }
    }
  }
}

TEST(Property, AccuracyInvariantUnderPermutationAndSplitting) {
  Rng rng(3);
  const BagCollection base = testing::random_llp(8, 10, 2, 3, rng);
  const std::vector<double> w = testing::random_weights(8, rng);
  const BagCollection weighted = base.reweighted(w);
  std::vector<Bag> bags = base.bags();
  std::vector<double> w2 = w;
  std::reverse(bags.begin(), bags.end());
  std::reverse(w2.begin(), w2.end());
  bags.push_back(bags.front());
  w2.push_back(w2.front() / 2);
  w2.front() /= 2;
  const BagCollection shuffled(Mode::kLLP, base.table_ptr(), bags, w2);
  for (int k = 0; k < 50; ++k) {
    const Classifier h = random_homogeneous_halfspace(2, rng);
    EXPECT_NEAR(accuracy(h, weighted), accuracy(h, shuffled), 1e-12);
  }
}

}  // namespace
}  // namespace llp
